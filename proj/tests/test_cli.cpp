#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "monadcert/cli.hpp"

using namespace monadcert;

namespace {

const std::string kFixtures = MONADCERT_FIXTURES_DIR;
const std::string kGolden = MONADCERT_GOLDEN_DIR;

struct CliResult {
    int code;
    std::string out, err;
};

CliResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/monadcert_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("document round-trip is the identity") {
    for (const char* name : {"/p2xp1.monad.json", "/p3_family.monad.json"}) {
        json orig;
        std::ifstream(kFixtures + name) >> orig;
        MonadDocument doc = monad_document_from_json(orig);
        json ser = monad_document_to_json(doc);
        MonadDocument doc2 = monad_document_from_json(ser);
        CHECK(monad_document_to_json(doc2) == ser);
        CHECK(doc2.alpha == doc.alpha);
        CHECK(doc2.beta == doc.beta);
        CHECK(doc2.parameters == doc.parameters);
    }
}

TEST_CASE("parameter substitution is token-exact") {
    json j;
    std::ifstream(kFixtures + "/p3_family.monad.json") >> j;
    MonadDocument doc = monad_document_from_json(j);
    // decimal parameter values are parsed exactly
    Monad M = build_monad(doc, {{"lambda", rat_parse("0.5")}});
    CHECK(M.alpha.at(2, 0).leading_term().second == Rat(1, 2));
    Monad M0 = build_monad(doc, {{"lambda", Rat(0)}});
    CHECK(M0.alpha.at(2, 0).is_zero());
    // document default applies when no override is given
    Monad M1 = build_monad(doc);
    CHECK(M1.alpha.at(2, 0) == parse_poly("x2", M1.space.var_context()));
}

TEST_CASE("validate subcommand") {
    CliResult r = run_cli({"validate", kFixtures + "/p2xp1.monad.json"});
    CHECK(r.code == 0);
    CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("yes"));
    CliResult rj = run_cli({"validate", kFixtures + "/p2xp1.monad.json", "--json"});
    CHECK(rj.code == 0);
    CHECK(json::parse(rj.out)["ok"] == true);
}

TEST_CASE("cohomology subcommand") {
    CliResult r = run_cli({"cohomology", "--space", "PxP:2,1", "--degree=-1,-1", "--json"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["h"] == json::array({0, 0, 0, 0}));
    CliResult r2 = run_cli({"cohomology", "--space", "P:3", "--degree", "2"});
    CHECK(r2.code == 0);
    CHECK_THAT(r2.out, Catch::Matchers::ContainsSubstring("(10, 0, 0, 0)"));
}

TEST_CASE("invariants subcommand") {
    CliResult r = run_cli({"invariants", kFixtures + "/p2xp1.monad.json", "--json"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["E"]["chern"]["rank"] == 2);
    CHECK(j["E"]["summary"]["degree"] == "-1");
    CHECK(j["K"]["chern"]["rank"] == 3);
}

TEST_CASE("classify and stability subcommands with exit codes") {
    CliResult good = run_cli({"classify", kFixtures + "/p3_family.monad.json", "--samples",
                              "20000", "--json"});
    CHECK(good.code == 0);
    CHECK(json::parse(good.out)["result"]["class"] == "locally_free");

    CliResult degen = run_cli({"classify", kFixtures + "/p3_family.monad.json", "--samples",
                               "20000", "--param", "lambda=0", "--json"});
    CHECK(degen.code == 0);
    CHECK(json::parse(degen.out)["result"]["class"] == "torsion_free");

    CliResult st = run_cli({"stability", kFixtures + "/p2xp1.monad.json", "--samples", "20000",
                            "--json"});
    CHECK(st.code == 0);
    CHECK(json::parse(st.out)["verdict"] == "stable");

    CliResult lim = run_cli({"stability", kFixtures + "/p3_family.monad.json", "--samples",
                             "20000", "--param", "lambda=0", "--json"});
    CHECK(lim.code == 1);  // inconclusive
    CHECK(json::parse(lim.out)["verdict"] == "inconclusive");
}

TEST_CASE("human and machine outputs carry the same verdict") {
    CliResult human = run_cli({"stability", kFixtures + "/p2xp1.monad.json", "--samples",
                               "20000"});
    CliResult machine = run_cli({"stability", kFixtures + "/p2xp1.monad.json", "--samples",
                                 "20000", "--json"});
    CHECK(human.code == machine.code);
    CHECK_THAT(human.out, Catch::Matchers::ContainsSubstring("verdict: stable"));
    CHECK(json::parse(machine.out)["verdict"] == "stable");
}

TEST_CASE("identical command lines produce identical bytes") {
    std::vector<std::string> cmd{"classify", kFixtures + "/p3_family.monad.json", "--samples",
                                 "30000", "--seed", "42", "--json"};
    CliResult a = run_cli(cmd), b = run_cli(cmd);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
}

TEST_CASE("asymptotic and limit subcommands") {
    CliResult a = run_cli({"asymptotic", kFixtures + "/p2xp1.monad.json", "--divisor", "2,3",
                           "--samples", "20000", "--json"});
    CHECK(a.code == 0);
    CHECK(json::parse(a.out)["verdict"] == "asymptotically_stable");

    CliResult l = run_cli({"limit", kFixtures + "/p3_family.monad.json", "--param", "lambda=0",
                           "--divisor", "4", "--samples", "20000", "--json"});
    CHECK(l.code == 0);
    CHECK(json::parse(l.out)["verdict"] == "asymptotically_semistable");
}

TEST_CASE("sweep tabulates the family verdicts") {
    CliResult r = run_cli({"sweep", kFixtures + "/p3_family.monad.json", "--param",
                           "lambda=1,0.5,10,0", "--samples", "20000", "--json"});
    CHECK(r.code == 0);
    json rows = json::parse(r.out)["rows"];
    REQUIRE(rows.size() == 4);
    int locally_free_stable = 0, torsion_semistable = 0;
    for (const auto& row : rows) {
        if (row["class"] == "locally_free" && row["verdict"] == "stable") ++locally_free_stable;
        if (row["class"] == "torsion_free" && row["verdict"] == "asymptotically_semistable")
            ++torsion_semistable;
    }
    CHECK(locally_free_stable == 3);
    CHECK(torsion_semistable == 1);
}

TEST_CASE("input errors exit with code 2") {
    CHECK(run_cli({"validate", "/nonexistent.monad.json"}).code == 2);
    CHECK(run_cli({"cohomology", "--space", "bogus", "--degree", "1"}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
    TempFile tmp("bad.monad.json");
    std::ofstream(tmp.path) << "{\"format\": \"monad/1\"}";
    CHECK(run_cli({"validate", tmp.path}).code == 2);
    TempFile tmp2("badpoly.monad.json");
    {
        json j;
        std::ifstream(kFixtures + "/p2xp1.monad.json") >> j;
        j["maps"]["alpha"][0][0] = "x0 + ";
        std::ofstream(tmp2.path) << j;
    }
    CHECK(run_cli({"validate", tmp2.path}).code == 2);
}

TEST_CASE("emitted certificates match the golden bytes") {
    TempFile tmp("p2xp1_stable.cert.json");
    CliResult r = run_cli({"stability", kFixtures + "/p2xp1.monad.json", "--seed", "20240601",
                           "--samples", "1000000", "--out", tmp.path});
    REQUIRE(r.code == 0);
    CHECK(slurp(tmp.path) == slurp(kGolden + "/p2xp1_stable.cert.json"));
}

TEST_CASE("emitted certificates parse back and replay") {
    TempFile tmp("replay.cert.json");
    CliResult r = run_cli({"asymptotic", kFixtures + "/p2xp1.monad.json", "--divisor", "2,3",
                           "--samples", "20000", "--out", tmp.path});
    REQUIRE(r.code == 0);
    json j;
    std::ifstream(tmp.path) >> j;
    Certificate cert = certificate_from_json(j);
    CHECK(cert.verdict == "asymptotically_stable");
    MonadDocument doc = load_monad_document(kFixtures + "/p2xp1.monad.json");
    Monad M = build_monad(doc);
    CHECK(replay_certificate(M, cert).ok);
}
