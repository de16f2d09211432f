#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "monadcert/stability.hpp"

using namespace monadcert;

namespace {

CertifyOptions fast_opts() {
    CertifyOptions opt;
    opt.mc.samples = 20000;
    return opt;
}

Monad rescaled_copy(const Monad& M, const Rat& factor) {
    return Monad(M.space.rescaled(factor), M.m0, M.m1, M.m2, M.alpha, M.beta);
}

}  // namespace

TEST_CASE("the product monad is certified stable") {
    Certificate c = certify_stable(testing::product_monad(), fast_opts());
    CHECK(c.verdict == "stable");
    bool saw_critical = false, saw_closure = false;
    for (const auto& s : c.steps) {
        if (s.op == "critical_twists") saw_critical = true;
        if (s.op == "h1_closure") saw_closure = true;
    }
    CHECK(saw_critical);
    CHECK(saw_closure);
}

TEST_CASE("the locally free members of the family are certified stable") {
    for (const Rat& lam : {Rat(1), Rat(1, 2), Rat(10)}) {
        Certificate c = certify_stable(testing::lambda_monad(lam), fast_opts());
        CHECK(c.verdict == "stable");
    }
}

TEST_CASE("the degenerate limit is not certified stable") {
    Certificate c = certify_stable(testing::lambda_monad(Rat(0)), fast_opts());
    CHECK(c.verdict == "inconclusive");
    CHECK_THAT(c.detail, Catch::Matchers::ContainsSubstring("locally free"));
}

TEST_CASE("negative controls never certify") {
    {
        Certificate c = certify_stable(testing::trivial_monad(), fast_opts());
        CHECK(c.verdict == "inconclusive");
        CHECK_THAT(c.detail, Catch::Matchers::ContainsSubstring("> 0"));
    }
    {
        Certificate c = certify_stable(testing::planted_section_monad(), fast_opts());
        CHECK(c.verdict == "inconclusive");
    }
}

TEST_CASE("asymptotic stability of the cyclic instanton") {
    DivisorSpec D;
    D.d = {4};
    D.assumed_anticanonical = true;
    Certificate c = certify_asymptotic(testing::lambda_monad(Rat(1)), D, fast_opts());
    CHECK(c.verdict == "asymptotically_stable");
    bool cyclic_noted = false;
    for (const auto& a : c.assumptions)
        if (a.find("cyclic") != std::string::npos) cyclic_noted = true;
    CHECK(cyclic_noted);
}

TEST_CASE("asymptotic stability of the product monad for polydegree (2,3)") {
    DivisorSpec D;
    D.d = {2, 3};
    Certificate c = certify_asymptotic(testing::product_monad(), D, fast_opts());
    CHECK(c.verdict == "asymptotically_stable");
}

TEST_CASE("degenerate divisors are rejected") {
    DivisorSpec D;
    D.d = {0, 0};
    CHECK_THROWS_AS(certify_asymptotic(testing::product_monad(), D, fast_opts()),
                    std::invalid_argument);
    DivisorSpec Dneg;
    Dneg.d = {-1, 2};
    CHECK_THROWS_AS(certify_asymptotic(testing::product_monad(), Dneg, fast_opts()),
                    std::invalid_argument);
}

TEST_CASE("the asymptotic trail contains the stable trail") {
    CertifyOptions opt = fast_opts();
    Monad M = testing::product_monad();
    DivisorSpec D;
    D.d = {2, 3};
    Certificate stable = certify_stable(M, opt);
    Certificate asym = certify_asymptotic(M, D, opt);
    REQUIRE(asym.steps.size() >= stable.steps.size());
    for (size_t i = 0; i < stable.steps.size(); ++i) {
        CHECK(asym.steps[i].op == stable.steps[i].op);
        CHECK(asym.steps[i].output == stable.steps[i].output);
    }
}

TEST_CASE("limit semistability of the degenerate member") {
    DivisorSpec D;
    D.d = {4};
    Certificate c = certify_limit_semistable(testing::lambda_monad(Rat(0)), D, fast_opts());
    CHECK(c.verdict == "asymptotically_semistable");
    // locally free members get the stronger certificate attached
    Certificate c1 = certify_limit_semistable(testing::lambda_monad(Rat(1)), D, fast_opts());
    CHECK(c1.verdict == "asymptotically_stable");
}

TEST_CASE("limit chase rejects a sheaf with sections after the twist") {
    // E = O(1) + O(-1): rank 2, c1 = 0, h^0(E(-1)) = 1
    SpaceDescriptor sp = SpaceDescriptor::projective(3);
    VarContext ctx = sp.var_context();
    LineBundleSum m0(1), m1(1), m2(1);
    m1.add({1}, 1);
    m1.add({-1}, 1);
    Monad M(sp, m0, m1, m2, PolyMatrix(ctx, 2, 0), PolyMatrix(ctx, 0, 2));
    DivisorSpec D;
    D.d = {4};
    Certificate c = certify_limit_semistable(M, D, fast_opts());
    CHECK(c.verdict == "inconclusive");
}

TEST_CASE("verdicts are invariant under rescaling the degree functional") {
    CertifyOptions opt = fast_opts();
    for (const Rat& factor : {Rat(3), Rat(1, 2)}) {
        CHECK(certify_stable(rescaled_copy(testing::product_monad(), factor), opt).verdict ==
              "stable");
        CHECK(certify_stable(rescaled_copy(testing::lambda_monad(Rat(1)), factor), opt).verdict ==
              "stable");
        CHECK(certify_stable(rescaled_copy(testing::trivial_monad(), factor), opt).verdict ==
              "inconclusive");
    }
}

TEST_CASE("certificates replay bit for bit") {
    CertifyOptions opt = fast_opts();
    Monad M = testing::product_monad();
    DivisorSpec D;
    D.d = {2, 3};
    Certificate c = certify_asymptotic(M, D, opt);
    ReplayResult r = replay_certificate(M, c);
    CHECK(r.ok);

    Certificate tampered = c;
    REQUIRE(!tampered.steps.empty());
    tampered.steps[1].output["E"]["rank"] = 5;
    ReplayResult bad = replay_certificate(M, tampered);
    CHECK_FALSE(bad.ok);
    CHECK(bad.first_mismatch == 1);
}

TEST_CASE("limit certificates replay") {
    CertifyOptions opt = fast_opts();
    Monad M = testing::lambda_monad(Rat(0));
    DivisorSpec D;
    D.d = {4};
    Certificate c = certify_limit_semistable(M, D, opt);
    CHECK(replay_certificate(M, c).ok);
}

TEST_CASE("no bounded destabilizer for certified monads") {
    for (const auto& M : {testing::product_monad(), testing::lambda_monad(Rat(1))}) {
        Certificate c = certify_stable(M, fast_opts());
        REQUIRE(c.verdict == "stable");
        DestabilizerSearchResult r = destabilizer_search(M, 5);
        CHECK_FALSE(r.counterexample.has_value());
        CHECK(r.unresolved.empty());
        CHECK(r.twists_checked > 0);
    }
}

TEST_CASE("the destabilizer search finds the section of the trivial bundle") {
    DestabilizerSearchResult r = destabilizer_search(testing::trivial_monad(), 2);
    REQUIRE(r.counterexample.has_value());
    CHECK(*r.counterexample == MultiDegree{0});
}

TEST_CASE("rank-3 cohomology stays bound-only") {
    Certificate c = certify_stable(testing::planted_section_monad(), fast_opts());
    CHECK(c.verdict == "inconclusive");
}
