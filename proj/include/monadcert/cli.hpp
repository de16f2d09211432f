#pragma once

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "monadcert/document.hpp"

namespace monadcert::cli {

// Exit codes: 0 success/certified, 1 inconclusive or classification "none",
// 2 input error, 3 internal invariant violation.
enum ExitCode { kOk = 0, kInconclusive = 1, kInputError = 2, kInternalError = 3 };

namespace detail {

inline SpaceDescriptor parse_space_spec(const std::string& spec) {
    auto colon = spec.find(':');
    std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto ints = [&]() {
        std::vector<int> v;
        std::stringstream ss(args);
        std::string tok;
        while (std::getline(ss, tok, ',')) v.push_back(std::stoi(tok));
        return v;
    }();
    if (kind == "P" && ints.size() == 1) return SpaceDescriptor::projective(ints[0]);
    if (kind == "PxP" && ints.size() == 2) return SpaceDescriptor::product(ints[0], ints[1]);
    if (kind == "hirzebruch" && ints.size() == 1) return SpaceDescriptor::hirzebruch(ints[0]);
    if (kind == "blowup" && ints.size() == 1) return SpaceDescriptor::blowup(ints[0]);
    throw DocumentError("bad --space spec '" + spec + "' (want P:n, PxP:n,m, hirzebruch:a, "
                        "blowup:l)");
}

inline MultiDegree parse_degree_list(const std::string& s) {
    MultiDegree d;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) d.push_back(std::stoi(tok));
    if (d.empty()) throw DocumentError("empty degree list");
    return d;
}

inline std::vector<std::uint64_t> parse_prime_list(const std::string& s) {
    std::vector<std::uint64_t> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(std::stoull(tok));
    if (v.size() < 2) throw DocumentError("--primes needs at least two primes");
    return v;
}

struct ParamGrid {
    std::vector<std::string> names;
    std::vector<std::vector<Rat>> values;  // per name

    // cartesian product, row-major over the first name fastest-last
    std::vector<std::map<std::string, Rat>> rows() const {
        std::vector<std::map<std::string, Rat>> out;
        std::vector<size_t> idx(names.size(), 0);
        if (names.empty()) return {{}};
        for (;;) {
            std::map<std::string, Rat> row;
            for (size_t i = 0; i < names.size(); ++i) row[names[i]] = values[i][idx[i]];
            out.push_back(row);
            size_t k = names.size();
            while (k > 0) {
                --k;
                if (++idx[k] < values[k].size()) break;
                idx[k] = 0;
                if (k == 0) return out;
            }
        }
    }
};

inline void add_param_option(ParamGrid& grid, const std::string& arg) {
    auto eq = arg.find('=');
    if (eq == std::string::npos) throw DocumentError("--param wants name=v1,v2,...");
    std::string name = arg.substr(0, eq);
    std::vector<Rat> vals;
    std::stringstream ss(arg.substr(eq + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) vals.push_back(rat_parse(tok));
    if (vals.empty()) throw DocumentError("--param " + name + ": no values");
    grid.names.push_back(name);
    grid.values.push_back(vals);
}

inline std::string cohom_str(const CohomVector& h) {
    std::string s = "(";
    for (size_t i = 0; i < h.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(h[i]);
    }
    return s + ")";
}

inline json report_json(const ValidationReport& v) {
    return json{{"degrees_homogeneous", v.degrees_homogeneous},
                {"complex", v.complex},
                {"alpha_generically_injective", v.alpha_injective},
                {"beta_generically_surjective", v.beta_surjective},
                {"ok", v.ok()}};
}

inline MultiDegree default_divisor(const SpaceDescriptor& sp) {
    // generic anticanonical degree
    if (sp.kind() == SpaceKind::Projective) return {sp.n() + 1};
    if (sp.kind() == SpaceKind::Product) return {sp.n() + 1, sp.m() + 1};
    throw DocumentError("no default divisor on " + sp.str());
}

}  // namespace detail

struct CliContext {
    std::ostream& out;
    std::ostream& err;
};

inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"linear monads: invariants, cohomology, and stability certificates"};
    app.require_subcommand(1);

    std::string file, space_spec, degree_spec, divisor_spec, out_path, primes_spec;
    bool json_mode = false, anticanonical = false;
    std::uint64_t seed = 20240601, samples = 1000000;
    int workers = 1;
    std::string confidence = "999999/1000000";
    std::vector<std::string> param_args;

    auto add_common = [&](CLI::App* sub, bool with_file = true) {
        if (with_file) sub->add_option("file", file, "monad document (.monad.json)")->required();
        sub->add_flag("--json", json_mode, "machine-readable output");
    };
    auto add_mc = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "master seed for Monte Carlo sampling");
        sub->add_option("--samples", samples, "Monte Carlo samples per prime");
        sub->add_option("--primes", primes_spec, "comma-separated primes (at least two)");
        sub->add_option("--workers", workers, "worker threads for sampling");
        sub->add_option("--confidence", confidence, "confidence threshold (rational)");
    };
    auto add_params = [&](CLI::App* sub) {
        sub->add_option("--param", param_args, "parameter values: name=v1,v2,...");
    };

    CLI::App* validate_cmd = app.add_subcommand("validate", "check the monad conditions");
    add_common(validate_cmd);
    add_params(validate_cmd);

    CLI::App* invariants_cmd = app.add_subcommand("invariants", "Chern data and slopes");
    add_common(invariants_cmd);
    add_params(invariants_cmd);

    CLI::App* cohomology_cmd =
        app.add_subcommand("cohomology", "cohomology of a line bundle on P^n or P^n x P^m");
    cohomology_cmd->add_option("--space", space_spec, "P:n or PxP:n,m")->required();
    cohomology_cmd->add_option("--degree", degree_spec, "d or d1,d2")->required();
    cohomology_cmd->add_flag("--json", json_mode, "machine-readable output");

    CLI::App* classify_cmd = app.add_subcommand("classify", "sheaf class of the cohomology");
    add_common(classify_cmd);
    add_mc(classify_cmd);
    add_params(classify_cmd);

    CLI::App* stability_cmd = app.add_subcommand("stability", "slope stability certificate");
    add_common(stability_cmd);
    add_mc(stability_cmd);
    add_params(stability_cmd);
    stability_cmd->add_option("--out", out_path, "write the certificate to this path");

    CLI::App* asymptotic_cmd =
        app.add_subcommand("asymptotic", "asymptotic stability with respect to a divisor");
    add_common(asymptotic_cmd);
    add_mc(asymptotic_cmd);
    add_params(asymptotic_cmd);
    asymptotic_cmd->add_option("--divisor", divisor_spec, "divisor polydegree d or d1,d2");
    asymptotic_cmd->add_flag("--anticanonical", anticanonical, "record D in |-K_X|");
    asymptotic_cmd->add_option("--out", out_path, "write the certificate to this path");

    CLI::App* limit_cmd =
        app.add_subcommand("limit", "semistability of a degenerate limit on P^3");
    add_common(limit_cmd);
    add_mc(limit_cmd);
    add_params(limit_cmd);
    limit_cmd->add_option("--divisor", divisor_spec, "divisor degree d");
    limit_cmd->add_option("--out", out_path, "write the certificate to this path");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "verdicts over a parameter grid");
    add_common(sweep_cmd);
    add_mc(sweep_cmd);
    add_params(sweep_cmd);
    sweep_cmd->add_option("--divisor", divisor_spec, "divisor polydegree for the chases");

    std::vector<std::string> args = argv;
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kOk;
        }
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    try {
        McOptions mc;
        mc.seed = seed;
        mc.samples = samples;
        mc.workers = workers;
        if (!primes_spec.empty()) mc.primes = detail::parse_prime_list(primes_spec);
        {
            Rat thr = rat_parse(confidence);
            if (thr <= 0 || thr >= 1) throw DocumentError("--confidence must be in (0,1)");
            mc.confidence_threshold = thr.convert_to<double>();
        }
        CertifyOptions copt;
        copt.mc = mc;

        detail::ParamGrid grid;
        for (const std::string& p : param_args) detail::add_param_option(grid, p);

        auto single_values = [&]() {
            std::map<std::string, Rat> v;
            for (size_t i = 0; i < grid.names.size(); ++i) {
                if (grid.values[i].size() != 1)
                    throw DocumentError("this subcommand takes a single value per --param");
                v[grid.names[i]] = grid.values[i][0];
            }
            return v;
        };

        if (cohomology_cmd->parsed()) {
            SpaceDescriptor sp = detail::parse_space_spec(space_spec);
            MultiDegree d = detail::parse_degree_list(degree_spec);
            CohomVector h = line_cohomology(sp, d);
            if (json_mode)
                out << canonical_dump(json{{"space", sp.str()}, {"degree", d}, {"h", h}});
            else
                out << "h(" << sp.str() << ", O" << md_str(d) << ") = " << detail::cohom_str(h)
                    << "\n";
            return kOk;
        }

        MonadDocument doc = load_monad_document(file);

        if (validate_cmd->parsed()) {
            Monad M = build_monad(doc, single_values());
            ValidationReport v = validate(M);
            if (json_mode)
                out << canonical_dump(detail::report_json(v));
            else {
                out << "degrees homogeneous:            " << (v.degrees_homogeneous ? "yes" : "no")
                    << "\n"
                    << "beta . alpha = 0:               " << (v.complex ? "yes" : "no") << "\n"
                    << "alpha generically injective:    " << (v.alpha_injective ? "yes" : "no")
                    << "\n"
                    << "beta generically surjective:    " << (v.beta_surjective ? "yes" : "no")
                    << "\n";
                if (v.degree_failure)
                    out << "first degree failure at entry (" << v.degree_failure->first << ","
                        << v.degree_failure->second << ")\n";
                if (v.complex_failure)
                    out << "beta.alpha nonzero first at (" << v.complex_failure->first << ","
                        << v.complex_failure->second << ")\n";
            }
            return v.ok() ? kOk : kInconclusive;
        }

        if (invariants_cmd->parsed()) {
            Monad M = build_monad(doc, single_values());
            auto [K, E] = chern_of_monad(M);
            BundleSummary sk = make_summary(M.space, K), se = make_summary(M.space, E);
            if (json_mode) {
                out << canonical_dump(json{
                    {"K", {{"chern", monadcert::detail::chern_json(K)},
                           {"summary", monadcert::detail::summary_json(sk)}}},
                    {"E", {{"chern", monadcert::detail::chern_json(E)},
                           {"summary", monadcert::detail::summary_json(se)}}}});
            } else {
                auto show = [&](const char* name, const ChernData& c, const BundleSummary& s) {
                    out << name << ": rank " << c.rank << ", c1 = "
                        << monadcert::detail::chern_json(c)["c1"].dump() << ", c2 = "
                        << monadcert::detail::chern_json(c)["c2"].dump() << ", deg_L = "
                        << rat_str(s.degree) << ", slope = " << rat_str(s.slope) << "\n";
                };
                show("K", K, sk);
                show("E", E, se);
            }
            return kOk;
        }

        if (classify_cmd->parsed()) {
            Monad M = build_monad(doc, single_values());
            Classification c = classify(M, mc);
            if (json_mode)
                out << canonical_dump(json{{"seed", mc.seed},
                                           {"samples", mc.samples},
                                           {"result", monadcert::detail::classification_json(c)}});
            else {
                out << "sheaf class: " << sheaf_class_str(c.sheaf_class) << "\n";
                if (c.alpha_locus.codim_exact)
                    out << "alpha locus: " << (c.alpha_locus.locus_empty()
                                                   ? "empty"
                                                   : "codim " + std::to_string(c.alpha_locus.codim))
                        << " (exact)\n";
                for (const auto& r : c.alpha_locus.mc)
                    out << "  q=" << r.q << ": " << r.hits << " hits / " << r.samples
                        << " samples\n";
                if (!c.note.empty()) out << "note: " << c.note << "\n";
            }
            if (c.sheaf_class == SheafClass::None || c.sheaf_class == SheafClass::Inconclusive)
                return kInconclusive;
            return kOk;
        }

        auto finish_certificate = [&](const Certificate& cert) {
            if (!out_path.empty()) emit_certificate(cert, out_path);
            if (json_mode)
                out << canonical_dump(certificate_to_json(cert));
            else {
                out << "verdict: " << cert.verdict << "\n";
                if (!cert.detail.empty()) out << "detail: " << cert.detail << "\n";
                for (const auto& a : cert.assumptions) out << "assumption: " << a << "\n";
                out << "trail: " << cert.steps.size() << " steps\n";
                if (!out_path.empty()) out << "certificate written to " << out_path << "\n";
            }
            return cert.certified() ? kOk : kInconclusive;
        };

        if (stability_cmd->parsed()) {
            Monad M = build_monad(doc, single_values());
            return finish_certificate(certify_stable(M, copt));
        }

        if (asymptotic_cmd->parsed()) {
            Monad M = build_monad(doc, single_values());
            DivisorSpec D;
            D.d = divisor_spec.empty() ? detail::default_divisor(M.space)
                                       : detail::parse_degree_list(divisor_spec);
            D.assumed_anticanonical = anticanonical || divisor_spec.empty();
            return finish_certificate(certify_asymptotic(M, D, copt));
        }

        if (limit_cmd->parsed()) {
            Monad M = build_monad(doc, single_values());
            DivisorSpec D;
            D.d = divisor_spec.empty() ? detail::default_divisor(M.space)
                                       : detail::parse_degree_list(divisor_spec);
            return finish_certificate(certify_limit_semistable(M, D, copt));
        }

        if (sweep_cmd->parsed()) {
            if (grid.names.empty()) throw DocumentError("sweep needs at least one --param");
            json rows = json::array();
            bool any_inconclusive = false;
            for (const auto& row : grid.rows()) {
                Monad M = build_monad(doc, row);
                Classification c = classify(M, mc);
                std::string verdict;
                if (c.sheaf_class == SheafClass::LocallyFree) {
                    verdict = certify_stable(M, copt).verdict;
                } else if (c.sheaf_class == SheafClass::TorsionFree ||
                           c.sheaf_class == SheafClass::Reflexive) {
                    DivisorSpec D;
                    D.d = divisor_spec.empty() ? detail::default_divisor(M.space)
                                               : detail::parse_degree_list(divisor_spec);
                    verdict = certify_limit_semistable(M, D, copt).verdict;
                } else {
                    verdict = "inconclusive";
                }
                any_inconclusive = any_inconclusive || verdict == "inconclusive";
                json jrow = json::object();
                for (const auto& [k, v] : row) jrow[k] = rat_str(v);
                jrow["class"] = sheaf_class_str(c.sheaf_class);
                jrow["verdict"] = verdict;
                rows.push_back(jrow);
                if (!json_mode) {
                    for (const auto& [k, v] : row) out << k << "=" << rat_str(v) << "  ";
                    out << sheaf_class_str(c.sheaf_class) << "  " << verdict << "\n";
                }
            }
            if (json_mode) out << canonical_dump(json{{"rows", rows}});
            return any_inconclusive ? kInconclusive : kOk;
        }

        err << "error: no subcommand\n";
        return kInputError;
    } catch (const DocumentError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::logic_error& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternalError;
    }
}

inline int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace monadcert::cli
