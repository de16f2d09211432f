#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "monadcert/degeneration.hpp"
#include "monadcert/monad.hpp"
#include "monadcert/version.hpp"

namespace monadcert {

using json = nlohmann::json;

inline json rat_json(const Rat& r) { return rat_str(r); }
inline json md_json(const MultiDegree& d) { return json(d); }

// One audit-trail entry: the operation invoked, its inputs, its exact
// output, and the claim it discharges.  Steps are replayable.
struct CertStep {
    std::string op;
    json inputs;
    json output;
    std::string anchor;
};

struct Certificate {
    std::string verdict;  // stable | asymptotically_stable | asymptotically_semistable |
                          // sheaf_class | inconclusive
    std::vector<std::string> assumptions;
    std::vector<CertStep> steps;
    std::string detail;
    std::optional<std::uint64_t> seed;
    std::vector<std::uint64_t> primes;
    std::optional<std::uint64_t> samples;

    bool certified() const { return verdict != "inconclusive"; }

    void step(std::string op, json in, json out, std::string anchor) {
        steps.push_back({std::move(op), std::move(in), std::move(out), std::move(anchor)});
    }
};

// Divisor D in |O(d)| (cyclic) or |O(d1,d2)| with the flags the criteria need.
struct DivisorSpec {
    MultiDegree d;
    bool assumed_cyclic = true;        // Pic(D) = Z, user assertion
    bool assumed_anticanonical = false;

    bool positive_polydegree() const {
        bool nonzero = false;
        for (int v : d) {
            if (v < 0) return false;
            nonzero = nonzero || v > 0;
        }
        return nonzero;
    }
};

struct CertifyOptions {
    McOptions mc;
    long long max_critical_twists = 100000;
};

namespace detail {

inline json summary_json(const BundleSummary& b) {
    return json{{"rank", b.rank.convert_to<long long>()},
                {"det", b.det},
                {"degree", rat_str(b.degree)},
                {"slope", rat_str(b.slope)}};
}

inline json chern_json(const ChernData& c) {
    std::vector<long long> c1, c2;
    for (const Int& v : c.c1()) c1.push_back(v.convert_to<long long>());
    for (const Int& v : c.c2()) c2.push_back(v.convert_to<long long>());
    return json{{"rank", c.rank.convert_to<long long>()}, {"c1", c1}, {"c2", c2}};
}

inline json classification_json(const Classification& c) {
    json mc = json::array();
    for (const auto& run : c.alpha_locus.mc) {
        json j{{"q", run.q}, {"samples", run.samples}, {"hits", run.hits}};
        if (run.estimate) j["estimate"] = *run.estimate;
        if (run.zero_hit_bound) j["zero_hit_bound"] = *run.zero_hit_bound;
        j["consistent_with_exact"] = run.consistent_with_exact;
        mc.push_back(j);
    }
    json out{{"class", sheaf_class_str(c.sheaf_class)},
             {"alpha_locus_mc", mc},
             {"beta_fiberwise_surjective", c.beta_fiberwise_surjective}};
    if (c.alpha_locus.codim_exact) {
        out["alpha_codim"] = c.alpha_locus.codim;
        out["alpha_locus_empty"] = c.alpha_locus.locus_empty();
    }
    if (!c.note.empty()) out["note"] = c.note;
    return out;
}

// Degree of the restriction of a class with c1 coefficients `c1` to a
// divisor of the given polydegree, measured against the restricted
// polarization: c1 . L^(dim-2) . [D].
inline Rat restricted_degree(const SpaceDescriptor& space, const std::vector<Int>& c1,
                             const MultiDegree& d) {
    int n = space.n(), m = space.kind() == SpaceKind::Product ? space.m() : 0;
    TruncPoly c(n, m);
    if (n >= 1) c.at(1, 0) = c1[0];
    if (m >= 1 && c1.size() > 1) c.at(0, 1) = c1[1];
    TruncPoly L(n, m);
    L.at(1, 0) = 1;
    if (m >= 1) L.at(0, 1) = 1;
    TruncPoly D(n, m);
    D.at(1, 0) = d[0];
    if (m >= 1) D.at(0, 1) = d.size() > 1 ? d[1] : 0;
    TruncPoly prod = c * D;
    for (int i = 0; i < space.dim() - 2; ++i) prod = prod * L;
    return Rat(prod.at(n, m));
}

}  // namespace detail

// --- slope stability ---------------------------------------------------------
//
// Exact pipeline for rank-2 cohomology bundles: a rank-2 bundle on a smooth
// polycyclic variety is slope stable iff no line bundle O(v) with
// delta(v) >= slope(E) admits a map into E, i.e. iff h^0(E(q)) = 0 for every
// q with delta(q) <= -slope(E).  Outside the finite critical set where the
// ambient sum M1 has sections, vanishing is symbolic; at critical twists the
// section-map kernels decide exactly.  Higher rank runs the ambient-bound
// pipeline and never certifies.
inline Certificate certify_stable(const Monad& M, const CertifyOptions& opt = {}) {
    Certificate cert;
    cert.seed = opt.mc.seed;
    cert.primes = opt.mc.primes;
    cert.samples = opt.mc.samples;

    ValidationReport v = validate(M);
    cert.step("validate", json::object(),
              json{{"degrees_homogeneous", v.degrees_homogeneous},
                   {"complex", v.complex},
                   {"alpha_generically_injective", v.alpha_injective},
                   {"beta_generically_surjective", v.beta_surjective}},
              "monad.validity");
    if (!v.ok()) {
        cert.verdict = "inconclusive";
        cert.detail = "monad validation failed";
        return cert;
    }

    auto [K, E] = chern_of_monad(M);
    cert.step("chern", json::object(),
              json{{"K", detail::chern_json(K)}, {"E", detail::chern_json(E)}},
              "invariants.whitney");
    BundleSummary se = make_summary(M.space, E);
    cert.step("summary", json{{"bundle", "E"}}, detail::summary_json(se), "invariants.slope");

    if (se.rank < 1) {
        cert.verdict = "inconclusive";
        cert.detail = "cohomology has rank < 1";
        return cert;
    }

    // Hoppe-style section criteria apply to bundles; certify local freeness
    // first, otherwise ideal-sheaf subsheaves escape the h^0 checks.
    Classification cls = classify(M, opt.mc);
    cert.step("classify",
              json{{"seed", opt.mc.seed}, {"samples", opt.mc.samples}, {"primes", opt.mc.primes}},
              detail::classification_json(cls), "classification.codim");
    if (cls.sheaf_class != SheafClass::LocallyFree) {
        cert.verdict = "inconclusive";
        cert.detail = "cohomology sheaf not certified locally free (" +
                      sheaf_class_str(cls.sheaf_class) + "); section criteria do not apply";
        return cert;
    }
    if (!cls.beta_fiberwise_surjective) {
        cert.verdict = "inconclusive";
        cert.detail = "beta is not certified fiberwise surjective; the cohomology need not be "
                      "a bundle";
        return cert;
    }

    long long r = se.rank.convert_to<long long>();
    if (r == 1) {
        cert.verdict = "stable";
        cert.detail = "rank-one bundles have no proper lower-rank subsheaves";
        return cert;
    }

    Rat d = M.space.degree_unit();
    auto [k1, norm] = slope_and_normalize(M.space, se);
    cert.step("normalize", json{{"bundle", "E"}},
              json{{"k", k1.convert_to<long long>()}, {"normalized", detail::summary_json(norm)}},
              "stability.normalization");

    H1Closure closure = h1_alpha_closure(M);
    bool need_closure = false;

    for (long long s = 1; s <= r - 1; ++s) {
        Rat mu_s = se.slope * s;
        Int ks = rat_ceil(mu_s / d);
        // Sharp half-space: twists q with delta(q) <= -s*slope cover every
        // potential rank-s destabilizer, including equal-slope ones.  On the
        // paper's monads this agrees with the normalization offset -d*k_s.
        Rat t_s = -mu_s;
        HalfSpace H(M.space.weights(), t_s);
        cert.step("halfspace", json{{"s", s}},
                  json{{"k_s", ks.convert_to<long long>()},
                       {"threshold", rat_str(t_s)},
                       {"normalization_threshold", rat_str(-d * Rat(ks))}},
                  "stability.halfspace");

        if (s == 1) {
            if (!M.m0.empty() && !closure.trivial) {
                need_closure = true;
                cert.step("h1_closure", json::object(),
                          json{{"closed", closure.closed}, {"detail", closure.detail}},
                          "stability.quotient_obstruction");
                if (!closure.closed) {
                    cert.verdict = "inconclusive";
                    cert.detail = "h^1 obstruction from the first term cannot be closed: " +
                                  closure.detail;
                    return cert;
                }
            }
            std::vector<MultiDegree> crit = critical_twists(M.space, M.m1, H);
            if (static_cast<long long>(crit.size()) > opt.max_critical_twists) {
                cert.verdict = "inconclusive";
                cert.detail = "critical twist set too large";
                return cert;
            }
            cert.step("critical_twists", json{{"s", s}, {"threshold", rat_str(t_s)}},
                      json{{"twists", crit}}, "stability.sections.ambient");
            for (const MultiDegree& q : crit) {
                H0Result h0 = h0_cohomology_bundle(M, q);
                json out{{"twist", q}, {"exact", h0.exact}};
                if (h0.exact)
                    out["value"] = h0.value;
                else
                    out["interval"] = json::array({h0.lo, h0.hi});
                cert.step("h0_cohomology_bundle", json{{"twist", q}}, out,
                          "stability.sections.exact");
                if (!h0.exact) {
                    cert.verdict = "inconclusive";
                    cert.detail = "h0(E" + md_str(q) + ") only bounded to [" +
                                  std::to_string(h0.lo) + "," + std::to_string(h0.hi) + "]";
                    return cert;
                }
                if (h0.value > 0) {
                    cert.verdict = "inconclusive";
                    cert.detail = "h0(E" + md_str(q) + ") = " + std::to_string(h0.value) +
                                  " > 0: O(" + md_str(md_neg(q)) + ") maps into E";
                    return cert;
                }
            }
        } else {
            LineBundleSum ambient = exterior_summands(M.m1, static_cast<int>(s));
            std::vector<MultiDegree> crit = critical_twists(M.space, ambient, H);
            cert.step("critical_twists",
                      json{{"s", s}, {"threshold", rat_str(t_s)}, {"ambient", "exterior"}},
                      json{{"twists", crit}}, "stability.sections.ambient");
            if (!crit.empty()) {
                cert.verdict = "inconclusive";
                cert.detail = "ambient bound for the exterior power s=" + std::to_string(s) +
                              " is positive at twist " + md_str(crit.front());
                return cert;
            }
        }
    }

    if (r >= 3) {
        // ambient bounds say nothing about sections of exterior powers of the
        // quotient E itself; the pipeline is bound-only here
        cert.verdict = "inconclusive";
        cert.detail = "rank >= 3: exterior powers of the cohomology are only bounded by the "
                      "ambient sums";
        return cert;
    }

    (void)need_closure;
    cert.verdict = "stable";
    return cert;
}

// --- asymptotic stability ----------------------------------------------------

// Restriction of E to a divisor of positive polydegree: mechanized chase
// h^0(E) = 0, h^1(K(-d)) = 0, h^1(E(-d)) = 0, hence h^0(E|_D) = 0, then the
// rank-2 degree-0 criterion on a cyclic divisor (recorded assumption) or the
// restricted half-space argument in the polycyclic case.
inline Certificate certify_asymptotic(const Monad& M, const DivisorSpec& D,
                                      const CertifyOptions& opt = {}) {
    if (!D.positive_polydegree())
        throw std::invalid_argument("certify_asymptotic: divisor polydegree must be nonnegative "
                                    "and nonzero");
    if (static_cast<int>(D.d.size()) != M.space.picard_rank())
        throw std::invalid_argument("certify_asymptotic: divisor degree length mismatch");

    Certificate cert = certify_stable(M, opt);
    if (cert.verdict != "stable") {
        cert.verdict = "inconclusive";
        if (cert.detail.empty()) cert.detail = "underlying stable certificate failed";
        return cert;
    }
    cert.verdict = "";  // continue the trail

    BundleSummary se = make_summary(M.space, chern_of_monad(M).second);
    if (se.rank != 2) {
        cert.verdict = "inconclusive";
        cert.detail = "restriction chase implemented for rank 2";
        return cert;
    }
    if (se.degree > 0) {
        cert.verdict = "inconclusive";
        cert.detail = "cohomology bundle has positive degree; h^0(E) = 0 is not available";
        return cert;
    }

    MultiDegree minus_d = md_neg(D.d);

    // h^0(E) = 0 at the zero twist
    H0Result h0e = h0_cohomology_bundle(M, M.space.zero_degree());
    cert.step("h0_cohomology_bundle", json{{"twist", M.space.zero_degree()}},
              json{{"exact", h0e.exact}, {"value", h0e.exact ? h0e.value : -1}},
              "restriction.h0_E");
    if (!h0e.exact || h0e.value != 0) {
        cert.verdict = "inconclusive";
        cert.detail = "h0(E) does not vanish";
        return cert;
    }

    // h^1(K(-d)) = 0 from the horizontal string
    long long h0m2 = sum_cohomology(M.space, M.m2, minus_d)[0];
    long long rk_beta = section_map(M, MonadMap::Beta, minus_d).rank();
    long long h1m1 = sum_cohomology(M.space, M.m1, minus_d)[1];
    long long h1k_bound = std::max(0LL, h0m2 - rk_beta) + h1m1;
    cert.step("h1_kernel_bound", json{{"twist", minus_d}},
              json{{"h0_M2", h0m2}, {"rank_beta_sections", rk_beta}, {"h1_M1", h1m1},
                   {"bound", h1k_bound}},
              "restriction.h1_K");
    if (h1k_bound != 0) {
        cert.verdict = "inconclusive";
        cert.detail = "h1(K(-d)) bound is positive";
        return cert;
    }

    // h^1(E(-d)) = 0 from the vertical string
    long long h2m0 = M.space.dim() >= 2 ? sum_cohomology(M.space, M.m0, minus_d)[2] : 0;
    cert.step("h1_cohomology_bound", json{{"twist", minus_d}},
              json{{"h1_K", 0}, {"h2_M0", h2m0}}, "restriction.h1_E");
    if (h2m0 != 0) {
        cert.verdict = "inconclusive";
        cert.detail = "h2(M0(-d)) does not vanish";
        return cert;
    }

    cert.step("restriction_sequence", json{{"divisor", D.d}},
              json{{"h0_E", 0}, {"h1_E_minus_d", 0}, {"h0_E_restricted", 0}},
              "restriction.sequence");

    Rat deg_d = detail::restricted_degree(M.space, chern_of_monad(M).second.c1(), D.d);
    cert.step("restricted_degree", json{{"divisor", D.d}}, json{{"value", rat_str(deg_d)}},
              "restriction.degree");

    if (M.space.kind() == SpaceKind::Projective) {
        Rat unit_deg = detail::restricted_degree(M.space, {Int(1)}, D.d);
        if (!D.assumed_cyclic) {
            cert.verdict = "inconclusive";
            cert.detail = "cyclic restriction criterion needs Pic(D) = Z";
            return cert;
        }
        cert.assumptions.push_back("divisor D is cyclic: Pic(D) = Z (user assertion)");
        if (D.assumed_anticanonical) cert.assumptions.push_back("D in |-K_X|");
        if (deg_d == 0) {
            cert.step("conclude", json{{"criterion", "rank2_degree0_cyclic"}},
                      json{{"stable_iff_h0_vanishes", true}}, "restriction.criterion");
        } else if (Rat(1) - 2 * unit_deg <= deg_d && deg_d < 0) {
            // already normalized: h^0 vanishing is the rank-2 sufficiency check
            cert.step("conclude", json{{"criterion", "rank2_normalized_sufficiency"}},
                      json{{"normalized", true}}, "restriction.criterion");
        } else {
            cert.verdict = "inconclusive";
            cert.detail = "restricted degree outside the normalized window";
            return cert;
        }
    } else {
        cert.assumptions.push_back("restricted half-space vanishing on D per the product "
                                   "restriction argument");
        cert.step("conclude", json{{"criterion", "product_restriction"}},
                  json{{"restricted_polarization", "O_D(1,1)"},
                       {"restricted_degree", rat_str(deg_d)}},
                  "restriction.criterion");
        if (deg_d > 0) {
            cert.verdict = "inconclusive";
            cert.detail = "restricted degree positive";
            return cert;
        }
    }

    cert.verdict = "asymptotically_stable";
    return cert;
}

// --- degenerate limits ---------------------------------------------------------

// Semistability of a torsion-free limit on P^3: h^0(E(-1)|_D) and
// h^0(E*(-1)|_D) both vanish, read off the restriction strings and the dual
// kernel string 0 -> M2* -> M1* -> K* -> 0.
inline Certificate certify_limit_semistable(const Monad& M, const DivisorSpec& D,
                                            const CertifyOptions& opt = {}) {
    Certificate cert;
    cert.seed = opt.mc.seed;
    cert.primes = opt.mc.primes;
    cert.samples = opt.mc.samples;

    if (M.space.kind() != SpaceKind::Projective || M.space.n() != 3)
        throw std::invalid_argument("certify_limit_semistable: base must be P^3");
    if (!D.positive_polydegree())
        throw std::invalid_argument("certify_limit_semistable: divisor degree must be positive");
    int d = D.d.at(0);

    auto [K, E] = chern_of_monad(M);
    if (E.rank != 2 || E.c1()[0] != 0) {
        cert.verdict = "inconclusive";
        cert.detail = "limit chase needs rank 2 and c1 = 0";
        return cert;
    }

    Classification cls = classify(M, opt.mc);
    cert.step("classify",
              json{{"seed", opt.mc.seed}, {"samples", opt.mc.samples}, {"primes", opt.mc.primes}},
              detail::classification_json(cls), "classification.codim");
    if (cls.sheaf_class == SheafClass::None || cls.sheaf_class == SheafClass::Inconclusive) {
        cert.verdict = "inconclusive";
        cert.detail = "limit is not certified torsion free";
        return cert;
    }
    if (!cls.beta_fiberwise_surjective) {
        cert.verdict = "inconclusive";
        cert.detail = "beta is not certified fiberwise surjective; the dual kernel string is "
                      "not exact";
        return cert;
    }

    if (cls.sheaf_class == SheafClass::LocallyFree) {
        Certificate strong = certify_asymptotic(M, D, opt);
        if (strong.verdict == "asymptotically_stable") return strong;
    }

    cert.assumptions.push_back("Pic(D) = Z (user assertion)");
    ValidationReport v = validate(M);
    cert.step("validate", json::object(),
              json{{"degrees_homogeneous", v.degrees_homogeneous},
                   {"complex", v.complex},
                   {"alpha_generically_injective", v.alpha_injective},
                   {"beta_generically_surjective", v.beta_surjective}},
              "monad.validity");
    if (!v.ok()) {
        cert.verdict = "inconclusive";
        cert.detail = "monad validation failed";
        return cert;
    }

    // (a) h^0(E(-1)) = 0
    MultiDegree m1t{-1};
    H0Result h0e = h0_cohomology_bundle(M, m1t);
    cert.step("h0_cohomology_bundle", json{{"twist", m1t}},
              json{{"exact", h0e.exact}, {"value", h0e.exact ? h0e.value : -1}},
              "limit.h0_E_minus1");
    if (!h0e.exact || h0e.value != 0) {
        cert.verdict = "inconclusive";
        cert.detail = "h0(E(-1)) does not vanish";
        return cert;
    }

    // (b) h^1(E(-1-d)) = 0 via the two strings
    MultiDegree t{-1 - d};
    long long h0m2 = sum_cohomology(M.space, M.m2, t)[0];
    long long rk_beta = section_map(M, MonadMap::Beta, t).rank();
    long long h1m1 = sum_cohomology(M.space, M.m1, t)[1];
    long long h2m0 = sum_cohomology(M.space, M.m0, t)[2];
    long long bound = std::max(0LL, h0m2 - rk_beta) + h1m1 + h2m0;
    cert.step("h1_cohomology_bound", json{{"twist", t}},
              json{{"h0_M2", h0m2}, {"rank_beta_sections", rk_beta}, {"h1_M1", h1m1},
                   {"h2_M0", h2m0}, {"bound", bound}},
              "limit.h1_E_restriction");
    if (bound != 0) {
        cert.verdict = "inconclusive";
        cert.detail = "h1(E(-1-d)) bound is positive";
        return cert;
    }
    cert.step("restriction_sequence", json{{"divisor", D.d}, {"twist", m1t}},
              json{{"h0_E_minus1_restricted", 0}}, "limit.restriction_E");

    // (c) dual side: 0 -> M2* -> M1* -> K* -> 0.  Note the first slot is the
    // dual of M2 (twist -1 here), the variant making the string exact.
    LineBundleSum m1_dual(M.m1.picard_rank()), m2_dual(M.m2.picard_rank());
    for (const auto& [deg, k] : M.m1.terms()) m1_dual.add(md_neg(deg), k);
    for (const auto& [deg, k] : M.m2.terms()) m2_dual.add(md_neg(deg), k);
    PolyMatrix beta_t = M.beta.transpose();

    auto dual_kernel_h0_bound = [&](const MultiDegree& tw) {
        long long h0_m1d = sum_cohomology(M.space, m1_dual, tw)[0];
        long long rk = section_matrix(M.space, m2_dual, m1_dual, beta_t, tw).rank();
        long long h1_m2d = sum_cohomology(M.space, m2_dual, tw)[1];
        return std::max(0LL, h0_m1d - rk) + h1_m2d;
    };
    long long h0kd = dual_kernel_h0_bound({-1});
    cert.step("dual_kernel_h0_bound", json{{"twist", json::array({-1})}},
              json{{"bound", h0kd}}, "limit.h0_Kdual_minus1");
    long long h1kd = sum_cohomology(M.space, m1_dual, {-1 - d})[1] +
                     sum_cohomology(M.space, m2_dual, {-1 - d})[2];
    cert.step("dual_kernel_h1_bound", json{{"twist", json::array({-1 - d})}},
              json{{"h1_M1_dual", sum_cohomology(M.space, m1_dual, {-1 - d})[1]},
                   {"h2_M2_dual", sum_cohomology(M.space, m2_dual, {-1 - d})[2]},
                   {"bound", h1kd}},
              "limit.h1_Kdual");
    if (h0kd != 0 || h1kd != 0) {
        cert.verdict = "inconclusive";
        cert.detail = "dual kernel string vanishing failed";
        return cert;
    }
    cert.step("restriction_sequence", json{{"divisor", D.d}, {"side", "dual"}},
              json{{"h0_Kdual_minus1_restricted", 0}, {"h0_Edual_minus1_restricted", 0}},
              "limit.restriction_dual");

    cert.step("conclude", json{{"criterion", "rank2_degree0_semistability_on_D"}},
              json{{"h0_E_minus1_on_D", 0}, {"h0_Edual_minus1_on_D", 0}},
              "limit.criterion");
    cert.verdict = "asymptotically_semistable";
    return cert;
}

// --- soundness helpers ---------------------------------------------------------

struct DestabilizerSearchResult {
    std::optional<MultiDegree> counterexample;  // twist p with h^0(E(-p)) > 0 proven
    std::vector<MultiDegree> unresolved;        // twists where only an interval is known
    long long twists_checked = 0;
};

// Brute-force line-subsheaf destabilizer search: every O(p) with
// delta(p) >= 0 and |p_i| <= box, checked through h0_cohomology_bundle.
inline DestabilizerSearchResult destabilizer_search(const Monad& M, int box) {
    DestabilizerSearchResult res;
    int l = M.space.picard_rank();
    std::vector<MultiDegree> all;
    MultiDegree cur(l, 0);
    std::function<void(int)> rec = [&](int idx) {
        if (idx == l) {
            all.push_back(cur);
            return;
        }
        for (int v = -box; v <= box; ++v) {
            cur[idx] = v;
            rec(idx + 1);
        }
    };
    rec(0);
    for (const MultiDegree& p : all) {
        if (M.space.delta_L(p) < 0) continue;
        ++res.twists_checked;
        H0Result h0 = h0_cohomology_bundle(M, md_neg(p));
        if (h0.exact && h0.value > 0) {
            res.counterexample = p;
            return res;
        }
        if (!h0.exact && h0.lo > 0) {
            res.counterexample = p;
            return res;
        }
        if (!h0.exact && h0.hi > 0) res.unresolved.push_back(p);
    }
    return res;
}

// --- replay --------------------------------------------------------------------

// Re-executes one audit-trail step and returns the recomputed output; the
// certificate invariant is that this matches the recorded output exactly.
inline json replay_step(const Monad& M, const CertStep& st) {
    auto twist_of = [&](const json& j) -> MultiDegree {
        return j.get<MultiDegree>();
    };
    if (st.op == "validate") {
        ValidationReport v = validate(M);
        return json{{"degrees_homogeneous", v.degrees_homogeneous},
                    {"complex", v.complex},
                    {"alpha_generically_injective", v.alpha_injective},
                    {"beta_generically_surjective", v.beta_surjective}};
    }
    if (st.op == "chern") {
        auto [K, E] = chern_of_monad(M);
        return json{{"K", detail::chern_json(K)}, {"E", detail::chern_json(E)}};
    }
    if (st.op == "summary") return detail::summary_json(make_summary(M.space, chern_of_monad(M).second));
    if (st.op == "normalize") {
        auto [k, norm] = slope_and_normalize(M.space, make_summary(M.space, chern_of_monad(M).second));
        return json{{"k", k.convert_to<long long>()}, {"normalized", detail::summary_json(norm)}};
    }
    if (st.op == "halfspace") {
        long long s = st.inputs.at("s").get<long long>();
        BundleSummary se = make_summary(M.space, chern_of_monad(M).second);
        Rat mu_s = se.slope * s;
        Int ks = rat_ceil(mu_s / M.space.degree_unit());
        return json{{"k_s", ks.convert_to<long long>()},
                    {"threshold", rat_str(-mu_s)},
                    {"normalization_threshold", rat_str(-M.space.degree_unit() * Rat(ks))}};
    }
    if (st.op == "h1_closure") {
        H1Closure c = h1_alpha_closure(M);
        return json{{"closed", c.closed}, {"detail", c.detail}};
    }
    if (st.op == "critical_twists") {
        long long s = st.inputs.at("s").get<long long>();
        Rat t = rat_parse(st.inputs.at("threshold").get<std::string>());
        HalfSpace H(M.space.weights(), t);
        LineBundleSum amb = s == 1 ? M.m1 : exterior_summands(M.m1, static_cast<int>(s));
        return json{{"twists", critical_twists(M.space, amb, H)}};
    }
    if (st.op == "h0_cohomology_bundle") {
        MultiDegree q = twist_of(st.inputs.at("twist"));
        H0Result h0 = h0_cohomology_bundle(M, q);
        if (st.output.contains("twist")) {
            json out{{"twist", q}, {"exact", h0.exact}};
            if (h0.exact)
                out["value"] = h0.value;
            else
                out["interval"] = json::array({h0.lo, h0.hi});
            return out;
        }
        return json{{"exact", h0.exact}, {"value", h0.exact ? h0.value : -1}};
    }
    if (st.op == "h0_kernel_bundle") {
        MultiDegree q = twist_of(st.inputs.at("twist"));
        return json{{"value", h0_kernel_bundle(M, q)}};
    }
    if (st.op == "h1_kernel_bound") {
        MultiDegree t = twist_of(st.inputs.at("twist"));
        long long h0m2 = sum_cohomology(M.space, M.m2, t)[0];
        long long rk = section_map(M, MonadMap::Beta, t).rank();
        long long h1m1 = sum_cohomology(M.space, M.m1, t)[1];
        return json{{"h0_M2", h0m2}, {"rank_beta_sections", rk}, {"h1_M1", h1m1},
                    {"bound", std::max(0LL, h0m2 - rk) + h1m1}};
    }
    if (st.op == "h1_cohomology_bound") {
        MultiDegree t = twist_of(st.inputs.at("twist"));
        if (st.output.contains("h0_M2")) {
            long long h0m2 = sum_cohomology(M.space, M.m2, t)[0];
            long long rk = section_map(M, MonadMap::Beta, t).rank();
            long long h1m1 = sum_cohomology(M.space, M.m1, t)[1];
            long long h2m0 = sum_cohomology(M.space, M.m0, t)[2];
            return json{{"h0_M2", h0m2}, {"rank_beta_sections", rk}, {"h1_M1", h1m1},
                        {"h2_M0", h2m0},
                        {"bound", std::max(0LL, h0m2 - rk) + h1m1 + h2m0}};
        }
        long long h2m0 = M.space.dim() >= 2 ? sum_cohomology(M.space, M.m0, t)[2] : 0;
        return json{{"h1_K", 0}, {"h2_M0", h2m0}};
    }
    if (st.op == "restricted_degree") {
        MultiDegree d = st.inputs.at("divisor").get<MultiDegree>();
        return json{{"value", rat_str(detail::restricted_degree(
                                  M.space, chern_of_monad(M).second.c1(), d))}};
    }
    if (st.op == "classify") {
        McOptions mc;
        mc.seed = st.inputs.at("seed").get<std::uint64_t>();
        mc.samples = st.inputs.at("samples").get<std::uint64_t>();
        mc.primes = st.inputs.at("primes").get<std::vector<std::uint64_t>>();
        return detail::classification_json(classify(M, mc));
    }
    if (st.op == "dual_kernel_h0_bound" || st.op == "dual_kernel_h1_bound") {
        MultiDegree tw = twist_of(st.inputs.at("twist"));
        LineBundleSum m1_dual(M.m1.picard_rank()), m2_dual(M.m2.picard_rank());
        for (const auto& [deg, k] : M.m1.terms()) m1_dual.add(md_neg(deg), k);
        for (const auto& [deg, k] : M.m2.terms()) m2_dual.add(md_neg(deg), k);
        if (st.op == "dual_kernel_h0_bound") {
            long long h0_m1d = sum_cohomology(M.space, m1_dual, tw)[0];
            long long rk =
                section_matrix(M.space, m2_dual, m1_dual, M.beta.transpose(), tw).rank();
            long long h1_m2d = sum_cohomology(M.space, m2_dual, tw)[1];
            return json{{"bound", std::max(0LL, h0_m1d - rk) + h1_m2d}};
        }
        long long h1m1d = sum_cohomology(M.space, m1_dual, tw)[1];
        long long h2m2d = sum_cohomology(M.space, m2_dual, tw)[2];
        return json{{"h1_M1_dual", h1m1d}, {"h2_M2_dual", h2m2d}, {"bound", h1m1d + h2m2d}};
    }
    if (st.op == "restriction_sequence" || st.op == "conclude") {
        return st.output;  // conclusions of already-replayed vanishing steps
    }
    throw std::invalid_argument("replay_step: unknown op '" + st.op + "'");
}

struct ReplayResult {
    bool ok = true;
    size_t first_mismatch = 0;
    std::string detail;
};

inline ReplayResult replay_certificate(const Monad& M, const Certificate& cert) {
    ReplayResult r;
    for (size_t i = 0; i < cert.steps.size(); ++i) {
        json out = replay_step(M, cert.steps[i]);
        if (out != cert.steps[i].output) {
            r.ok = false;
            r.first_mismatch = i;
            r.detail = "step " + std::to_string(i) + " (" + cert.steps[i].op + ") diverged";
            return r;
        }
    }
    return r;
}

}  // namespace monadcert
