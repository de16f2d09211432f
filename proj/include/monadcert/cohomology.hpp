#pragma once

#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "monadcert/bundle_sum.hpp"
#include "monadcert/space.hpp"

namespace monadcert {

// (h^0, h^1, ..., h^dim) with exact nonnegative entries.
using CohomVector = std::vector<long long>;

inline long long binom_ll(long long n, long long k) { return binomial(n, k).convert_to<long long>(); }

// Cohomology of O(k) on P^n: h^0 = C(n+k, n) for k >= 0, h^n = C(-k-1, n)
// for k <= -n-1, everything else zero.
inline CohomVector bott(int n, long long k) {
    if (n < 1) throw std::invalid_argument("bott: n >= 1 required");
    CohomVector h(n + 1, 0);
    if (k >= 0) h[0] = binom_ll(n + k, n);
    if (k <= -n - 1) h[n] = binom_ll(-k - 1, n);
    return h;
}

inline CohomVector kunneth(int n, int m, const MultiDegree& q) {
    if (n < 1 || m < 1) throw std::invalid_argument("kunneth: n, m >= 1 required");
    if (q.size() != 2) throw std::invalid_argument("kunneth: bidegree required");
    CohomVector a = bott(n, q[0]), b = bott(m, q[1]);
    CohomVector h(n + m + 1, 0);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= m; ++j) h[i + j] += a[i] * b[j];
    return h;
}

inline CohomVector line_cohomology(const SpaceDescriptor& space, const MultiDegree& d) {
    if (space.kind() == SpaceKind::Projective) return bott(space.n(), d.at(0));
    if (space.kind() == SpaceKind::Product) return kunneth(space.n(), space.m(), d);
    throw std::invalid_argument("cohomology unsupported on " + space.str());
}

// Multiplicity-weighted cohomology of a twisted line-bundle sum.
inline CohomVector sum_cohomology(const SpaceDescriptor& space, const LineBundleSum& S,
                                  const MultiDegree& twist) {
    CohomVector h(space.dim() + 1, 0);
    if (!space.has_cohomology())
        throw std::invalid_argument("sum_cohomology unsupported on " + space.str());
    for (const auto& [d, k] : S.terms()) {
        CohomVector v = line_cohomology(space, md_add(d, twist));
        for (size_t i = 0; i < h.size(); ++i) h[i] += k * v[i];
    }
    return h;
}

inline long long h0_sum(const SpaceDescriptor& space, const LineBundleSum& S,
                        const MultiDegree& twist) {
    return sum_cohomology(space, S, twist)[0];
}

// Half-space {p in Z^l : w . p <= t} with strictly positive weights.
struct HalfSpace {
    std::vector<Rat> w;
    Rat t;

    HalfSpace(std::vector<Rat> weights, Rat threshold) : w(std::move(weights)), t(threshold) {
        for (const Rat& x : w)
            if (x <= 0) throw std::invalid_argument("HalfSpace: weights must be positive");
    }

    bool contains(const MultiDegree& p) const {
        if (p.size() != w.size()) throw std::invalid_argument("HalfSpace: length mismatch");
        Rat acc = 0;
        for (size_t i = 0; i < p.size(); ++i) acc += w[i] * p[i];
        return acc <= t;
    }
};

struct VanishingResult {
    bool vanishes;
    std::optional<MultiDegree> witness;  // when false: a twist with h^i != 0
};

namespace detail {

// Enumerates the lattice polytope {p >= lo, w . p <= t} (bounded since w > 0).
inline std::vector<MultiDegree> polytope_points(const MultiDegree& lo, const HalfSpace& H) {
    std::vector<MultiDegree> out;
    size_t l = H.w.size();
    if (l == 1) {
        Rat cap = H.t / H.w[0];
        Int hi = rat_floor(cap);
        for (Int p = lo[0]; p <= hi; ++p) out.push_back({p.convert_to<int>()});
        return out;
    }
    if (l == 2) {
        Rat cap1 = (H.t - H.w[1] * lo[1]) / H.w[0];
        Int hi1 = rat_floor(cap1);
        for (Int p1 = lo[0]; p1 <= hi1; ++p1) {
            Rat cap2 = (H.t - H.w[0] * Rat(p1)) / H.w[1];
            Int hi2 = rat_floor(cap2);
            for (Int p2 = lo[1]; p2 <= hi2; ++p2)
                out.push_back({p1.convert_to<int>(), p2.convert_to<int>()});
        }
        return out;
    }
    // general recursive enumeration for l > 2
    std::vector<MultiDegree> stack;
    MultiDegree cur(l, 0);
    std::function<void(size_t, Rat)> rec = [&](size_t idx, Rat budget) {
        if (idx == l - 1) {
            Int hi = rat_floor(budget / H.w[idx]);
            for (Int p = lo[idx]; p <= hi; ++p) {
                cur[idx] = p.convert_to<int>();
                out.push_back(cur);
            }
            return;
        }
        Rat rest = 0;
        for (size_t i = idx + 1; i < l; ++i) rest += H.w[i] * lo[i];
        Int hi = rat_floor((budget - rest) / H.w[idx]);
        for (Int p = lo[idx]; p <= hi; ++p) {
            cur[idx] = p.convert_to<int>();
            rec(idx + 1, budget - H.w[idx] * Rat(cur[idx]));
        }
    };
    rec(0, H.t);
    return out;
}

}  // namespace detail

// Exactly the twists p in H with h^0(S(p)) > 0: the union over summands
// O(a) of the lattice polytopes {p >= -a, w . p <= t}.
inline std::vector<MultiDegree> critical_twists(const SpaceDescriptor& space,
                                                const LineBundleSum& S, const HalfSpace& H) {
    if (!space.has_cohomology())
        throw std::invalid_argument("critical_twists unsupported on " + space.str());
    std::set<MultiDegree> pts;
    for (const auto& [a, k] : S.terms()) {
        for (const auto& p : detail::polytope_points(md_neg(a), H)) pts.insert(p);
    }
    return std::vector<MultiDegree>(pts.begin(), pts.end());
}

// Symbolic vanishing of h^i(O(a)(p)) for every summand O(a) of S and every
// p in H.  i = 0: h^0(O(a+p)) != 0 iff a+p >= 0, so feasibility reduces to
// w.(-a) <= t.  i = 1: only one-dimensional factors carry h^1; each Kunneth
// branch is a two-variable integer feasibility, unbounded below along the
// half-space, hence feasible whenever the branch applies at all.
inline VanishingResult halfspace_vanishing(const SpaceDescriptor& space, const LineBundleSum& S,
                                           const HalfSpace& H, int i) {
    if (!space.has_cohomology())
        throw std::invalid_argument("halfspace_vanishing unsupported on " + space.str());
    if (i != 0 && i != 1)
        throw std::invalid_argument(
            "halfspace_vanishing: only i in {0,1}; finite-point queries cover higher indices");

    if (i == 0) {
        std::optional<MultiDegree> best;
        for (const auto& [a, k] : S.terms()) {
            MultiDegree p = md_neg(a);
            if (!H.contains(p)) continue;  // min of w.p over p >= -a is w.(-a)
            if (!best || std::lexicographical_compare(p.begin(), p.end(), best->begin(),
                                                      best->end()))
                best = p;
        }
        if (best) return {false, best};
        return {true, std::nullopt};
    }

    // i == 1
    bool first_line = (space.kind() == SpaceKind::Projective) ? (space.n() == 1)
                                                              : (space.n() == 1);
    bool second_line = space.kind() == SpaceKind::Product && space.m() == 1;
    if (space.kind() == SpaceKind::Projective) {
        if (!first_line || S.empty()) return {true, std::nullopt};
        // P^1: h^1(O(a+p)) != 0 iff a+p <= -2; always feasible in a half-space
        const MultiDegree& a = S.terms().begin()->first;
        Int p = std::min(Int(-2 - a[0]), rat_floor(H.t / H.w[0]));
        return {false, MultiDegree{p.convert_to<int>()}};
    }
    if (!first_line && !second_line) return {true, std::nullopt};  // h^1 of both factors vanish
    if (S.empty()) return {true, std::nullopt};
    const MultiDegree& a = S.terms().begin()->first;
    if (second_line) {
        // need a1+p1 >= 0, a2+p2 <= -2; push p2 down until w.p <= t
        int p1 = -a[0];
        Rat slack = (H.t - H.w[0] * Rat(p1)) / H.w[1];
        Int p2 = std::min(Int(-2 - a[1]), rat_floor(slack));
        return {false, MultiDegree{p1, p2.convert_to<int>()}};
    }
    // n == 1 branch: a1+p1 <= -2, a2+p2 >= 0
    int p2 = -a[1];
    Rat slack = (H.t - H.w[1] * Rat(p2)) / H.w[0];
    Int p1 = std::min(Int(-2 - a[0]), rat_floor(slack));
    return {false, MultiDegree{p1.convert_to<int>(), p2}};
}

}  // namespace monadcert
