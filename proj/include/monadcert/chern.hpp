#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "monadcert/bundle_sum.hpp"
#include "monadcert/space.hpp"

namespace monadcert {

// Element of Z[h]/(h^(n+1)) or Z[h1,h2]/(h1^(n+1), h2^(m+1)), stored as a
// dense coefficient grid.
class TruncPoly {
public:
    TruncPoly() = default;
    TruncPoly(int n, int m) : n_(n), m_(m), c_(size_t(n + 1) * (m + 1), Int(0)) {}

    static TruncPoly one(int n, int m) {
        TruncPoly t(n, m);
        t.at(0, 0) = 1;
        return t;
    }

    // 1 + d1*h1 (+ d2*h2): total Chern class of a line bundle.
    static TruncPoly line(int n, int m, const MultiDegree& d) {
        TruncPoly t = one(n, m);
        if (n >= 1) t.at(1, 0) = d[0];
        if (m >= 1 && d.size() > 1) t.at(0, 1) = d[1];
        return t;
    }

    int n() const { return n_; }
    int m() const { return m_; }
    Int& at(int i, int j) { return c_[size_t(i) * (m_ + 1) + j]; }
    const Int& at(int i, int j) const { return c_[size_t(i) * (m_ + 1) + j]; }

    bool operator==(const TruncPoly& o) const { return n_ == o.n_ && m_ == o.m_ && c_ == o.c_; }

    TruncPoly operator*(const TruncPoly& o) const {
        check(o);
        TruncPoly r(n_, m_);
        for (int i = 0; i <= n_; ++i)
            for (int j = 0; j <= m_; ++j) {
                if (at(i, j) == 0) continue;
                for (int k = 0; i + k <= n_; ++k)
                    for (int l = 0; j + l <= m_; ++l) {
                        if (o.at(k, l) == 0) continue;
                        r.at(i + k, j + l) += at(i, j) * o.at(k, l);
                    }
            }
        return r;
    }

    TruncPoly operator+(const TruncPoly& o) const {
        check(o);
        TruncPoly r = *this;
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
        return r;
    }

    TruncPoly operator-(const TruncPoly& o) const {
        check(o);
        TruncPoly r = *this;
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
        return r;
    }

    TruncPoly pow(int k) const {
        TruncPoly r = one(n_, m_);
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    // Inverse of a unit (constant term 1): geometric series in the
    // nilpotent part.
    TruncPoly inverse() const {
        if (at(0, 0) != 1) throw std::invalid_argument("inverse: constant term must be 1");
        TruncPoly nil = one(n_, m_) - *this;  // 1 - this = -N
        TruncPoly acc = one(n_, m_);
        TruncPoly p = one(n_, m_);
        for (int k = 1; k <= n_ + m_; ++k) {
            p = p * nil;
            acc = acc + p;
        }
        return acc;
    }

    // Graded piece of total degree k as a coefficient vector on the monomial
    // basis (h1^k, h1^(k-1) h2, ..., h2^k), skipping truncated monomials.
    std::vector<Int> graded(int k) const {
        std::vector<Int> out;
        for (int i = k; i >= 0; --i) {
            int j = k - i;
            if (i <= n_ && j <= m_) out.push_back(at(i, j));
        }
        return out;
    }

private:
    void check(const TruncPoly& o) const {
        if (n_ != o.n_ || m_ != o.m_) throw std::invalid_argument("TruncPoly shape mismatch");
    }

    int n_ = 0, m_ = 0;
    std::vector<Int> c_;
};

// Rank plus total Chern class in the truncated ring.
struct ChernData {
    Int rank;
    TruncPoly total;

    // Coefficients of the degree-1 part on (h1[, h2]).
    std::vector<Int> c1() const { return total.graded(1); }
    // Coefficients of the degree-2 part on (h1^2[, h1 h2, h2^2]).
    std::vector<Int> c2() const { return total.graded(2); }

    MultiDegree det() const {
        std::vector<Int> v = c1();
        MultiDegree d;
        for (const Int& x : v) d.push_back(x.convert_to<int>());
        return d;
    }
};

struct BundleSummary {
    Int rank;
    MultiDegree det;
    Rat degree;
    Rat slope;  // degree / rank
};

inline TruncPoly total_chern(const SpaceDescriptor& space, const LineBundleSum& S) {
    if (!space.has_cohomology())
        throw std::invalid_argument("total_chern: descriptor has no intersection ring here");
    int n = space.n(), m = space.kind() == SpaceKind::Product ? space.m() : 0;
    TruncPoly acc = TruncPoly::one(n, m);
    for (const auto& [d, k] : S.terms()) acc = acc * TruncPoly::line(n, m, d).pow(k);
    return acc;
}

// Whitney formula on the monad terms: c(K) = c(M1)/c(M2),
// c(E) = c(M1)/(c(M0) c(M2)); ranks by alternating sums.
inline std::pair<ChernData, ChernData> chern_of_terms(const SpaceDescriptor& space,
                                                      const LineBundleSum& m0,
                                                      const LineBundleSum& m1,
                                                      const LineBundleSum& m2) {
    TruncPoly c0 = total_chern(space, m0);
    TruncPoly c1 = total_chern(space, m1);
    TruncPoly c2 = total_chern(space, m2);
    ChernData K{Int(m1.rank() - m2.rank()), c1 * c2.inverse()};
    ChernData E{Int(m1.rank() - m0.rank() - m2.rank()), K.total * c0.inverse()};
    return {K, E};
}

inline BundleSummary make_summary(const SpaceDescriptor& space, const Int& rank,
                                  const MultiDegree& det) {
    BundleSummary b;
    b.rank = rank;
    b.det = det;
    b.degree = space.delta_L(det);
    if (rank > 0)
        b.slope = b.degree / Rat(rank);
    else
        b.slope = 0;
    return b;
}

inline BundleSummary make_summary(const SpaceDescriptor& space, const ChernData& cd) {
    return make_summary(space, cd.rank, cd.det());
}

// L-normalization: k_E = ceil(slope / d) and the summary of E(-k_E, 0, ..., 0).
// Postcondition: 1 - d*rank <= normalized degree <= 0.
inline std::pair<Int, BundleSummary> slope_and_normalize(const SpaceDescriptor& space,
                                                         const BundleSummary& b) {
    if (b.rank <= 0) throw std::invalid_argument("slope_and_normalize: rank must be positive");
    Rat d = space.degree_unit();
    if (d <= 0) throw std::invalid_argument("slope_and_normalize: ill-polarized descriptor");
    Int k = rat_ceil(b.slope / d);
    MultiDegree det = b.det;
    det[0] -= (k * b.rank).convert_to<int>();
    BundleSummary norm = make_summary(space, b.rank, det);
    if (!(-d * Rat(b.rank) < norm.degree && norm.degree <= 0))
        throw std::logic_error("slope_and_normalize: postcondition violated");
    bool integral = true;
    for (const Rat& w : space.weights())
        if (rat_den(w) != 1) integral = false;
    if (integral && !(Rat(1) - d * Rat(b.rank) <= norm.degree))
        throw std::logic_error("slope_and_normalize: integral lower bound violated");
    return {k, norm};
}

}  // namespace monadcert
