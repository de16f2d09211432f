#pragma once

#include <optional>
#include <string>
#include <vector>

#include "monadcert/chern.hpp"
#include "monadcert/cohomology.hpp"
#include "monadcert/matrix.hpp"
#include "monadcert/parse.hpp"

namespace monadcert {

// Three-term complex M0 --alpha--> M1 --beta--> M2 of line-bundle sums over
// P^n or P^n x P^m.  Construction does not enforce validity; validate()
// reports it.
struct Monad {
    SpaceDescriptor space;
    LineBundleSum m0, m1, m2;
    PolyMatrix alpha;  // rank(m1) x rank(m0)
    PolyMatrix beta;   // rank(m2) x rank(m1)

    Monad(SpaceDescriptor sp, LineBundleSum t0, LineBundleSum t1, LineBundleSum t2,
          PolyMatrix a, PolyMatrix b)
        : space(std::move(sp)), m0(std::move(t0)), m1(std::move(t1)), m2(std::move(t2)),
          alpha(std::move(a)), beta(std::move(b)) {
        if (alpha.rows() != m1.rank() || alpha.cols() != m0.rank())
            throw std::invalid_argument("Monad: alpha shape mismatch");
        if (beta.rows() != m2.rank() || beta.cols() != m1.rank())
            throw std::invalid_argument("Monad: beta shape mismatch");
        alpha.set_degrees(m1.expanded(), m0.expanded(), /*enforce=*/false);
        beta.set_degrees(m2.expanded(), m1.expanded(), /*enforce=*/false);
    }

    Int rank_e() const { return Int(m1.rank() - m0.rank() - m2.rank()); }
    Int rank_k() const { return Int(m1.rank() - m2.rank()); }

    std::pair<ChernData, ChernData> chern() const {
        return chern_of_terms(space, m0, m1, m2);
    }

    BundleSummary summary_e() const { return make_summary(space, chern().second); }
    BundleSummary summary_k() const { return make_summary(space, chern().first); }
};

inline std::pair<ChernData, ChernData> chern_of_monad(const Monad& M) { return M.chern(); }

struct ValidationReport {
    bool degrees_homogeneous = false;
    bool complex = false;            // beta . alpha == 0
    bool alpha_injective = false;    // rank_generic(alpha) == rank(M0)
    bool beta_surjective = false;    // rank_generic(beta) == rank(M2)
    std::optional<std::pair<int, int>> degree_failure;   // entry location
    std::optional<std::pair<int, int>> complex_failure;  // first nonzero of beta.alpha

    bool ok() const { return degrees_homogeneous && complex && alpha_injective && beta_surjective; }
};

inline ValidationReport validate(const Monad& M) {
    ValidationReport r;
    r.degree_failure = M.alpha.degree_violation();
    if (!r.degree_failure) {
        if (auto v = M.beta.degree_violation()) r.degree_failure = v;
    }
    r.degrees_homogeneous = !r.degree_failure.has_value();
    PolyMatrix prod = mat_mul(M.beta, M.alpha);
    r.complex_failure = prod.first_nonzero();
    r.complex = !r.complex_failure.has_value();
    r.alpha_injective = M.alpha.rank_generic() == M.m0.rank();
    r.beta_surjective = M.beta.rank_generic() == M.m2.rank();
    return r;
}

// ADHM-style data for product monads: alpha = (A; B), beta = (C D) with
// block degrees A: (1,0), B: (0,1), C: (0,1), D: (1,0) and CA + DB = 0.
struct AdhmData {
    int a, b, c;
    PolyMatrix A;  // b x a
    PolyMatrix B;  // c x a
    PolyMatrix C;  // a x b
    PolyMatrix D;  // a x c
};

struct AdhmConstraintError : std::runtime_error {
    PolyMatrix residual;
    explicit AdhmConstraintError(PolyMatrix res)
        : std::runtime_error("ADHM constraint violated: CA + DB != 0"), residual(std::move(res)) {}
};

// Builds O(-1,0)^a -> O^b + O(-1,1)^c -> O(0,1)^a on P^n x P^m.
inline Monad from_adhm(const SpaceDescriptor& space, const AdhmData& d) {
    if (space.kind() != SpaceKind::Product)
        throw std::invalid_argument("from_adhm: product space required");
    if (d.A.rows() != d.b || d.A.cols() != d.a || d.B.rows() != d.c || d.B.cols() != d.a ||
        d.C.rows() != d.a || d.C.cols() != d.b || d.D.rows() != d.a || d.D.cols() != d.c)
        throw std::invalid_argument("from_adhm: block shape mismatch");
    VarContext ctx = space.var_context();
    PolyMatrix residual = mat_mul(d.C, d.A);
    PolyMatrix db = mat_mul(d.D, d.B);
    for (int i = 0; i < d.a; ++i)
        for (int j = 0; j < d.a; ++j) residual.at(i, j) += db.at(i, j);
    if (!residual.is_zero()) throw AdhmConstraintError(residual);

    LineBundleSum m0(2), m1(2), m2(2);
    if (d.a > 0) m0.add({-1, 0}, d.a);
    if (d.b > 0) m1.add({0, 0}, d.b);
    if (d.c > 0) m1.add({-1, 1}, d.c);
    if (d.a > 0) m2.add({0, 1}, d.a);

    PolyMatrix alpha(ctx, d.b + d.c, d.a);
    for (int i = 0; i < d.b; ++i)
        for (int j = 0; j < d.a; ++j) alpha.at(i, j) = d.A.at(i, j);
    for (int i = 0; i < d.c; ++i)
        for (int j = 0; j < d.a; ++j) alpha.at(d.b + i, j) = d.B.at(i, j);
    PolyMatrix beta(ctx, d.a, d.b + d.c);
    for (int i = 0; i < d.a; ++i) {
        for (int j = 0; j < d.b; ++j) beta.at(i, j) = d.C.at(i, j);
        for (int j = 0; j < d.c; ++j) beta.at(i, d.b + j) = d.D.at(i, j);
    }
    Monad M(space, m0, m1, m2, alpha, beta);
    if (M.alpha.degree_violation())
        throw std::invalid_argument("from_adhm: A/B block entry of wrong degree");
    if (M.beta.degree_violation())
        throw std::invalid_argument("from_adhm: C/D block entry of wrong degree");
    return M;
}

// Matrix of the induced map H^0(src(twist)) -> H^0(dst(twist)) on monomial
// bases; rows and columns are indexed by (summand copy, monomial), monomials
// in descending lexicographic order, x-block before y-block.
inline QMatrix section_matrix(const SpaceDescriptor& space, const LineBundleSum& src,
                              const LineBundleSum& dst, const PolyMatrix& mat,
                              const MultiDegree& twist) {
    VarContext ctx = space.var_context();
    std::vector<MultiDegree> sdeg = src.expanded(), ddeg = dst.expanded();
    if (mat.rows() != static_cast<int>(ddeg.size()) || mat.cols() != static_cast<int>(sdeg.size()))
        throw std::invalid_argument("section_matrix: matrix shape mismatch");

    std::vector<std::vector<Monomial>> sbasis, dbasis;
    std::vector<int> soff{0}, doff{0};
    for (const auto& d : sdeg) {
        sbasis.push_back(monomials_of_multidegree(ctx, md_add(d, twist)));
        soff.push_back(soff.back() + static_cast<int>(sbasis.back().size()));
    }
    for (const auto& d : ddeg) {
        dbasis.push_back(monomials_of_multidegree(ctx, md_add(d, twist)));
        doff.push_back(doff.back() + static_cast<int>(dbasis.back().size()));
    }
    QMatrix out(doff.back(), soff.back());
    for (int bi = 0; bi < mat.rows(); ++bi) {
        if (dbasis[bi].empty()) continue;
        // index of each target monomial within its block
        std::map<Monomial, int> dindex;
        for (size_t t = 0; t < dbasis[bi].size(); ++t) dindex[dbasis[bi][t]] = static_cast<int>(t);
        for (int bj = 0; bj < mat.cols(); ++bj) {
            const Polynomial& f = mat.at(bi, bj);
            if (f.is_zero() || sbasis[bj].empty()) continue;
            for (size_t s = 0; s < sbasis[bj].size(); ++s) {
                for (const auto& [mono, coef] : f.terms()) {
                    Monomial target(mono.size());
                    for (size_t k = 0; k < mono.size(); ++k)
                        target[k] = mono[k] + sbasis[bj][s][k];
                    auto it = dindex.find(target);
                    if (it == dindex.end())
                        throw std::logic_error("section_matrix: entry degree inconsistent");
                    out.at(doff[bi] + it->second, soff[bj] + static_cast<int>(s)) += coef;
                }
            }
        }
    }
    return out;
}

enum class MonadMap { Alpha, Beta };

inline QMatrix section_map(const Monad& M, MonadMap which, const MultiDegree& twist) {
    if (which == MonadMap::Alpha) return section_matrix(M.space, M.m0, M.m1, M.alpha, twist);
    return section_matrix(M.space, M.m1, M.m2, M.beta, twist);
}

// h^0(K(twist)) with K = ker beta: sections of M1(twist) killed by beta.
inline long long h0_kernel_bundle(const Monad& M, const MultiDegree& twist) {
    return section_map(M, MonadMap::Beta, twist).kernel_dim();
}

// --- h^1 obstruction closure -------------------------------------------------
//
// For E = K / im(alpha), sections of E(q) are controlled by
//   0 -> coker(H0 alpha) -> H0(E(q)) -> ker(H1(M0(q)) -> H1(K(q))) -> 0
// and ker(H1 M0 -> H1 K) embeds into ker(H1 M0 -> H1 M1) whenever it is
// nonzero.  On products, H1 of a line bundle lives on Kunneth branches where
// one factor is a P^1; multiplication by the pure-degree block of alpha acts
// as (block multiplication) (x) id there, so full generic column rank of that
// block makes H1(alpha) injective at every twist of the branch at once.
struct H1Closure {
    bool closed = false;      // H1(M0(q)) -> H1(M1(q)) injective for all q
    bool trivial = false;     // no twist has h^1(M0(q)) != 0 at all
    std::string detail;
};

namespace detail {

// Extracts the sub-block of alpha with pure block-degree entries: rows whose
// degree differs from the (single) source degree only in the given block.
inline PolyMatrix pure_block(const Monad& M, int block) {
    std::vector<MultiDegree> rows = M.m1.expanded();
    MultiDegree src = M.m0.expanded().front();
    std::vector<int> keep;
    for (size_t i = 0; i < rows.size(); ++i) {
        MultiDegree d = md_sub(rows[i], src);
        bool pure = true;
        for (size_t b = 0; b < d.size(); ++b) {
            if (static_cast<int>(b) == block) {
                if (d[b] < 0) pure = false;
            } else if (d[b] != 0) {
                pure = false;
            }
        }
        if (pure) keep.push_back(static_cast<int>(i));
    }
    PolyMatrix sub(M.alpha.ctx(), static_cast<int>(keep.size()), M.alpha.cols());
    for (size_t r = 0; r < keep.size(); ++r)
        for (int c = 0; c < M.alpha.cols(); ++c) sub.at(static_cast<int>(r), c) = M.alpha.at(keep[r], c);
    return sub;
}

}  // namespace detail

inline H1Closure h1_alpha_closure(const Monad& M) {
    H1Closure out;
    if (M.m0.empty()) {
        out.closed = true;
        out.trivial = true;
        out.detail = "no first term";
        return out;
    }
    if (M.space.kind() == SpaceKind::Projective) {
        if (M.space.n() >= 2) {
            out.closed = true;
            out.trivial = true;
            out.detail = "line bundles on P^n (n >= 2) have no h^1";
        } else {
            out.detail = "h^1 branch on P^1 not closed";
        }
        return out;
    }
    // product case
    if (M.space.n() >= 2 && M.space.m() >= 2) {
        out.closed = true;
        out.trivial = true;
        out.detail = "both factors have dimension >= 2, no h^1 branches";
        return out;
    }
    if (M.m0.terms().size() > 1) {
        out.detail = "multiple source degree classes; branch argument not applicable";
        return out;
    }
    // For the m = 1 branch (second factor a line), the obstruction H1 factors
    // through multiplication by the pure first-block entries of alpha, and
    // symmetrically for n = 1.
    bool ok = true;
    std::string why;
    if (M.space.m() == 1) {
        PolyMatrix sub = detail::pure_block(M, 0);
        if (sub.rank_generic() != M.m0.rank()) {
            ok = false;
            why = "pure x-degree block of alpha is column-rank deficient";
        }
    }
    if (ok && M.space.n() == 1) {
        PolyMatrix sub = detail::pure_block(M, 1);
        if (sub.rank_generic() != M.m0.rank()) {
            ok = false;
            why = "pure y-degree block of alpha is column-rank deficient";
        }
    }
    out.closed = ok;
    out.detail = ok ? "pure-degree blocks of alpha have full generic column rank" : why;
    return out;
}

// --- sections of the cohomology sheaf ---------------------------------------

struct H0Result {
    bool exact = false;
    long long value = 0;  // exact value when exact
    long long lo = 0, hi = 0;  // interval otherwise
    std::string method;
};

// h^0(E(twist)) for E = ker beta / im alpha.  Exact when h^1(M0(twist)) = 0
// or when the h^1 obstruction is closed for this monad; otherwise the
// interval [max(0, h0K - h0M0), h0K + h1M0].
inline H0Result h0_cohomology_bundle(const Monad& M, const MultiDegree& twist) {
    H0Result r;
    long long h0k = h0_kernel_bundle(M, twist);
    long long rank_alpha = section_map(M, MonadMap::Alpha, twist).rank();
    CohomVector a = sum_cohomology(M.space, M.m0, twist);
    long long h1a = a.size() > 1 ? a[1] : 0;
    if (h1a == 0) {
        r.exact = true;
        r.value = h0k - rank_alpha;
        r.method = "h1 of first term vanishes at this twist";
        return r;
    }
    H1Closure cl = h1_alpha_closure(M);
    if (cl.closed) {
        r.exact = true;
        r.value = h0k - rank_alpha;
        r.method = "h1 obstruction closed: " + cl.detail;
        return r;
    }
    r.exact = false;
    r.lo = std::max(0LL, h0k - a[0]);
    r.hi = h0k + h1a;
    r.method = "interval bound (h1 of first term may obstruct)";
    return r;
}

}  // namespace monadcert
