#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace monadcert {

// Multidegree on a Picard lattice Z^l (l = 1 for cyclic spaces).
using MultiDegree = std::vector<int>;

inline MultiDegree md_add(const MultiDegree& a, const MultiDegree& b) {
    if (a.size() != b.size()) throw std::invalid_argument("multidegree length mismatch");
    MultiDegree r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline MultiDegree md_sub(const MultiDegree& a, const MultiDegree& b) {
    if (a.size() != b.size()) throw std::invalid_argument("multidegree length mismatch");
    MultiDegree r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline MultiDegree md_neg(const MultiDegree& a) {
    MultiDegree r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline MultiDegree md_scale(int k, const MultiDegree& a) {
    MultiDegree r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = k * a[i];
    return r;
}

// Componentwise a <= b.
inline bool md_leq(const MultiDegree& a, const MultiDegree& b) {
    if (a.size() != b.size()) throw std::invalid_argument("multidegree length mismatch");
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline std::string md_str(const MultiDegree& a) {
    std::string s = "(";
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a[i]);
    }
    return s + ")";
}

// Variable context: one or two blocks of homogeneous coordinates.
// Block 0 has nx = n+1 variables x0..xn; block 1 (when present) has
// ny = m+1 variables y0..ym.  In the single-block case the letter
// 'z' aliases 'x'.
struct VarContext {
    int nx = 0;
    int ny = 0;

    VarContext() = default;
    VarContext(int nx_, int ny_) : nx(nx_), ny(ny_) {
        if (nx < 2) throw std::invalid_argument("VarContext: need at least two x-variables");
        if (ny == 1) throw std::invalid_argument("VarContext: second block needs at least two variables");
    }

    int arity() const { return nx + ny; }
    int blocks() const { return ny > 0 ? 2 : 1; }

    bool operator==(const VarContext& o) const { return nx == o.nx && ny == o.ny; }
    bool operator!=(const VarContext& o) const { return !(*this == o); }

    std::string var_name(int i) const {
        if (i < nx) return "x" + std::to_string(i);
        return "y" + std::to_string(i - nx);
    }
};

// Exponent vector over a VarContext, length = arity.
using Monomial = std::vector<int>;

inline int mono_total_degree(const Monomial& m) {
    return std::accumulate(m.begin(), m.end(), 0);
}

inline MultiDegree mono_multidegree(const VarContext& ctx, const Monomial& m) {
    MultiDegree d(ctx.blocks(), 0);
    for (int i = 0; i < ctx.nx; ++i) d[0] += m[i];
    for (int i = ctx.nx; i < ctx.arity(); ++i) d[1] += m[i];
    return d;
}

// Term order: graded lexicographic, x-block before y-block, larger first.
struct MonoOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = mono_total_degree(a), db = mono_total_degree(b);
        if (da != db) return da > db;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

namespace detail {
inline void monomials_rec(std::vector<Monomial>& out, Monomial& cur, int pos, int end, int left) {
    if (pos == end - 1) {
        cur[pos] = left;
        out.push_back(cur);
        cur[pos] = 0;
        return;
    }
    for (int e = left; e >= 0; --e) {
        cur[pos] = e;
        monomials_rec(out, cur, pos + 1, end, left - e);
    }
    cur[pos] = 0;
}
}  // namespace detail

// All monomials of the given multidegree, in descending lexicographic order
// (x0^d first).  Empty when any block degree is negative.
inline std::vector<Monomial> monomials_of_multidegree(const VarContext& ctx, const MultiDegree& d) {
    if (static_cast<int>(d.size()) != ctx.blocks())
        throw std::invalid_argument("monomials_of_multidegree: wrong multidegree length");
    std::vector<Monomial> out;
    for (int v : d)
        if (v < 0) return out;
    std::vector<Monomial> xs;
    Monomial cur(ctx.arity(), 0);
    detail::monomials_rec(xs, cur, 0, ctx.nx, d[0]);
    if (ctx.blocks() == 1) return xs;
    std::vector<Monomial> out2;
    for (const Monomial& mx : xs) {
        std::vector<Monomial> ys;
        Monomial c2 = mx;
        detail::monomials_rec(ys, c2, ctx.nx, ctx.arity(), d[1]);
        for (auto& my : ys) out2.push_back(my);
    }
    return out2;
}

}  // namespace monadcert
