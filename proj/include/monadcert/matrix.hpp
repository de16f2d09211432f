#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "monadcert/polynomial.hpp"

namespace monadcert {

// Dense matrix of exact rationals (section matrices, coefficient matrices).
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols, Rat(0)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& at(int i, int j) { return e_[size_t(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return e_[size_t(i) * cols_ + j]; }

    bool operator==(const QMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    int rank() const {
        QMatrix m = *this;
        int r = 0;
        for (int c = 0; c < m.cols_ && r < m.rows_; ++c) {
            int p = -1;
            for (int i = r; i < m.rows_; ++i)
                if (m.at(i, c) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) continue;
            for (int j = 0; j < m.cols_; ++j) std::swap(m.at(r, j), m.at(p, j));
            for (int i = r + 1; i < m.rows_; ++i) {
                if (m.at(i, c) == 0) continue;
                Rat f = m.at(i, c) / m.at(r, c);
                for (int j = c; j < m.cols_; ++j) m.at(i, j) -= f * m.at(r, j);
            }
            ++r;
        }
        return r;
    }

    int kernel_dim() const { return cols_ - rank(); }

    // Basis of the right null space, reduced-echelon convention.
    std::vector<std::vector<Rat>> null_space() const {
        QMatrix m = *this;
        std::vector<int> pivot_col;
        int r = 0;
        for (int c = 0; c < m.cols_ && r < m.rows_; ++c) {
            int p = -1;
            for (int i = r; i < m.rows_; ++i)
                if (m.at(i, c) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) continue;
            for (int j = 0; j < m.cols_; ++j) std::swap(m.at(r, j), m.at(p, j));
            Rat piv = m.at(r, c);
            for (int j = 0; j < m.cols_; ++j) m.at(r, j) /= piv;
            for (int i = 0; i < m.rows_; ++i) {
                if (i == r || m.at(i, c) == 0) continue;
                Rat f = m.at(i, c);
                for (int j = 0; j < m.cols_; ++j) m.at(i, j) -= f * m.at(r, j);
            }
            pivot_col.push_back(c);
            ++r;
        }
        std::vector<std::vector<Rat>> basis;
        std::vector<bool> is_pivot(m.cols_, false);
        for (int c : pivot_col) is_pivot[c] = true;
        for (int c = 0; c < m.cols_; ++c) {
            if (is_pivot[c]) continue;
            std::vector<Rat> v(m.cols_, Rat(0));
            v[c] = 1;
            for (size_t k = 0; k < pivot_col.size(); ++k) v[pivot_col[k]] = -m.at(int(k), c);
            basis.push_back(std::move(v));
        }
        return basis;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rat> e_;
};

inline int fq_rank(std::vector<std::vector<std::uint64_t>> m, std::uint64_t q) {
    int rows = static_cast<int>(m.size());
    int cols = rows ? static_cast<int>(m[0].size()) : 0;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] % q != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        std::uint64_t inv = detail::invmod(m[r][c], q);
        for (int i = r + 1; i < rows; ++i) {
            if (m[i][c] % q == 0) continue;
            std::uint64_t f = detail::mulmod(m[i][c], inv, q);
            for (int j = c; j < cols; ++j) {
                std::uint64_t sub = detail::mulmod(f, m[r][j], q);
                m[i][j] = (m[i][j] + q - sub) % q;
            }
        }
        ++r;
    }
    return r;
}

// Matrix of polynomials.  Optionally annotated with required entry
// multidegrees derived from a (target, source) pair of degree lists: entry
// (i, j) must be multihomogeneous of degree row_deg[i] - col_deg[j].
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(VarContext ctx, int rows, int cols)
        : ctx_(ctx), rows_(rows), cols_(cols), e_(size_t(rows) * cols, Polynomial(ctx)) {}

    static PolyMatrix identity(VarContext ctx, int n) {
        PolyMatrix m(ctx, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Polynomial::constant(ctx, 1);
        return m;
    }

    const VarContext& ctx() const { return ctx_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Polynomial& at(int i, int j) { return e_[size_t(i) * cols_ + j]; }
    const Polynomial& at(int i, int j) const { return e_[size_t(i) * cols_ + j]; }

    bool operator==(const PolyMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    void set_degrees(std::vector<MultiDegree> row_degs, std::vector<MultiDegree> col_degs,
                     bool enforce = true) {
        if (static_cast<int>(row_degs.size()) != rows_ ||
            static_cast<int>(col_degs.size()) != cols_)
            throw std::invalid_argument("set_degrees: size mismatch");
        row_degs_ = std::move(row_degs);
        col_degs_ = std::move(col_degs);
        if (enforce) {
            if (auto v = degree_violation())
                throw std::invalid_argument("entry (" + std::to_string(v->first) + "," +
                                            std::to_string(v->second) +
                                            ") is not multihomogeneous of its required degree");
        }
    }

    bool has_degrees() const { return !row_degs_.empty() || rows_ == 0; }
    const std::vector<MultiDegree>& row_degrees() const { return row_degs_; }
    const std::vector<MultiDegree>& col_degrees() const { return col_degs_; }

    MultiDegree required_degree(int i, int j) const { return md_sub(row_degs_[i], col_degs_[j]); }

    // First entry violating its required multidegree, if any.
    std::optional<std::pair<int, int>> degree_violation() const {
        if (row_degs_.empty() && col_degs_.empty()) return std::nullopt;
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) {
                const Polynomial& p = at(i, j);
                if (p.is_zero()) continue;
                if (!p.is_homogeneous_of(required_degree(i, j))) return std::make_pair(i, j);
            }
        return std::nullopt;
    }

    bool is_zero() const {
        for (const auto& p : e_)
            if (!p.is_zero()) return false;
        return true;
    }

    std::optional<std::pair<int, int>> first_nonzero() const {
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero()) return std::make_pair(i, j);
        return std::nullopt;
    }

    PolyMatrix transpose() const {
        PolyMatrix t(ctx_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        if (has_degrees() && !col_degs_.empty()) {
            std::vector<MultiDegree> r, c;
            for (const auto& d : col_degs_) r.push_back(md_neg(d));
            for (const auto& d : row_degs_) c.push_back(md_neg(d));
            t.set_degrees(std::move(r), std::move(c), false);
        }
        return t;
    }

    // Rank of the scalar matrix at a point over F_q (q prime).
    int rank_at_point(const std::vector<std::uint64_t>& point, std::uint64_t q) const {
        std::vector<std::vector<std::uint64_t>> m(rows_, std::vector<std::uint64_t>(cols_, 0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m[i][j] = at(i, j).eval_mod(point, q);
        return fq_rank(std::move(m), q);
    }

    // Rank over the field of rational functions: fraction-free Bareiss
    // elimination with per-row rational content stripping.
    int rank_generic() const {
        if (rows_ == 0 || cols_ == 0) return 0;
        PolyMatrix m = *this;
        Polynomial prev = Polynomial::constant(ctx_, 1);
        int r = 0;
        for (int c = 0; c < cols_ && r < rows_; ++c) {
            // pivot: nonzero entry with fewest terms (deterministic tie-break by row)
            int p = -1;
            size_t best = 0;
            for (int i = r; i < rows_; ++i) {
                const Polynomial& cand = m.at(i, c);
                if (cand.is_zero()) continue;
                if (p < 0 || cand.term_count() < best) {
                    p = i;
                    best = cand.term_count();
                }
            }
            if (p < 0) continue;
            if (p != r)
                for (int j = 0; j < cols_; ++j) std::swap(m.at(r, j), m.at(p, j));
            const Polynomial piv = m.at(r, c);
            for (int i = r + 1; i < rows_; ++i) {
                for (int j = c + 1; j < cols_; ++j) {
                    Polynomial num = m.at(i, j) * piv - m.at(i, c) * m.at(r, j);
                    m.at(i, j) = num.is_zero() ? num : num.divide_exact(prev);
                }
                m.at(i, c) = Polynomial(ctx_);
                // content stripping: scale the row to coprime integer coefficients
                Rat cont(0);
                bool any = false;
                for (int j = c + 1; j < cols_; ++j) {
                    const Polynomial& pj = m.at(i, j);
                    if (pj.is_zero()) continue;
                    Rat pc = pj.content();
                    if (pc < 0) pc = -pc;
                    if (!any) {
                        cont = pc;
                        any = true;
                    } else {
                        cont = Rat(boost::multiprecision::gcd(rat_num(cont) * rat_den(pc),
                                                              rat_num(pc) * rat_den(cont)),
                                   rat_den(cont) * rat_den(pc));
                    }
                }
                if (any && cont != 1 && cont != 0) {
                    Rat inv = Rat(1) / cont;
                    for (int j = c + 1; j < cols_; ++j)
                        if (!m.at(i, j).is_zero()) m.at(i, j) = m.at(i, j).scaled(inv);
                }
            }
            prev = piv;
            ++r;
        }
        return r;
    }

private:
    VarContext ctx_;
    int rows_ = 0, cols_ = 0;
    std::vector<Polynomial> e_;
    std::vector<MultiDegree> row_degs_, col_degs_;
};

inline PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.ctx() != b.ctx()) throw std::invalid_argument("mat_mul: context mismatch");
    if (a.cols() != b.rows())
        throw std::invalid_argument("mat_mul: dimension mismatch (" + std::to_string(a.cols()) +
                                    " vs " + std::to_string(b.rows()) + ")");
    PolyMatrix r(a.ctx(), a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (int j = 0; j < b.cols(); ++j) {
                if (b.at(k, j).is_zero()) continue;
                r.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        }
    if (a.has_degrees() && b.has_degrees() && !a.row_degrees().empty() &&
        !b.col_degrees().empty() && a.col_degrees() == b.row_degrees()) {
        r.set_degrees(a.row_degrees(), b.col_degrees(), false);
    }
    return r;
}

}  // namespace monadcert
