#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "monadcert/monad.hpp"

namespace monadcert {

namespace rng {

// splitmix64 finalizer; every sample stream is a pure function of
// (master seed, prime, sample index), so results are independent of how
// the index range is partitioned across workers.
inline std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

struct Stream {
    std::uint64_t state;
    Stream(std::uint64_t seed, std::uint64_t prime, std::uint64_t index)
        : state(mix(mix(seed ^ mix(prime)) ^ index)) {}
    std::uint64_t next() { return state = mix(state); }
};

}  // namespace rng

// Uniform projective point per block: affine cone coordinates with the
// origin rejected, scaled so the first nonzero coordinate is a unit.
inline std::vector<std::uint64_t> sample_point(rng::Stream& st, const VarContext& ctx,
                                               std::uint64_t q) {
    std::vector<std::uint64_t> pt(ctx.arity());
    auto fill_block = [&](int lo, int count) {
        for (;;) {
            bool nonzero = false;
            for (int i = lo; i < lo + count; ++i) {
                pt[i] = st.next() % q;
                nonzero = nonzero || pt[i] != 0;
            }
            if (nonzero) break;
        }
        int first = lo;
        while (pt[first] == 0) ++first;
        std::uint64_t inv = detail::invmod(pt[first], q);
        for (int i = lo; i < lo + count; ++i) pt[i] = detail::mulmod(pt[i], inv, q);
    };
    fill_block(0, ctx.nx);
    if (ctx.ny > 0) fill_block(ctx.nx, ctx.ny);
    return pt;
}

enum class SheafClass { LocallyFree, Reflexive, TorsionFree, None, Inconclusive };

inline std::string sheaf_class_str(SheafClass c) {
    switch (c) {
        case SheafClass::LocallyFree: return "locally_free";
        case SheafClass::Reflexive: return "reflexive";
        case SheafClass::TorsionFree: return "torsion_free";
        case SheafClass::None: return "none";
        case SheafClass::Inconclusive: return "inconclusive";
    }
    return "?";
}

// Exact description of a rank-drop locus when available: the coefficient
// matrix of the linear entries, its rank, and a basis of its null space.
struct ExactLocus {
    bool empty = false;
    int codim = 0;  // dim X + 1 when empty
    std::vector<std::vector<Rat>> span_basis;  // null-space basis per block, flattened
};

struct McPrimeRun {
    std::uint64_t q = 0;
    std::uint64_t samples = 0;
    std::uint64_t hits = 0;
    std::optional<int> estimate;          // round(-log_q(hit fraction)) when hits > 0
    std::optional<int> zero_hit_bound;    // largest B with confidence >= threshold
    double zero_hit_confidence_at_bound = 0.0;
    bool consistent_with_exact = true;
};

struct DegenerationReport {
    std::string method;  // "exact-linear", "monte-carlo" or "exact-linear+monte-carlo"
    std::optional<ExactLocus> exact;
    std::vector<McPrimeRun> mc;
    std::uint64_t seed = 0;
    double confidence_threshold = 1.0 - 1e-6;

    // Best supported claim "codim >= bound".
    int codim_lower_bound = 0;
    bool codim_exact = false;
    int codim = 0;  // meaningful when codim_exact

    bool locus_empty() const { return exact && exact->empty; }
};

struct McOptions {
    std::uint64_t seed = 20240601;
    std::uint64_t samples = 1000000;
    std::vector<std::uint64_t> primes = {101, 10007};
    double confidence_threshold = 1.0 - 1e-6;
    int workers = 2;  // hit counts are worker-count independent
};

namespace detail {

// Exact branch: applies when the degeneracy condition is "all entries of a
// single column (or row) vanish", i.e. the varying side has rank one, and
// every entry is linear within one block.  The locus is then a product of
// projectivized null spaces.
inline std::optional<ExactLocus> exact_linear_locus(const SpaceDescriptor& space,
                                                    const PolyMatrix& column) {
    VarContext ctx = column.ctx();
    if (column.cols() != 1) return std::nullopt;
    std::vector<std::vector<Rat>> xrows, yrows;
    for (int i = 0; i < column.rows(); ++i) {
        const Polynomial& p = column.at(i, 0);
        if (p.is_zero()) continue;
        MultiDegree d;
        try {
            d = p.multidegree();
        } catch (const std::invalid_argument&) {
            return std::nullopt;  // non-homogeneous entry
        }
        int total = 0;
        for (int v : d) total += v;
        if (total != 1) return std::nullopt;  // not linear
        std::vector<Rat> row(ctx.arity(), Rat(0));
        for (const auto& [mono, c] : p.terms()) {
            for (size_t k = 0; k < mono.size(); ++k)
                if (mono[k] == 1) row[k] = c;
        }
        if (d[0] == 1) {
            xrows.push_back(std::vector<Rat>(row.begin(), row.begin() + ctx.nx));
        } else {
            yrows.push_back(std::vector<Rat>(row.begin() + ctx.nx, row.end()));
        }
    }
    auto block = [&](const std::vector<std::vector<Rat>>& rows, int nvars) {
        QMatrix m(static_cast<int>(rows.size()), nvars);
        for (size_t i = 0; i < rows.size(); ++i)
            for (int j = 0; j < nvars; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
        return m;
    };
    QMatrix mx = block(xrows, ctx.nx);
    int rx = mx.rank();
    int ry = 0;
    QMatrix my;
    if (ctx.ny > 0) {
        my = block(yrows, ctx.ny);
        ry = my.rank();
    }
    ExactLocus loc;
    int dim_x = (ctx.nx - 1) - rx;           // projective dimension of x-factor
    int dim_y = ctx.ny > 0 ? (ctx.ny - 1) - ry : 0;
    int dimX = space.dim();
    if (dim_x < 0 || (ctx.ny > 0 && dim_y < 0)) {
        loc.empty = true;
        loc.codim = dimX + 1;
        return loc;
    }
    loc.empty = false;
    loc.codim = dimX - (dim_x + dim_y);
    for (auto& v : mx.null_space()) loc.span_basis.push_back(v);
    if (ctx.ny > 0)
        for (auto& v : my.null_space()) loc.span_basis.push_back(v);
    return loc;
}

inline double zero_hit_confidence(std::uint64_t q, std::uint64_t n, int bound) {
    // 1 - (1 - q^-B)^N
    double p = std::pow(static_cast<double>(q), -bound);
    return 1.0 - std::exp(static_cast<double>(n) * std::log1p(-p));
}

}  // namespace detail

// Degeneration locus of a map: points where the evaluated matrix drops below
// full_rank.  Exact branch for a rank-one side with per-block linear entries
// (covering the paper-scale monads); Monte Carlo sampling over two primes
// always runs as a cross-check.
namespace detail {

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::uint64_t next_prime(std::uint64_t n) {
    do {
        ++n;
    } while (!is_prime_u64(n));
    return n;
}

// Matrix entries reduced mod q once, for fast pointwise evaluation.
// Throws std::domain_error when a coefficient denominator collides with q.
struct CompiledMatrix {
    struct Term {
        std::uint64_t coeff;
        std::vector<std::pair<int, int>> vars;  // (index, exponent)
    };
    int rows = 0, cols = 0;
    std::vector<std::vector<Term>> entries;  // row-major

    CompiledMatrix(const PolyMatrix& m, std::uint64_t q) : rows(m.rows()), cols(m.cols()) {
        entries.resize(size_t(rows) * cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                auto& list = entries[size_t(i) * cols + j];
                for (const auto& [mono, c] : m.at(i, j).terms()) {
                    Term t;
                    t.coeff = rat_mod(c, q);
                    if (t.coeff == 0) continue;
                    for (size_t v = 0; v < mono.size(); ++v)
                        if (mono[v] > 0) t.vars.emplace_back(static_cast<int>(v), mono[v]);
                    list.push_back(std::move(t));
                }
            }
    }

    std::uint64_t eval(size_t idx, const std::vector<std::uint64_t>& pt, std::uint64_t q) const {
        std::uint64_t acc = 0;
        for (const Term& t : entries[idx]) {
            std::uint64_t v = t.coeff;
            for (const auto& [var, exp] : t.vars) {
                std::uint64_t base = pt[var];
                for (int e = 0; e < exp; ++e) v = mulmod(v, base, q);
            }
            acc += v;
            if (acc >= q) acc -= q;
        }
        return acc;
    }

    // In-place elimination on a caller-provided scratch grid; no allocation.
    int rank_at(const std::vector<std::uint64_t>& pt, std::uint64_t q,
                std::vector<std::vector<std::uint64_t>>& m) const {
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m[i][j] = eval(size_t(i) * cols + j, pt, q);
        int r = 0;
        for (int c = 0; c < cols && r < rows; ++c) {
            int p = -1;
            for (int i = r; i < rows; ++i)
                if (m[i][c] != 0) {
                    p = i;
                    break;
                }
            if (p < 0) continue;
            std::swap(m[r], m[p]);
            std::uint64_t inv = invmod(m[r][c], q);
            for (int i = r + 1; i < rows; ++i) {
                if (m[i][c] == 0) continue;
                std::uint64_t f = mulmod(m[i][c], inv, q);
                for (int j = c; j < cols; ++j) {
                    std::uint64_t sub = mulmod(f, m[r][j], q);
                    m[i][j] = (m[i][j] + q - sub) % q;
                }
            }
            ++r;
        }
        return r;
    }
};

}  // namespace detail

inline DegenerationReport rank_drop_locus(const SpaceDescriptor& space, const PolyMatrix& mat,
                                          int full_rank, const McOptions& opt) {
    DegenerationReport rep;
    rep.seed = opt.seed;
    rep.confidence_threshold = opt.confidence_threshold;

    int dimX = space.dim();

    if (full_rank == 0) {
        // the fiber map from (or onto) a zero-rank term never degenerates
        ExactLocus loc;
        loc.empty = true;
        loc.codim = dimX + 1;
        rep.exact = loc;
        rep.method = "exact-linear";
        rep.codim_exact = true;
        rep.codim = loc.codim;
        rep.codim_lower_bound = loc.codim;
        return rep;
    }

    // exact branch
    std::optional<ExactLocus> exact;
    if (mat.cols() == 1 && full_rank == 1) {
        exact = detail::exact_linear_locus(space, mat);
    } else if (mat.rows() == 1 && full_rank == 1) {
        exact = detail::exact_linear_locus(space, mat.transpose());
    }
    rep.exact = exact;

    VarContext ctx = mat.ctx();

    for (std::uint64_t prime : opt.primes) {
        std::uint64_t q = prime;
        std::optional<detail::CompiledMatrix> cm;
        for (;;) {  // retry with the next prime on denominator collisions
            try {
                cm.emplace(mat, q);
                break;
            } catch (const std::domain_error&) {
                q = detail::next_prime(q);
            }
        }
        McPrimeRun run;
        run.q = q;
        run.samples = opt.samples;
        std::uint64_t n = opt.samples;
        int workers = std::max(1, opt.workers);
        std::vector<std::uint64_t> hits(workers, 0);
        auto body = [&](int w) {
            std::uint64_t lo = n * std::uint64_t(w) / workers,
                          hi = n * std::uint64_t(w + 1) / workers;
            std::uint64_t h = 0;
            std::vector<std::vector<std::uint64_t>> scratch(
                mat.rows(), std::vector<std::uint64_t>(mat.cols(), 0));
            for (std::uint64_t i = lo; i < hi; ++i) {
                rng::Stream st(opt.seed, q, i);
                std::vector<std::uint64_t> pt = sample_point(st, ctx, q);
                if (cm->rank_at(pt, q, scratch) < full_rank) ++h;
            }
            hits[w] = h;
        };
        if (workers == 1) {
            body(0);
        } else {
            std::vector<std::thread> ts;
            for (int w = 0; w < workers; ++w) ts.emplace_back(body, w);
            for (auto& t : ts) t.join();
        }
        run.hits = 0;
        for (std::uint64_t h : hits) run.hits += h;
        if (run.hits > 0) {
            double frac = static_cast<double>(run.hits) / static_cast<double>(n);
            run.estimate = static_cast<int>(std::llround(-std::log(frac) / std::log(double(q))));
        } else {
            int best = 0;
            for (int b = 1; b <= dimX + 1; ++b) {
                if (detail::zero_hit_confidence(q, n, b) >= opt.confidence_threshold) best = b;
            }
            if (best > 0) {
                run.zero_hit_bound = best;
                run.zero_hit_confidence_at_bound = detail::zero_hit_confidence(q, n, best);
            }
        }
        if (exact) {
            if (run.hits > 0) {
                run.consistent_with_exact = !exact->empty && run.estimate &&
                                            *run.estimate == exact->codim;
            } else {
                // zero hits contradict exact codim c only when they were
                // overwhelmingly likely to occur
                run.consistent_with_exact =
                    exact->empty ||
                    detail::zero_hit_confidence(q, n, exact->codim) < opt.confidence_threshold;
            }
        }
        rep.mc.push_back(run);
    }

    rep.method = exact ? "exact-linear+monte-carlo" : "monte-carlo";
    if (exact) {
        rep.codim_exact = true;
        rep.codim = exact->codim;
        rep.codim_lower_bound = exact->codim;
    } else {
        int bound = 0;
        for (const auto& run : rep.mc) {
            if (run.hits > 0 && run.estimate) bound = std::max(bound, 0);
            if (run.zero_hit_bound) bound = std::max(bound, *run.zero_hit_bound);
        }
        rep.codim_lower_bound = bound;
    }
    return rep;
}

// Degeneration locus of alpha: { z : ker alpha_z != 0 }.
inline DegenerationReport degeneration_locus(const Monad& M, const McOptions& opt = {}) {
    return rank_drop_locus(M.space, M.alpha, M.m0.rank(), opt);
}

// Rank drops of beta (fiberwise surjectivity failures), analyzed identically.
inline DegenerationReport beta_drop_locus(const Monad& M, const McOptions& opt = {}) {
    return rank_drop_locus(M.space, M.beta, M.m2.rank(), opt);
}

struct Classification {
    SheafClass sheaf_class = SheafClass::Inconclusive;
    DegenerationReport alpha_locus;
    DegenerationReport beta_locus;
    bool beta_fiberwise_surjective = false;
    std::string note;
};

// Sheaf class of the monad cohomology from the codimension of the alpha
// degeneration locus: empty -> locally free, >= 3 -> reflexive,
// >= 2 -> torsion free.  A beta-locus violation is reported separately.
inline Classification classify(const Monad& M, const McOptions& opt = {}) {
    Classification out;
    out.alpha_locus = degeneration_locus(M, opt);
    out.beta_locus = beta_drop_locus(M, opt);

    int dimX = M.space.dim();
    auto empty_certified = [&](const DegenerationReport& r) {
        return r.codim_exact && r.codim >= dimX + 1;
    };
    out.beta_fiberwise_surjective = empty_certified(out.beta_locus);

    const DegenerationReport& a = out.alpha_locus;
    if (a.codim_exact) {
        if (a.codim >= dimX + 1)
            out.sheaf_class = SheafClass::LocallyFree;
        else if (a.codim >= 3)
            out.sheaf_class = SheafClass::Reflexive;
        else if (a.codim >= 2)
            out.sheaf_class = SheafClass::TorsionFree;
        else
            out.sheaf_class = SheafClass::None;
    } else {
        // MC only: demand the zero-hit bound at the stated confidence
        int bound = a.codim_lower_bound;
        bool any_hits = false;
        for (const auto& run : a.mc) any_hits = any_hits || run.hits > 0;
        if (!any_hits && bound >= dimX + 1)
            out.sheaf_class = SheafClass::LocallyFree;
        else if (!any_hits && bound >= 3)
            out.sheaf_class = SheafClass::Reflexive;
        else if (!any_hits && bound >= 2)
            out.sheaf_class = SheafClass::TorsionFree;
        else {
            out.sheaf_class = SheafClass::Inconclusive;
            out.note = "Monte Carlo evidence below the confidence threshold; not resolved";
        }
    }
    // the class verdict follows the alpha locus; a beta-locus violation is a
    // distinct validity failure, reported but not folded into the class
    if (!out.beta_fiberwise_surjective) {
        bool beta_hits = false;
        for (const auto& run : out.beta_locus.mc)
            if (run.hits > 0) beta_hits = true;
        if (beta_hits || (out.beta_locus.codim_exact && !out.beta_locus.locus_empty()))
            out.note = "beta drops rank on a nonempty locus; the classification describes the "
                       "alpha side only";
        else if (!out.beta_locus.codim_exact)
            out.note = "beta fiberwise surjectivity not certified (MC only)";
    }
    return out;
}

}  // namespace monadcert
