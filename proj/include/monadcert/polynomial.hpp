#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "monadcert/context.hpp"
#include "monadcert/rational.hpp"

namespace monadcert {

// Multihomogeneous polynomial with exact rational coefficients in up to two
// blocks of projective variables.  Zero coefficients are never stored.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rat, MonoOrder>;

    Polynomial() = default;
    explicit Polynomial(VarContext ctx) : ctx_(ctx) {}

    static Polynomial constant(VarContext ctx, const Rat& c) {
        Polynomial p(ctx);
        if (c != 0) p.terms_[Monomial(ctx.arity(), 0)] = c;
        return p;
    }

    static Polynomial variable(VarContext ctx, int index, const Rat& c = 1) {
        if (index < 0 || index >= ctx.arity())
            throw std::invalid_argument("Polynomial::variable: index out of range");
        Polynomial p(ctx);
        if (c != 0) {
            Monomial m(ctx.arity(), 0);
            m[index] = 1;
            p.terms_[m] = c;
        }
        return p;
    }

    const VarContext& ctx() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    void add_term(const Monomial& m, const Rat& c) {
        if (static_cast<int>(m.size()) != ctx_.arity())
            throw std::invalid_argument("Polynomial::add_term: arity mismatch");
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (c != 0) terms_[m] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_ctx(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check_ctx(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    Polynomial operator-() const {
        Polynomial r(ctx_);
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_ctx(b);
        Polynomial r(a.ctx_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(ma.size());
                for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }

    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial scaled(const Rat& c) const {
        Polynomial r(ctx_);
        if (c != 0)
            for (const auto& [m, k] : terms_) r.terms_[m] = k * c;
        return r;
    }

    bool operator==(const Polynomial& o) const { return ctx_ == o.ctx_ && terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    // Common multidegree of all terms.  Throws on the zero polynomial and on
    // non-homogeneous input (message lists the two conflicting degrees).
    MultiDegree multidegree() const {
        if (terms_.empty()) throw std::invalid_argument("multidegree: zero polynomial");
        MultiDegree d = mono_multidegree(ctx_, terms_.begin()->first);
        for (const auto& [m, c] : terms_) {
            MultiDegree e = mono_multidegree(ctx_, m);
            if (e != d)
                throw std::invalid_argument("multidegree: non-homogeneous polynomial, degrees " +
                                            md_str(d) + " vs " + md_str(e));
        }
        return d;
    }

    bool is_homogeneous_of(const MultiDegree& d) const {
        for (const auto& [m, c] : terms_)
            if (mono_multidegree(ctx_, m) != d) return false;
        return true;
    }

    // Largest term in the monomial order.
    std::pair<Monomial, Rat> leading_term() const {
        if (terms_.empty()) throw std::logic_error("leading_term: zero polynomial");
        return *terms_.begin();
    }

    // gcd(numerators)/lcm(denominators), sign chosen so the leading
    // coefficient of (*this)/content is positive.
    Rat content() const {
        if (terms_.empty()) return Rat(0);
        Int g = 0, l = 1;
        for (const auto& [m, c] : terms_) {
            g = boost::multiprecision::gcd(g, boost::multiprecision::abs(rat_num(c)));
            l = boost::multiprecision::lcm(l, rat_den(c));
        }
        Rat r(g, l);
        if (terms_.begin()->second < 0) r = -r;
        return r;
    }

    // Exact quotient (*this)/d.  Throws when d does not divide exactly.
    Polynomial divide_exact(const Polynomial& d) const {
        check_ctx(d);
        if (d.is_zero()) throw std::invalid_argument("divide_exact: division by zero");
        Polynomial rem = *this;
        Polynomial quo(ctx_);
        auto [dm, dc] = d.leading_term();
        while (!rem.is_zero()) {
            auto [rm, rc] = rem.leading_term();
            Monomial q(rm.size());
            for (size_t i = 0; i < q.size(); ++i) {
                q[i] = rm[i] - dm[i];
                if (q[i] < 0) throw std::logic_error("divide_exact: not divisible");
            }
            Rat qc = rc / dc;
            Polynomial t(ctx_);
            t.terms_[q] = qc;
            quo += t;
            rem -= t * d;  // leading term cancels; grlex is a well-order, so this terminates
        }
        return quo;
    }

    // Evaluation at a point with coordinates in F_q.  Throws when a
    // coefficient denominator is not invertible mod q.
    std::uint64_t eval_mod(const std::vector<std::uint64_t>& point, std::uint64_t q) const;

    std::string str() const;

private:
    void check_ctx(const Polynomial& o) const {
        if (ctx_ != o.ctx_) throw std::invalid_argument("polynomial context mismatch");
    }

    VarContext ctx_;
    TermMap terms_;
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % q);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t q) {
    std::uint64_t r = 1 % q;
    b %= q;
    while (e) {
        if (e & 1) r = mulmod(r, b, q);
        b = mulmod(b, b, q);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t q) {
    a %= q;
    if (a == 0) throw std::domain_error("invmod: not invertible");
    // extended Euclid; q prime
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(q), nr = static_cast<std::int64_t>(a);
    while (nr != 0) {
        std::int64_t quo = r / nr;
        std::int64_t tmp = t - quo * nt;
        t = nt;
        nt = tmp;
        tmp = r - quo * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(q);
    return static_cast<std::uint64_t>(t);
}

inline std::uint64_t int_mod(const Int& v, std::uint64_t q) {
    Int m = v % Int(q);
    if (m < 0) m += q;
    return m.convert_to<std::uint64_t>();
}

inline std::uint64_t rat_mod(const Rat& r, std::uint64_t q) {
    std::uint64_t den = int_mod(rat_den(r), q);
    if (den == 0) throw std::domain_error("denominator not invertible mod " + std::to_string(q));
    return mulmod(int_mod(rat_num(r), q), invmod(den, q), q);
}

}  // namespace detail

inline std::uint64_t Polynomial::eval_mod(const std::vector<std::uint64_t>& point,
                                          std::uint64_t q) const {
    if (static_cast<int>(point.size()) != ctx_.arity())
        throw std::invalid_argument("eval_mod: point arity mismatch");
    std::uint64_t acc = 0;
    for (const auto& [m, c] : terms_) {
        std::uint64_t t = detail::rat_mod(c, q);
        for (size_t i = 0; i < m.size(); ++i) {
            for (int e = 0; e < m[i]; ++e) t = detail::mulmod(t, point[i] % q, q);
        }
        acc = (acc + t) % q;
    }
    return acc;
}

inline std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool unit = (a == 1);
        bool has_var = mono_total_degree(m) > 0;
        if (!unit || !has_var) os << rat_str(a);
        bool need_star = !unit || !has_var;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (need_star) os << "*";
            need_star = true;
            os << ctx_.var_name(static_cast<int>(i));
            if (m[i] > 1) os << "^" << m[i];
        }
    }
    return os.str();
}

}  // namespace monadcert
