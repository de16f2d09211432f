#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "monadcert/context.hpp"
#include "monadcert/rational.hpp"

namespace monadcert {

enum class SpaceKind { Projective, Product, Hirzebruch, Blowup };

// Ambient variety with Picard rank l and the polarization weights defining
// the degree functional delta_L.  Hirzebruch and blow-up descriptors carry
// only the Picard lattice arithmetic; monads and cohomology live on P^n and
// P^n x P^m.
class SpaceDescriptor {
public:
    static SpaceDescriptor projective(int n) {
        if (n < 1) throw std::invalid_argument("projective: n >= 1 required");
        SpaceDescriptor s;
        s.kind_ = SpaceKind::Projective;
        s.n_ = n;
        s.weights_ = {Rat(1)};
        return s;
    }

    // P^n x P^m with L = O(1,1); weights from expanding (h1+h2)^(n+m-1)
    // in Z[h1,h2]/(h1^(n+1), h2^(m+1)).
    static SpaceDescriptor product(int n, int m) {
        if (n < 1 || m < 1) throw std::invalid_argument("product: n, m >= 1 required");
        SpaceDescriptor s;
        s.kind_ = SpaceKind::Product;
        s.n_ = n;
        s.m_ = m;
        s.weights_ = {Rat(binomial(n + m - 1, n - 1)), Rat(binomial(n + m - 1, n))};
        return s;
    }

    // Hirzebruch surface with L = O(1, a+1): deg O(p1,p2) = p1 + p2.
    static SpaceDescriptor hirzebruch(int a) {
        if (a < 0) throw std::invalid_argument("hirzebruch: a >= 0 required");
        SpaceDescriptor s;
        s.kind_ = SpaceKind::Hirzebruch;
        s.a_ = a;
        s.weights_ = {Rat(1), Rat(1)};
        return s;
    }

    // Blow-up of the plane in l points with L = O(-1,...,-1,l+1):
    // deg O(p) = p1 + ... + pl + (l+1) p_{l+1}.
    static SpaceDescriptor blowup(int l) {
        if (l < 1) throw std::invalid_argument("blowup: l >= 1 required");
        SpaceDescriptor s;
        s.kind_ = SpaceKind::Blowup;
        s.l_ = l;
        s.weights_.assign(l, Rat(1));
        s.weights_.push_back(Rat(l + 1));
        return s;
    }

    SpaceKind kind() const { return kind_; }
    int n() const { return n_; }
    int m() const { return m_; }
    int hirzebruch_a() const { return a_; }
    int blowup_points() const { return l_; }

    int picard_rank() const { return static_cast<int>(weights_.size()); }

    bool has_cohomology() const {
        return kind_ == SpaceKind::Projective || kind_ == SpaceKind::Product;
    }

    int dim() const {
        switch (kind_) {
            case SpaceKind::Projective: return n_;
            case SpaceKind::Product: return n_ + m_;
            default: return 2;
        }
    }

    VarContext var_context() const {
        if (kind_ == SpaceKind::Projective) return VarContext(n_ + 1, 0);
        if (kind_ == SpaceKind::Product) return VarContext(n_ + 1, m_ + 1);
        throw std::invalid_argument("var_context: lattice-only descriptor has no coordinates");
    }

    const std::vector<Rat>& weights() const { return weights_; }

    Rat delta_L(const MultiDegree& p) const {
        if (p.size() != weights_.size())
            throw std::invalid_argument("delta_L: multidegree length " +
                                        std::to_string(p.size()) + ", expected " +
                                        std::to_string(weights_.size()));
        Rat acc = 0;
        for (size_t i = 0; i < p.size(); ++i) acc += weights_[i] * p[i];
        return acc;
    }

    // deg_L O(1,0,...,0); strictly positive for all four families.
    Rat degree_unit() const { return weights_[0]; }

    MultiDegree zero_degree() const { return MultiDegree(picard_rank(), 0); }

    MultiDegree unit_degree() const {
        MultiDegree d(picard_rank(), 0);
        d[0] = 1;
        return d;
    }

    std::string str() const {
        switch (kind_) {
            case SpaceKind::Projective: return "P" + std::to_string(n_);
            case SpaceKind::Product: return "P" + std::to_string(n_) + "xP" + std::to_string(m_);
            case SpaceKind::Hirzebruch: return "Hirzebruch(" + std::to_string(a_) + ")";
            case SpaceKind::Blowup: return "Blowup(" + std::to_string(l_) + ")";
        }
        return "?";
    }

    bool operator==(const SpaceDescriptor& o) const {
        return kind_ == o.kind_ && n_ == o.n_ && m_ == o.m_ && a_ == o.a_ && l_ == o.l_ &&
               weights_ == o.weights_;
    }

    // Rescales the degree functional (verdicts must not depend on this).
    SpaceDescriptor rescaled(const Rat& factor) const {
        if (factor <= 0) throw std::invalid_argument("rescaled: factor must be positive");
        SpaceDescriptor s = *this;
        for (auto& w : s.weights_) w *= factor;
        return s;
    }

private:
    SpaceKind kind_ = SpaceKind::Projective;
    int n_ = 0, m_ = 0, a_ = 0, l_ = 0;
    std::vector<Rat> weights_;
};

}  // namespace monadcert
