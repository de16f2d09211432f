#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "monadcert/context.hpp"
#include "monadcert/rational.hpp"

namespace monadcert {

// Finite multiset of (multidegree, multiplicity) pairs: a direct sum of line
// bundles O(d1)^(k1) + ...  Summand order is preserved as inserted; repeated
// degrees merge into the first occurrence.  Matrix rows and columns follow
// this order, copy by copy.
class LineBundleSum {
public:
    LineBundleSum() = default;
    explicit LineBundleSum(int picard_rank) : rank_l_(picard_rank) {}

    static LineBundleSum of(int picard_rank,
                            std::initializer_list<std::pair<MultiDegree, int>> items) {
        LineBundleSum s(picard_rank);
        for (const auto& [d, k] : items) s.add(d, k);
        return s;
    }

    int picard_rank() const { return rank_l_; }

    void add(const MultiDegree& d, int mult) {
        if (mult <= 0) throw std::invalid_argument("LineBundleSum: multiplicity must be positive");
        if (static_cast<int>(d.size()) != rank_l_)
            throw std::invalid_argument("LineBundleSum: degree length mismatch");
        for (auto& [deg, k] : terms_) {
            if (deg == d) {
                k += mult;
                return;
            }
        }
        terms_.emplace_back(d, mult);
    }

    bool empty() const { return terms_.empty(); }

    int rank() const {
        int r = 0;
        for (const auto& [d, k] : terms_) r += k;
        return r;
    }

    const std::vector<std::pair<MultiDegree, int>>& terms() const { return terms_; }

    LineBundleSum twisted(const MultiDegree& p) const {
        LineBundleSum s(rank_l_);
        for (const auto& [d, k] : terms_) s.terms_.emplace_back(md_add(d, p), k);
        return s;
    }

    MultiDegree det() const {
        MultiDegree c1(rank_l_, 0);
        for (const auto& [d, k] : terms_)
            for (size_t i = 0; i < c1.size(); ++i) c1[i] += k * d[i];
        return c1;
    }

    // Multiplicity-expanded list of summand degrees, in stored order.
    std::vector<MultiDegree> expanded() const {
        std::vector<MultiDegree> out;
        for (const auto& [d, k] : terms_)
            for (int i = 0; i < k; ++i) out.push_back(d);
        return out;
    }

    bool operator==(const LineBundleSum& o) const {
        return rank_l_ == o.rank_l_ && terms_ == o.terms_;
    }

private:
    int rank_l_ = 1;
    std::vector<std::pair<MultiDegree, int>> terms_;
};

// Line-bundle decomposition of the s-th exterior power: one summand per
// multiset combination of s slots, aggregated by total degree with binomial
// counts per degree class.
inline LineBundleSum exterior_summands(const LineBundleSum& S, int s) {
    if (s < 0 || s > S.rank())
        throw std::invalid_argument("exterior_summands: power out of range 0..rank");
    if (s == 1) return S;
    int l = S.picard_rank();
    // knapsack over degree classes: choose j slots from each class
    std::map<std::pair<int, MultiDegree>, Int> dp;  // (count chosen, degree) -> ways
    dp[{0, MultiDegree(l, 0)}] = 1;
    for (const auto& [d, k] : S.terms()) {
        std::map<std::pair<int, MultiDegree>, Int> next;
        for (const auto& [state, ways] : dp) {
            const auto& [cnt, deg] = state;
            for (int j = 0; j <= k && cnt + j <= s; ++j) {
                MultiDegree nd = deg;
                for (int i = 0; i < l; ++i) nd[i] += j * d[i];
                next[{cnt + j, nd}] += ways * binomial(k, j);
            }
        }
        dp = std::move(next);
    }
    LineBundleSum out(l);
    for (const auto& [state, ways] : dp) {
        if (state.first != s) continue;
        out.add(state.second, ways.convert_to<int>());
    }
    return out;
}

}  // namespace monadcert
