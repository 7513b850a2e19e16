#pragma once

#include "orthomom/common.hpp"
#include "orthomom/dense_tensor.hpp"
#include "orthomom/pairing.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

namespace orthomom {

/// Formal linear combination of pairings of {1,...,m} with exact rational
/// coefficients. Zero coefficients are never stored; the zero combination of
/// a given order has an empty term map.
class InvariantCombination {
public:
    explicit InvariantCombination(int order) : order_(order) {
        if (order < 1) throw std::invalid_argument("InvariantCombination: order >= 1 required");
    }

    int order() const { return order_; }
    const std::map<Pairing, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Pairing& p, const Rational& coeff) {
        if (p.order() != order_)
            throw std::invalid_argument("InvariantCombination: pairing of wrong order");
        if (coeff == 0) return;
        auto it = terms_.find(p);
        if (it == terms_.end()) {
            terms_.emplace(p, coeff);
        } else {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    InvariantCombination& operator-=(const InvariantCombination& o) {
        if (o.order_ != order_)
            throw std::invalid_argument("InvariantCombination: order mismatch");
        for (const auto& [p, c] : o.terms_) add_term(p, -c);
        return *this;
    }

private:
    int order_;
    std::map<Pairing, Rational> terms_;
};

/// The alternating relation sum over permutations of the even-numbered
/// positions: sigma runs over the choices in sigma_subset (all k! by
/// default), each contributing sign(sigma) * (sigma applied to
/// P_0 = (1,2)(3,4)...(2k-1,2k)). Permutations must fix odd positions and
/// map even positions to even positions. The result evaluates dense to the
/// zero tensor exactly when k > n.
inline InvariantCombination sft_relation(
    int k, const std::optional<std::vector<IndexPermutation>>& sigma_subset = std::nullopt) {
    if (k < 2) throw std::invalid_argument("sft_relation: k >= 2 required");
    const int m = 2 * k;
    const Pairing base = Pairing::nested_baseline(k);

    std::vector<IndexPermutation> sigmas;
    if (sigma_subset) {
        for (const auto& s : *sigma_subset) {
            if (s.size() != m) throw std::invalid_argument("sft_relation: permutation of wrong size");
            for (int t = 1; t <= m; t += 2)
                if (s(t) != t) throw std::invalid_argument("sft_relation: permutation must fix odd positions");
            for (int t = 2; t <= m; t += 2)
                if (s(t) % 2 != 0)
                    throw std::invalid_argument("sft_relation: permutation must preserve even positions");
        }
        sigmas = *sigma_subset;
    } else {
        std::vector<int> evens(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) evens[static_cast<std::size_t>(i)] = 2 * (i + 1);
        std::vector<int> arrangement = evens;
        do {
            std::vector<int> img(static_cast<std::size_t>(m));
            std::iota(img.begin(), img.end(), 1);
            for (int i = 0; i < k; ++i)
                img[static_cast<std::size_t>(evens[static_cast<std::size_t>(i)] - 1)] =
                    arrangement[static_cast<std::size_t>(i)];
            sigmas.emplace_back(std::move(img));
        } while (std::next_permutation(arrangement.begin(), arrangement.end()));
    }

    InvariantCombination rel(m);
    for (const auto& sigma : sigmas)
        rel.add_term(apply_permutation(sigma, base), Rational(permutation_sign(sigma)));
    return rel;
}

/// Sum of coeff * I(P) as an explicit dense tensor at dimension n.
inline DenseTensor evaluate_combination_dense(const InvariantCombination& c, int n) {
    DenseTensor acc(n, c.order());
    for (const auto& [p, coeff] : c.terms()) {
        const DenseTensor t = standard_invariant_dense(p, n);
        const double w = static_cast<double>(coeff);
        auto& e = acc.entries();
        const auto& te = t.entries();
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += w * te[i];
    }
    return acc;
}

/// Same evaluation with exact rational entries (flat, row-major).
inline std::vector<Rational> evaluate_combination_exact(const InvariantCombination& c, int n) {
    const int m = c.order();
    std::int64_t count = 1;
    for (int i = 0; i < m; ++i) {
        count *= n;
        if (count > kDenseEntryCap)
            throw size_limit_error("evaluate_combination_exact: n^m exceeds entry cap " +
                                   std::to_string(kDenseEntryCap));
    }
    std::vector<Rational> acc(static_cast<std::size_t>(count), Rational(0));
    for (const auto& [p, coeff] : c.terms()) {
        const DenseTensor t = standard_invariant_dense(p, n);
        const auto& te = t.entries();
        for (std::size_t i = 0; i < te.size(); ++i)
            if (te[i] != 0.0) acc[i] += coeff;
    }
    return acc;
}

} // namespace orthomom
