#pragma once

#include "orthomom/common.hpp"
#include "orthomom/exact_linalg.hpp"
#include "orthomom/gram.hpp"
#include "orthomom/moments.hpp"
#include "orthomom/pairing.hpp"
#include "orthomom/set_partition.hpp"

#include <tuple>
#include <utility>
#include <vector>

namespace orthomom {

/// A product of matrix entries of a Haar orthogonal matrix:
/// E(x_{i_1 j_1} ... x_{i_m j_m}) with 1-based indices, all within [1, n].
struct MomentQuery {
    int n = 0;
    std::vector<std::pair<int, int>> factors;  // (row, column) per position

    MomentQuery() = default;
    MomentQuery(int dim, std::vector<std::pair<int, int>> f) : n(dim), factors(std::move(f)) {
        if (n < 1) throw std::invalid_argument("MomentQuery: n >= 1 required");
        if (factors.empty()) throw std::invalid_argument("MomentQuery: at least one factor required");
        for (const auto& [i, j] : factors)
            if (i < 1 || i > n || j < 1 || j > n)
                throw std::invalid_argument("MomentQuery: index out of [1, n]");
    }

    int order() const { return static_cast<int>(factors.size()); }

    std::vector<int> rows() const {
        std::vector<int> r;
        r.reserve(factors.size());
        for (const auto& [i, j] : factors) r.push_back(i);
        return r;
    }

    std::vector<int> cols() const {
        std::vector<int> c;
        c.reserve(factors.size());
        for (const auto& [i, j] : factors) c.push_back(j);
        return c;
    }
};

/// Positions grouped by equal row index, blocks ordered by first occurrence;
/// sigma_blocks carry the column indices after the stable reordering.
struct GroupedQuery {
    SetPartition first_partition;
    std::vector<std::vector<int>> sigma_blocks;
};

inline GroupedQuery group_by_first_index(const MomentQuery& q) {
    std::vector<int> distinct_rows;
    std::vector<std::vector<int>> blocks;
    std::vector<std::vector<int>> sigmas;
    for (int pos = 1; pos <= q.order(); ++pos) {
        const auto& [row, col] = q.factors[static_cast<std::size_t>(pos - 1)];
        std::size_t b = 0;
        while (b < distinct_rows.size() && distinct_rows[b] != row) ++b;
        if (b == distinct_rows.size()) {
            distinct_rows.push_back(row);
            blocks.emplace_back();
            sigmas.emplace_back();
        }
        blocks[b].push_back(pos);
        sigmas[b].push_back(col);
    }
    return GroupedQuery{SetPartition(std::move(blocks)), std::move(sigmas)};
}

/// 1 iff the sequence is constant on every pair of p. seq is read by local
/// position: pair (a, b) compares seq[a-1] and seq[b-1].
inline int delta(const Pairing& p, const std::vector<int>& seq) {
    if (static_cast<int>(seq.size()) != p.order())
        throw std::invalid_argument("delta: sequence length does not match pairing order");
    for (const auto& [a, b] : p.pairs())
        if (seq[static_cast<std::size_t>(a - 1)] != seq[static_cast<std::size_t>(b - 1)]) return 0;
    return 1;
}

/// The factorized recipe: group by row, zero if any block has odd size, else
/// the product over blocks of (number of block pairings satisfied by the
/// block's column sequence) / P(n, k_i).
inline Rational theorem3_moment(const MomentQuery& q) {
    const GroupedQuery g = group_by_first_index(q);
    for (const auto& sigma : g.sigma_blocks)
        if (sigma.size() % 2 != 0) return Rational(0);
    Rational result = 1;
    for (const auto& sigma : g.sigma_blocks) {
        const int k = static_cast<int>(sigma.size()) / 2;
        BigInt satisfied = 0;
        for (const Pairing& p : enumerate_pairings(k)) satisfied += delta(p, sigma);
        if (satisfied == 0) return Rational(0);
        result *= Rational(satisfied, p_poly_value(k, q.n));
    }
    return result;
}

/// Exact evaluator via the normal equations over the full standard set:
/// solve G alpha = b at dimension n with b_P = delta(P, rows), then return
/// sum_Q alpha_Q delta(Q, cols). For k > n the Gram matrix is singular but
/// the system stays consistent and every solution yields the same value, so
/// any particular solution (free variables zero) is used; the pivot order is
/// exposed for order-independence checks. Odd m is zero by the sign-flip
/// symmetry of the Haar measure.
inline Rational exact_moment(const MomentQuery& q, PivotOrder order = PivotOrder::Forward) {
    const int m = q.order();
    if (m % 2 != 0) return Rational(0);
    const int k = m / 2;
    const BigInt count = odd_double_factorial(k);
    if (count * count > kDenseEntryCap)
        throw size_limit_error("exact_moment: Gram system of (2k-1)!!^2 = " + BigInt(count * count).str() +
                               " entries exceeds cap " + std::to_string(kDenseEntryCap));

    const GramMatrix g = gram_matrix(k);
    const IntMatrix a = g.evaluate(q.n);
    const std::vector<int> rows = q.rows();
    const std::vector<int> cols = q.cols();

    std::vector<BigInt> b;
    b.reserve(static_cast<std::size_t>(g.size()));
    for (const Pairing& p : g.ordering()) b.emplace_back(delta(p, rows));

    const auto alpha = solve_linear_system(a, b, order);
    if (!alpha)
        throw std::logic_error("exact_moment: normal equations inconsistent; Gram or delta data broken");

    Rational result = 0;
    for (int i = 0; i < g.size(); ++i)
        if (delta(g.ordering()[static_cast<std::size_t>(i)], cols) != 0)
            result += (*alpha)[static_cast<std::size_t>(i)];
    return result;
}

/// E(x_{i_1 j_1}^{2k_1} ... x_{i_l j_l}^{2k_l}) for pairwise distinct row
/// indices: the factorized product of (2k_t - 1)!!/P(n, k_t). A convenience
/// wrapper over theorem3_moment on the expanded query.
inline Rational corollary4_moment(int n, const std::vector<std::tuple<int, int, int>>& factors) {
    std::vector<int> seen_rows;
    std::vector<std::pair<int, int>> expanded;
    for (const auto& [i, j, exp2k] : factors) {
        for (int r : seen_rows)
            if (r == i)
                throw std::invalid_argument(
                    "corollary4_moment: repeated row index; use theorem3_moment for the general case");
        seen_rows.push_back(i);
        if (exp2k < 2 || exp2k % 2 != 0)
            throw std::invalid_argument("corollary4_moment: exponents must be positive and even");
        for (int c = 0; c < exp2k; ++c) expanded.emplace_back(i, j);
    }
    return theorem3_moment(MomentQuery(n, std::move(expanded)));
}

} // namespace orthomom
