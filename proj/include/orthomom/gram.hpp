#pragma once

#include "orthomom/common.hpp"
#include "orthomom/exact_linalg.hpp"
#include "orthomom/invariant_combination.hpp"
#include "orthomom/moments.hpp"
#include "orthomom/npolynomial.hpp"
#include "orthomom/pairing.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace orthomom {

/// <I(P), I(Q)> = n^l with l = |P v Q|, as a polynomial in n.
inline NPolynomial gram_entry(const Pairing& p, const Pairing& q) {
    return NPolynomial::monomial(join_block_count(p, q));
}

/// Gram matrix of the standard invariants over the canonical pairing order.
/// Every entry is a pure power n^l with 1 <= l <= k; only the exponents are
/// stored.
class GramMatrix {
public:
    GramMatrix(int k, std::vector<Pairing> ordering, std::vector<int> exponents)
        : k_(k), ordering_(std::move(ordering)), exponents_(std::move(exponents)) {}

    int k() const { return k_; }
    int size() const { return static_cast<int>(ordering_.size()); }
    const std::vector<Pairing>& ordering() const { return ordering_; }

    int exponent(int i, int j) const {
        return exponents_[static_cast<std::size_t>(i) * static_cast<std::size_t>(size()) +
                          static_cast<std::size_t>(j)];
    }

    NPolynomial entry(int i, int j) const { return NPolynomial::monomial(exponent(i, j)); }

    BigInt value(int i, int j, int n) const { return int_pow(n, exponent(i, j)); }

    IntMatrix evaluate(int n) const {
        const int l = size();
        IntMatrix m(static_cast<std::size_t>(l), std::vector<BigInt>(static_cast<std::size_t>(l)));
        std::vector<BigInt> powers(static_cast<std::size_t>(k_) + 1);
        for (int e = 0; e <= k_; ++e) powers[static_cast<std::size_t>(e)] = int_pow(n, e);
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j)
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    powers[static_cast<std::size_t>(exponent(i, j))];
        return m;
    }

private:
    int k_;
    std::vector<Pairing> ordering_;
    std::vector<int> exponents_;  // row-major, size()^2
};

inline GramMatrix gram_matrix(int k) {
    std::vector<Pairing> ordering = enumerate_pairings(k);
    const int l = static_cast<int>(ordering.size());
    std::vector<int> exp(static_cast<std::size_t>(l) * static_cast<std::size_t>(l));
    for (int i = 0; i < l; ++i) {
        exp[static_cast<std::size_t>(i) * static_cast<std::size_t>(l) + static_cast<std::size_t>(i)] = k;
        for (int j = i + 1; j < l; ++j) {
            const int e = join_block_count(ordering[static_cast<std::size_t>(i)],
                                           ordering[static_cast<std::size_t>(j)]);
            exp[static_cast<std::size_t>(i) * static_cast<std::size_t>(l) + static_cast<std::size_t>(j)] = e;
            exp[static_cast<std::size_t>(j) * static_cast<std::size_t>(l) + static_cast<std::size_t>(i)] = e;
        }
    }
    return GramMatrix(k, std::move(ordering), std::move(exp));
}

/// Common row sum of the Gram matrix as a polynomial in n. All rows are
/// checked to agree (a disagreement would mean the enumeration is broken,
/// hence logic_error). Works from per-row exponent histograms, so the
/// full polynomial matrix is never materialized.
inline NPolynomial gram_row_sum(int k) {
    const std::vector<Pairing> ordering = enumerate_pairings(k);
    const int l = static_cast<int>(ordering.size());
    std::vector<int> first_hist;
    for (int i = 0; i < l; ++i) {
        std::vector<int> hist(static_cast<std::size_t>(k) + 1, 0);
        for (int j = 0; j < l; ++j) {
            const int e = (i == j) ? k
                                   : join_block_count(ordering[static_cast<std::size_t>(i)],
                                                      ordering[static_cast<std::size_t>(j)]);
            ++hist[static_cast<std::size_t>(e)];
        }
        if (i == 0)
            first_hist = hist;
        else if (hist != first_hist)
            throw std::logic_error("gram_row_sum: rows disagree; pairing enumeration is broken");
    }
    NPolynomial sum;
    for (int e = 1; e <= k; ++e)
        if (first_hist[static_cast<std::size_t>(e)] != 0)
            sum += NPolynomial::monomial(e, first_hist[static_cast<std::size_t>(e)]);
    return sum;
}

/// Average of all Gram entries evaluated at n, an exact rational (equals
/// 1/mu_{k,n}).
inline Rational gram_entry_average(int k, int n) {
    const GramMatrix g = gram_matrix(k);
    const int l = g.size();
    BigInt total = 0;
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) total += g.value(i, j, n);
    return Rational(total, BigInt(l) * BigInt(l));
}

/// Greedy basis extraction in canonical pairing order: keep each pairing
/// whose dense invariant at dimension n falls outside the span of those kept
/// so far (exact rank test). For k <= n the standard set is known to be
/// independent and is returned whole.
inline std::vector<Pairing> extract_basis(int k, int n) {
    if (k < 1 || n < 1) throw std::invalid_argument("extract_basis: k >= 1, n >= 1 required");
    std::vector<Pairing> all = enumerate_pairings(k);
    if (k <= n) return all;

    std::vector<Pairing> kept;
    RowSpace space;
    for (const Pairing& p : all) {
        const DenseTensor t = standard_invariant_dense(p, n);
        std::vector<Rational> v;
        v.reserve(t.entry_count());
        for (double e : t.entries()) v.emplace_back(static_cast<long>(e));
        if (space.try_insert(std::move(v))) kept.push_back(p);
    }
    return kept;
}

/// Corollary-1 identity data: the row sums s of the inverse Gram matrix of
/// an extracted basis, and the max-abs entry difference between
/// sum_i s_i I(P_i) and mu_{k,n} A_m (both evaluated exactly at dimension n;
/// the residual is exactly zero when everything is consistent).
struct Corollary1Result {
    std::vector<Pairing> basis;
    std::vector<Rational> row_sums;
    double residual = 0;
};

inline Corollary1Result corollary1_identity(int k, int n) {
    Corollary1Result res;
    res.basis = extract_basis(k, n);
    const int b = static_cast<int>(res.basis.size());

    IntMatrix g0(static_cast<std::size_t>(b), std::vector<BigInt>(static_cast<std::size_t>(b)));
    for (int i = 0; i < b; ++i)
        for (int j = 0; j < b; ++j)
            g0[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                int_pow(n, join_block_count(res.basis[static_cast<std::size_t>(i)],
                                            res.basis[static_cast<std::size_t>(j)]));
    if (rank_exact(g0) != b)
        throw std::logic_error("corollary1_identity: basis Gram matrix singular; basis extraction broken");
    const std::vector<BigInt> ones(static_cast<std::size_t>(b), BigInt(1));
    res.row_sums = *solve_linear_system(g0, ones);

    InvariantCombination diff(2 * k);
    for (int i = 0; i < b; ++i)
        diff.add_term(res.basis[static_cast<std::size_t>(i)], res.row_sums[static_cast<std::size_t>(i)]);
    diff -= veronese_expectation(2 * k, n);  // mu_{k,n} A_m

    Rational max_abs = 0;
    for (const Rational& e : evaluate_combination_exact(diff, n))
        if (abs(e) > max_abs) max_abs = abs(e);
    res.residual = static_cast<double>(max_abs);
    return res;
}

/// Row-multiset comparison between the Gram matrix and the Kronecker product
/// M_1 x M_3 x ... x M_{2k-1}, where M_t is t-by-t with diagonal n and
/// off-diagonal 1. Each matrix row is reduced to its multiset of n-exponents.
struct Corollary2Report {
    int k = 0;
    std::vector<bool> row_ok;
    bool all_ok() const {
        for (bool b : row_ok)
            if (!b) return false;
        return true;
    }
};

inline Corollary2Report corollary2_check(int k) {
    const GramMatrix g = gram_matrix(k);
    const int l = g.size();

    // Materialize M = M_1 x M_3 x ... x M_{2k-1} as a matrix of n-exponents
    // (every entry of each M_t is n or 1, so Kronecker entries are pure
    // powers and exponents add).
    std::vector<std::vector<int>> m{{0}};
    for (int t = 1; t <= 2 * k - 1; t += 2) {
        std::vector<std::vector<int>> next(m.size() * static_cast<std::size_t>(t));
        for (std::size_t r = 0; r < m.size(); ++r)
            for (int tr = 0; tr < t; ++tr) {
                auto& row = next[r * static_cast<std::size_t>(t) + static_cast<std::size_t>(tr)];
                row.reserve(m[r].size() * static_cast<std::size_t>(t));
                for (int base : m[r])
                    for (int tc = 0; tc < t; ++tc) row.push_back(base + (tr == tc ? 1 : 0));
            }
        m = std::move(next);
    }

    std::vector<int> reference = m.front();
    std::sort(reference.begin(), reference.end());
    bool kron_rows_consistent = true;
    for (auto& row : m) {
        std::sort(row.begin(), row.end());
        if (row != reference) kron_rows_consistent = false;
    }

    Corollary2Report rep;
    rep.k = k;
    rep.row_ok.resize(static_cast<std::size_t>(l));
    for (int i = 0; i < l; ++i) {
        std::vector<int> row(static_cast<std::size_t>(l));
        for (int j = 0; j < l; ++j) row[static_cast<std::size_t>(j)] = g.exponent(i, j);
        std::sort(row.begin(), row.end());
        rep.row_ok[static_cast<std::size_t>(i)] = kron_rows_consistent && (row == reference);
    }
    return rep;
}

} // namespace orthomom
