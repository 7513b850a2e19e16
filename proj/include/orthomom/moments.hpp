#pragma once

#include "orthomom/common.hpp"
#include "orthomom/dense_tensor.hpp"
#include "orthomom/invariant_combination.hpp"
#include "orthomom/npolynomial.hpp"
#include "orthomom/pairing.hpp"
#include "orthomom/set_partition.hpp"

#include <vector>

namespace orthomom {

/// P(n,k) = n(n+2)(n+4)...(n+2k-2), expanded.
inline NPolynomial p_poly(int k) {
    if (k < 1) throw std::invalid_argument("p_poly: k >= 1 required");
    NPolynomial r = NPolynomial::constant(1);
    for (int t = 0; t < k; ++t) {
        NPolynomial factor = NPolynomial::monomial(1);
        factor += NPolynomial::constant(2 * t);
        r = r * factor;
    }
    return r;
}

inline BigInt p_poly_value(int k, int n) { return p_poly(k).evaluate(n); }

/// mu_{k,n} = E(<x,y>^{2k}) = (2k-1)!! / P(n,k) for independent uniform unit
/// vectors x, y.
inline Rational mu(int k, int n) {
    if (k < 1 || n < 1) throw std::invalid_argument("mu: k >= 1 and n >= 1 required");
    return Rational(odd_double_factorial(k), p_poly_value(k, n));
}

/// E(x^{tensor m}) as a combination of standard invariants: zero for odd m,
/// otherwise every pairing of {1,...,m} with coefficient 1/P(n,k), m = 2k.
inline InvariantCombination veronese_expectation(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("veronese_expectation: m >= 1, n >= 1 required");
    InvariantCombination c(m);
    if (m % 2 != 0) return c;
    const int k = m / 2;
    const Rational coeff(1, p_poly_value(k, n));
    for (const Pairing& p : enumerate_pairings(k)) c.add_term(p, coeff);
    return c;
}

/// Exact expectation of a generalized Veronese tensor: independent unit
/// vectors placed into the blocks of a partition. Zero when any block has
/// odd size; otherwise scalar * (1/|Pi|) * sum over per-block pairing tuples,
/// with the pairings of block t given over local positions {1,...,|J_t|}.
struct GeneralizedExpectation {
    SetPartition partition;
    Rational scalar = 0;  // prod over blocks of (2k_i - 1)!! / P(n, k_i); 0 encodes the zero value
    std::vector<std::vector<Pairing>> block_pairings;

    bool is_zero() const { return scalar == 0; }

    BigInt term_count() const {
        BigInt c = 1;
        for (const auto& bp : block_pairings) c *= static_cast<int>(bp.size());
        return c;
    }
};

inline GeneralizedExpectation generalized_expectation(const SetPartition& partition, int n) {
    GeneralizedExpectation ge;
    ge.partition = partition;
    for (const auto& block : partition.blocks())
        if (block.size() % 2 != 0) return ge;  // odd block: expectation is zero
    ge.scalar = 1;
    for (const auto& block : partition.blocks()) {
        const int k = static_cast<int>(block.size()) / 2;
        ge.scalar *= Rational(odd_double_factorial(k), p_poly_value(k, n));
        ge.block_pairings.push_back(enumerate_pairings(k));
    }
    return ge;
}

/// Dense materialization of a generalized expectation at dimension n. Entry
/// at (i_1,...,i_m) factorizes over blocks: for block t with positions J_t,
/// the factor is (number of pairings of J_t on which the sub-tuple is
/// constant) / P(n, k_t).
inline DenseTensor generalized_expectation_dense(const GeneralizedExpectation& ge, int n) {
    const int m = ge.partition.ground_size();
    DenseTensor t(n, m);
    if (ge.is_zero()) return t;

    const auto& blocks = ge.partition.blocks();
    std::vector<Rational> denoms;
    for (const auto& block : blocks)
        denoms.emplace_back(1, p_poly_value(static_cast<int>(block.size()) / 2, n));

    std::vector<int> idx(static_cast<std::size_t>(m), 1);
    std::size_t f = 0;
    do {
        Rational entry = 1;
        for (std::size_t b = 0; b < blocks.size() && entry != 0; ++b) {
            int satisfied = 0;
            for (const Pairing& p : ge.block_pairings[b]) {
                bool ok = true;
                for (const auto& [a, c] : p.pairs()) {
                    const int ga = blocks[b][static_cast<std::size_t>(a - 1)];
                    const int gc = blocks[b][static_cast<std::size_t>(c - 1)];
                    if (idx[static_cast<std::size_t>(ga - 1)] != idx[static_cast<std::size_t>(gc - 1)]) {
                        ok = false;
                        break;
                    }
                }
                if (ok) ++satisfied;
            }
            entry *= satisfied * denoms[b];
        }
        t.entries()[f++] = static_cast<double>(entry);
    } while (next_index_tuple(idx, n));
    return t;
}

/// E(<x(P), y(Q)>) = n^{-(2k - |P v Q|)} for generalized Veronese tensors
/// built from independent unit vectors.
inline Rational pair_moment_cor3(const Pairing& p, const Pairing& q, int n) {
    if (p.order() != q.order())
        throw std::invalid_argument("pair_moment_cor3: pairings of different order");
    const int l = join_block_count(p, q);
    const int exponent = p.order() - l;  // 2k - l
    return Rational(1, int_pow(n, exponent));
}

} // namespace orthomom
