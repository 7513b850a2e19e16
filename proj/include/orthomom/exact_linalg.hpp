#pragma once

#include "orthomom/common.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace orthomom {

using IntMatrix = std::vector<std::vector<BigInt>>;

/// Column-selection order during elimination. Solutions of singular
/// consistent systems depend on it; callers that must be order-independent
/// verify against both.
enum class PivotOrder { Forward, Reverse };

/// Exact solution of A x = b over the rationals by fraction-free (Bareiss)
/// elimination with row and column pivoting. Rank-deficient systems get free
/// variables set to zero; returns nullopt when the system is inconsistent.
inline std::optional<std::vector<Rational>> solve_linear_system(const IntMatrix& a,
                                                                const std::vector<BigInt>& b,
                                                                PivotOrder order = PivotOrder::Forward) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(a.front().size());
    if (static_cast<int>(b.size()) != rows)
        throw std::invalid_argument("solve_linear_system: rhs length mismatch");
    for (const auto& row : a)
        if (static_cast<int>(row.size()) != cols)
            throw std::invalid_argument("solve_linear_system: ragged matrix");

    // Augmented working copy; col_of[j] is the original column in slot j.
    std::vector<std::vector<BigInt>> m(static_cast<std::size_t>(rows),
                                       std::vector<BigInt>(static_cast<std::size_t>(cols) + 1));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j)
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols)] = b[static_cast<std::size_t>(i)];
    }
    std::vector<int> col_of(static_cast<std::size_t>(cols));
    for (int j = 0; j < cols; ++j)
        col_of[static_cast<std::size_t>(j)] = (order == PivotOrder::Forward) ? j : cols - 1 - j;
    // Apply the column order up front so elimination scans slots left to right.
    if (order == PivotOrder::Reverse)
        for (auto& row : m)
            for (int j = 0; j < cols / 2; ++j) std::swap(row[static_cast<std::size_t>(j)],
                                                         row[static_cast<std::size_t>(cols - 1 - j)]);

    BigInt prev = 1;
    int rank = 0;
    for (int slot = 0; slot < cols && rank < rows; ++slot) {
        int pivot_row = -1;
        for (int i = rank; i < rows; ++i)
            if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(slot)] != 0) {
                pivot_row = i;
                break;
            }
        if (pivot_row < 0) continue;
        std::swap(m[static_cast<std::size_t>(rank)], m[static_cast<std::size_t>(pivot_row)]);
        if (slot != rank) {
            for (auto& row : m)
                std::swap(row[static_cast<std::size_t>(slot)], row[static_cast<std::size_t>(rank)]);
            std::swap(col_of[static_cast<std::size_t>(slot)], col_of[static_cast<std::size_t>(rank)]);
        }
        const BigInt pivot = m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(rank)];
        for (int i = rank + 1; i < rows; ++i) {
            for (int j = rank + 1; j <= cols; ++j) {
                auto& mij = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                mij = (mij * pivot -
                       m[static_cast<std::size_t>(i)][static_cast<std::size_t>(rank)] *
                           m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)]) /
                      prev;
            }
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(rank)] = 0;
        }
        prev = pivot;
        ++rank;
    }

    for (int i = rank; i < rows; ++i)
        if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols)] != 0) return std::nullopt;

    // Back substitution over rationals; free variables are zero.
    std::vector<Rational> perm_x(static_cast<std::size_t>(cols), Rational(0));
    for (int r = rank - 1; r >= 0; --r) {
        Rational acc(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(cols)]);
        for (int j = r + 1; j < cols; ++j) {
            const auto& coef = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
            if (coef != 0 && perm_x[static_cast<std::size_t>(j)] != 0)
                acc -= Rational(coef) * perm_x[static_cast<std::size_t>(j)];
        }
        perm_x[static_cast<std::size_t>(r)] =
            acc / Rational(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)]);
    }
    std::vector<Rational> x(static_cast<std::size_t>(cols), Rational(0));
    for (int j = 0; j < cols; ++j)
        x[static_cast<std::size_t>(col_of[static_cast<std::size_t>(j)])] = perm_x[static_cast<std::size_t>(j)];
    return x;
}

/// Rank over the rationals, by the same fraction-free elimination.
inline int rank_exact(IntMatrix m) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(m.front().size());
    BigInt prev = 1;
    int rank = 0;
    for (int slot = 0; slot < cols && rank < rows; ++slot) {
        int pivot_row = -1;
        for (int i = rank; i < rows; ++i)
            if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(slot)] != 0) {
                pivot_row = i;
                break;
            }
        if (pivot_row < 0) continue;
        std::swap(m[static_cast<std::size_t>(rank)], m[static_cast<std::size_t>(pivot_row)]);
        const BigInt pivot = m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(slot)];
        for (int i = rank + 1; i < rows; ++i) {
            for (int j = slot + 1; j < cols; ++j) {
                auto& mij = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                mij = (mij * pivot -
                       m[static_cast<std::size_t>(i)][static_cast<std::size_t>(slot)] *
                           m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)]) /
                      prev;
            }
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(slot)] = 0;
        }
        prev = pivot;
        ++rank;
    }
    return rank;
}

/// Incrementally maintained row space over the rationals, for exact
/// linear-independence tests of candidate vectors.
class RowSpace {
public:
    /// Inserts v if it is outside the current span; returns whether it was kept.
    bool try_insert(std::vector<Rational> v) {
        for (const auto& [lead, row] : rows_) {
            if (v[static_cast<std::size_t>(lead)] == 0) continue;
            const Rational factor = v[static_cast<std::size_t>(lead)];
            for (std::size_t j = 0; j < v.size(); ++j)
                if (row[j] != 0) v[j] -= factor * row[j];
        }
        int lead = -1;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) {
                lead = static_cast<int>(j);
                break;
            }
        if (lead < 0) return false;
        const Rational inv = v[static_cast<std::size_t>(lead)];
        for (auto& c : v) c /= inv;
        rows_.emplace_back(lead, std::move(v));
        return true;
    }

    int rank() const { return static_cast<int>(rows_.size()); }

private:
    std::vector<std::pair<int, std::vector<Rational>>> rows_;
};

} // namespace orthomom
