#pragma once

#include "orthomom/common.hpp"
#include "orthomom/pairing.hpp"
#include "orthomom/set_partition.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace orthomom {

using Vector = std::vector<double>;

inline double norm2(const Vector& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Explicit order-m tensor over an n-dimensional space, row-major with the
/// first index slowest. Intended as a brute-force oracle at small n, m;
/// construction refuses more than kDenseEntryCap entries.
class DenseTensor {
public:
    DenseTensor() = default;

    DenseTensor(int n, int m) : n_(n), m_(m) {
        if (n < 1 || m < 0) throw std::invalid_argument("DenseTensor: n >= 1, m >= 0 required");
        std::int64_t count = 1;
        for (int i = 0; i < m; ++i) {
            count *= n;
            if (count > kDenseEntryCap)
                throw size_limit_error("DenseTensor: n^m = " + std::to_string(n) + "^" +
                                       std::to_string(m) + " exceeds entry cap " +
                                       std::to_string(kDenseEntryCap));
        }
        entries_.assign(static_cast<std::size_t>(count), 0.0);
    }

    int n() const { return n_; }
    int m() const { return m_; }
    std::size_t entry_count() const { return entries_.size(); }
    const std::vector<double>& entries() const { return entries_; }
    std::vector<double>& entries() { return entries_; }

    /// Flat offset of a 1-based index tuple (i_1,...,i_m).
    std::size_t flat_index(const std::vector<int>& idx) const {
        if (static_cast<int>(idx.size()) != m_)
            throw std::invalid_argument("DenseTensor: index tuple of wrong length");
        std::size_t f = 0;
        for (int s = 0; s < m_; ++s) {
            const int i = idx[static_cast<std::size_t>(s)];
            if (i < 1 || i > n_) throw std::out_of_range("DenseTensor: index out of range");
            f = f * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i - 1);
        }
        return f;
    }

    double at(const std::vector<int>& idx) const { return entries_[flat_index(idx)]; }
    double& at(const std::vector<int>& idx) { return entries_[flat_index(idx)]; }

    double max_abs() const {
        double r = 0;
        for (double x : entries_) r = std::max(r, std::abs(x));
        return r;
    }

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<double> entries_;
};

/// Advance a 1-based index tuple in row-major order; false after the last tuple.
inline bool next_index_tuple(std::vector<int>& idx, int n) {
    for (int s = static_cast<int>(idx.size()) - 1; s >= 0; --s) {
        auto& v = idx[static_cast<std::size_t>(s)];
        if (v < n) {
            ++v;
            return true;
        }
        v = 1;
    }
    return false;
}

/// I(P): entry 1 at every tuple constant on each pair of p, 0 elsewhere.
/// Built by assigning one value per pair (n^k nonzero entries).
inline DenseTensor standard_invariant_dense(const Pairing& p, int n) {
    const int m = p.order();
    const int k = p.size();
    DenseTensor t(n, m);
    std::vector<int> values(static_cast<std::size_t>(k), 1);
    std::vector<int> idx(static_cast<std::size_t>(m));
    for (;;) {
        for (int j = 0; j < k; ++j) {
            const auto& [a, b] = p.pairs()[static_cast<std::size_t>(j)];
            idx[static_cast<std::size_t>(a - 1)] = values[static_cast<std::size_t>(j)];
            idx[static_cast<std::size_t>(b - 1)] = values[static_cast<std::size_t>(j)];
        }
        t.at(idx) = 1.0;
        if (!next_index_tuple(values, n)) break;
    }
    return t;
}

/// Decomposable tensor with vectors[t] occupying the positions of block t:
/// entry(i_1,...,i_m) = prod over blocks J_t of prod_{s in J_t} vectors[t][i_s].
inline DenseTensor placed_tensor(const std::vector<Vector>& vectors, const SetPartition& partition) {
    if (static_cast<int>(vectors.size()) != partition.block_count())
        throw std::invalid_argument("placed_tensor: one vector per block required");
    const int m = partition.ground_size();
    if (m == 0) throw std::invalid_argument("placed_tensor: empty partition");
    const int n = static_cast<int>(vectors.front().size());
    for (const auto& v : vectors)
        if (static_cast<int>(v.size()) != n)
            throw std::invalid_argument("placed_tensor: vectors of mixed dimension");

    const std::vector<int> owner = partition.block_of();
    DenseTensor t(n, m);
    std::vector<int> idx(static_cast<std::size_t>(m), 1);
    std::size_t f = 0;
    do {
        double prod = 1.0;
        for (int s = 0; s < m; ++s)
            prod *= vectors[static_cast<std::size_t>(owner[static_cast<std::size_t>(s)])]
                           [static_cast<std::size_t>(idx[static_cast<std::size_t>(s)] - 1)];
        t.entries()[f++] = prod;
    } while (next_index_tuple(idx, n));
    return t;
}

/// m-fold tensor power of a unit vector x (rank-one, unit norm).
inline DenseTensor veronese(const Vector& x, int m) {
    if (m < 1) throw std::invalid_argument("veronese: m >= 1 required");
    if (std::abs(norm2(x) - 1.0) > 1e-9)
        throw std::invalid_argument("veronese: x must be a unit vector");
    return placed_tensor({x}, SetPartition::single_block(m));
}

/// Euclidean inner product: sum of entrywise products.
inline double inner(const DenseTensor& a, const DenseTensor& b) {
    if (a.n() != b.n() || a.m() != b.m())
        throw std::invalid_argument("inner: tensor shape mismatch");
    double s = 0;
    const auto& ea = a.entries();
    const auto& eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) s += ea[i] * eb[i];
    return s;
}

} // namespace orthomom
