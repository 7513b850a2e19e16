#pragma once

#include "orthomom/common.hpp"
#include "orthomom/set_partition.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace orthomom {

/// A perfect matching of {1,...,2k}. Canonical form: a < b within each pair,
/// pairs sorted ascending by first element (so the first pair starts with 1).
class Pairing {
public:
    Pairing() = default;

    explicit Pairing(std::vector<std::pair<int, int>> pairs) : pairs_(std::move(pairs)) {
        for (auto& [a, b] : pairs_) {
            if (a == b) throw std::invalid_argument("Pairing: degenerate pair");
            if (a > b) std::swap(a, b);
        }
        std::sort(pairs_.begin(), pairs_.end());
        const int m = order();
        std::vector<char> seen(static_cast<std::size_t>(m) + 1, 0);
        for (const auto& [a, b] : pairs_)
            for (int x : {a, b}) {
                if (x < 1 || x > m || seen[static_cast<std::size_t>(x)])
                    throw std::invalid_argument("Pairing: indices must cover {1,...,2k} exactly once");
                seen[static_cast<std::size_t>(x)] = 1;
            }
    }

    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
    int size() const { return static_cast<int>(pairs_.size()); }  // k
    int order() const { return 2 * size(); }                      // m = 2k

    /// partner(i) is the element paired with i (1-based).
    int partner(int i) const {
        for (const auto& [a, b] : pairs_) {
            if (a == i) return b;
            if (b == i) return a;
        }
        throw std::out_of_range("Pairing::partner: index out of range");
    }

    SetPartition to_partition() const {
        std::vector<std::vector<int>> blocks;
        blocks.reserve(pairs_.size());
        for (const auto& [a, b] : pairs_) blocks.push_back({a, b});
        return SetPartition(std::move(blocks));
    }

    /// P_0 = (1,2)(3,4)...(2k-1,2k).
    static Pairing nested_baseline(int k) {
        std::vector<std::pair<int, int>> ps;
        ps.reserve(static_cast<std::size_t>(k));
        for (int i = 1; i <= k; ++i) ps.emplace_back(2 * i - 1, 2 * i);
        return Pairing(std::move(ps));
    }

    bool operator==(const Pairing& o) const { return pairs_ == o.pairs_; }
    bool operator!=(const Pairing& o) const { return !(*this == o); }
    bool operator<(const Pairing& o) const { return pairs_ < o.pairs_; }

private:
    std::vector<std::pair<int, int>> pairs_;
};

/// A bijection on {1,...,m}, stored as images[t-1] = sigma(t).
class IndexPermutation {
public:
    IndexPermutation() = default;

    explicit IndexPermutation(std::vector<int> images) : images_(std::move(images)) {
        const int m = size();
        std::vector<char> seen(static_cast<std::size_t>(m) + 1, 0);
        for (int v : images_) {
            if (v < 1 || v > m || seen[static_cast<std::size_t>(v)])
                throw std::invalid_argument("IndexPermutation: not a bijection on {1,...,m}");
            seen[static_cast<std::size_t>(v)] = 1;
        }
    }

    static IndexPermutation identity(int m) {
        std::vector<int> img(static_cast<std::size_t>(m));
        std::iota(img.begin(), img.end(), 1);
        return IndexPermutation(std::move(img));
    }

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int t) const { return images_[static_cast<std::size_t>(t - 1)]; }
    const std::vector<int>& images() const { return images_; }

    IndexPermutation inverse() const {
        std::vector<int> inv(images_.size());
        for (int t = 1; t <= size(); ++t) inv[static_cast<std::size_t>((*this)(t)-1)] = t;
        return IndexPermutation(std::move(inv));
    }

    /// (a o b)(t) = a(b(t)).
    friend IndexPermutation compose(const IndexPermutation& a, const IndexPermutation& b) {
        if (a.size() != b.size())
            throw std::invalid_argument("compose: size mismatch");
        std::vector<int> img(a.images_.size());
        for (int t = 1; t <= a.size(); ++t) img[static_cast<std::size_t>(t - 1)] = a(b(t));
        return IndexPermutation(std::move(img));
    }

    bool operator==(const IndexPermutation& o) const { return images_ == o.images_; }

private:
    std::vector<int> images_;
};

/// Parity of a permutation via cycle decomposition: (-1)^(m - #cycles).
inline int permutation_sign(const IndexPermutation& sigma) {
    const int m = sigma.size();
    std::vector<char> visited(static_cast<std::size_t>(m) + 1, 0);
    int cycles = 0;
    for (int start = 1; start <= m; ++start) {
        if (visited[static_cast<std::size_t>(start)]) continue;
        ++cycles;
        int x = start;
        while (!visited[static_cast<std::size_t>(x)]) {
            visited[static_cast<std::size_t>(x)] = 1;
            x = sigma(x);
        }
    }
    return ((m - cycles) % 2 == 0) ? 1 : -1;
}

/// All (2k-1)!! pairings of {1,...,2k} in lexicographic canonical order.
/// Recursion matches the smallest free index with every larger free index,
/// which visits canonical pair lists in lexicographic order.
inline std::vector<Pairing> enumerate_pairings(int k) {
    if (k < 1) throw std::invalid_argument("enumerate_pairings: k must be >= 1");
    if (k > enumeration_cap())
        throw size_limit_error("enumerate_pairings: k = " + std::to_string(k) +
                               " exceeds enumeration cap k <= " + std::to_string(enumeration_cap()) +
                               " (override with ORTHOMOM_MAX_K)");
    const int m = 2 * k;
    std::vector<Pairing> out;
    std::vector<std::pair<int, int>> current;
    std::vector<char> used(static_cast<std::size_t>(m) + 1, 0);

    auto rec = [&](auto&& self) -> void {
        int a = 0;
        for (int i = 1; i <= m; ++i)
            if (!used[static_cast<std::size_t>(i)]) {
                a = i;
                break;
            }
        if (a == 0) {
            out.emplace_back(current);
            return;
        }
        used[static_cast<std::size_t>(a)] = 1;
        for (int b = a + 1; b <= m; ++b) {
            if (used[static_cast<std::size_t>(b)]) continue;
            used[static_cast<std::size_t>(b)] = 1;
            current.emplace_back(a, b);
            self(self);
            current.pop_back();
            used[static_cast<std::size_t>(b)] = 0;
        }
        used[static_cast<std::size_t>(a)] = 0;
    };
    rec(rec);
    return out;
}

/// Canonical form of { {sigma(a), sigma(b)} : (a,b) in p }.
inline Pairing apply_permutation(const IndexPermutation& sigma, const Pairing& p) {
    if (sigma.size() != p.order())
        throw std::invalid_argument("apply_permutation: size mismatch");
    std::vector<std::pair<int, int>> ps;
    ps.reserve(p.pairs().size());
    for (const auto& [a, b] : p.pairs()) ps.emplace_back(sigma(a), sigma(b));
    return Pairing(std::move(ps));
}

/// True iff every pair of q lies inside a single block of p.
inline bool refines(const Pairing& q, const SetPartition& p) {
    if (q.order() != p.ground_size())
        throw std::invalid_argument("refines: size mismatch");
    const std::vector<int> owner = p.block_of();
    for (const auto& [a, b] : q.pairs())
        if (owner[static_cast<std::size_t>(a - 1)] != owner[static_cast<std::size_t>(b - 1)])
            return false;
    return true;
}

/// Number of blocks of p v q; the exponent in <I(P), I(Q)> = n^l.
inline int join_block_count(const Pairing& p, const Pairing& q) {
    if (p.order() != q.order())
        throw std::invalid_argument("join_block_count: pairings of different order");
    const int m = p.order();
    DisjointSets ds(m);
    for (const auto& [a, b] : p.pairs()) ds.unite(a - 1, b - 1);
    for (const auto& [a, b] : q.pairs()) ds.unite(a - 1, b - 1);
    int roots = 0;
    for (int x = 0; x < m; ++x)
        if (ds.find(x) == x) ++roots;
    return roots;
}

} // namespace orthomom
