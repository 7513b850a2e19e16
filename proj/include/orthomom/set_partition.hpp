#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace orthomom {

/// Union-find over {0,...,n-1} with path compression and union by size.
class DisjointSets {
public:
    explicit DisjointSets(int n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
};

/// A partition of {1,...,m} into nonempty disjoint blocks. Canonical form:
/// elements sorted within each block, blocks sorted by least element.
class SetPartition {
public:
    SetPartition() = default;

    /// Validates coverage of {1,...,m}, disjointness and non-emptiness,
    /// then canonicalizes.
    explicit SetPartition(std::vector<std::vector<int>> blocks) : blocks_(std::move(blocks)) {
        int m = 0;
        for (auto& b : blocks_) {
            if (b.empty()) throw std::invalid_argument("SetPartition: empty block");
            std::sort(b.begin(), b.end());
            m += static_cast<int>(b.size());
        }
        std::vector<char> seen(static_cast<std::size_t>(m) + 1, 0);
        for (const auto& b : blocks_)
            for (int x : b) {
                if (x < 1 || x > m || seen[static_cast<std::size_t>(x)])
                    throw std::invalid_argument("SetPartition: blocks must partition {1,...,m}");
                seen[static_cast<std::size_t>(x)] = 1;
            }
        std::sort(blocks_.begin(), blocks_.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        ground_size_ = m;
    }

    /// The single-block partition {{1,...,m}}.
    static SetPartition single_block(int m) {
        std::vector<int> b(static_cast<std::size_t>(m));
        std::iota(b.begin(), b.end(), 1);
        return SetPartition({std::move(b)});
    }

    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    int ground_size() const { return ground_size_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }

    /// block_of()[i-1] is the index (into blocks()) of the block containing i.
    std::vector<int> block_of() const {
        std::vector<int> owner(static_cast<std::size_t>(ground_size_), -1);
        for (int b = 0; b < block_count(); ++b)
            for (int x : blocks_[static_cast<std::size_t>(b)])
                owner[static_cast<std::size_t>(x - 1)] = b;
        return owner;
    }

    bool operator==(const SetPartition& o) const { return blocks_ == o.blocks_; }
    bool operator<(const SetPartition& o) const { return blocks_ < o.blocks_; }

private:
    std::vector<std::vector<int>> blocks_;
    int ground_size_ = 0;
};

/// Least upper bound p v q in the partition lattice: connected components of
/// the union of the two block structures.
inline SetPartition join(const SetPartition& p, const SetPartition& q) {
    if (p.ground_size() != q.ground_size())
        throw std::invalid_argument("join: partitions of different ground sets");
    const int m = p.ground_size();
    DisjointSets ds(m);
    for (const auto* part : {&p, &q})
        for (const auto& block : part->blocks())
            for (std::size_t i = 1; i < block.size(); ++i)
                ds.unite(block[0] - 1, block[i] - 1);
    std::vector<std::vector<int>> comps(static_cast<std::size_t>(m));
    for (int x = 0; x < m; ++x) comps[static_cast<std::size_t>(ds.find(x))].push_back(x + 1);
    std::vector<std::vector<int>> blocks;
    for (auto& c : comps)
        if (!c.empty()) blocks.push_back(std::move(c));
    return SetPartition(std::move(blocks));
}

} // namespace orthomom
