#include "orthomom/pairing.hpp"
#include "orthomom/rng.hpp"
#include "orthomom/set_partition.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

using namespace orthomom;

namespace {

// Independent oracle: (2k-1)!! as a plain product.
long double_factorial_oracle(int k) {
    long r = 1;
    for (int t = 3; t <= 2 * k - 1; t += 2) r *= t;
    return r;
}

// Independent oracle: parity by counting inversions.
int sign_oracle(const IndexPermutation& s) {
    int inv = 0;
    for (int i = 1; i <= s.size(); ++i)
        for (int j = i + 1; j <= s.size(); ++j)
            if (s(i) > s(j)) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

Pairing random_pairing(int k, Xoshiro256pp& rng) {
    std::vector<int> idx(static_cast<std::size_t>(2 * k));
    std::iota(idx.begin(), idx.end(), 1);
    for (int i = 2 * k - 1; i > 0; --i)
        std::swap(idx[static_cast<std::size_t>(i)],
                  idx[rng.next() % static_cast<std::uint64_t>(i + 1)]);
    std::vector<std::pair<int, int>> ps;
    for (int i = 0; i < k; ++i)
        ps.emplace_back(idx[static_cast<std::size_t>(2 * i)], idx[static_cast<std::size_t>(2 * i + 1)]);
    return Pairing(std::move(ps));
}

SetPartition random_partition(int m, Xoshiro256pp& rng) {
    std::vector<std::vector<int>> buckets(static_cast<std::size_t>(m));
    for (int x = 1; x <= m; ++x) buckets[rng.next() % static_cast<std::uint64_t>(m)].push_back(x);
    std::vector<std::vector<int>> blocks;
    for (auto& b : buckets)
        if (!b.empty()) blocks.push_back(std::move(b));
    return SetPartition(std::move(blocks));
}

IndexPermutation random_permutation(int m, Xoshiro256pp& rng) {
    std::vector<int> img(static_cast<std::size_t>(m));
    std::iota(img.begin(), img.end(), 1);
    for (int i = m - 1; i > 0; --i)
        std::swap(img[static_cast<std::size_t>(i)],
                  img[rng.next() % static_cast<std::uint64_t>(i + 1)]);
    return IndexPermutation(std::move(img));
}

} // namespace

TEST_CASE("pairing construction canonicalizes and validates") {
    const Pairing p({{4, 3}, {2, 1}});
    REQUIRE(p.pairs() == std::vector<std::pair<int, int>>{{1, 2}, {3, 4}});
    REQUIRE(p.order() == 4);
    REQUIRE(p.size() == 2);
    REQUIRE(p.partner(3) == 4);
    CHECK_THROWS_AS(Pairing({{1, 2}, {2, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(Pairing({{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Pairing({{1, 3}}), std::invalid_argument);
}

TEST_CASE("enumerate_pairings small cases") {
    const auto k1 = enumerate_pairings(1);
    REQUIRE(k1.size() == 1);
    CHECK(k1[0] == Pairing({{1, 2}}));

    const auto k2 = enumerate_pairings(2);
    REQUIRE(k2.size() == 3);
    CHECK(k2[0] == Pairing({{1, 2}, {3, 4}}));
    CHECK(k2[1] == Pairing({{1, 3}, {2, 4}}));
    CHECK(k2[2] == Pairing({{1, 4}, {2, 3}}));
}

TEST_CASE("enumerate_pairings counts match the double factorial") {
    for (int k = 1; k <= 5; ++k) {
        const auto ps = enumerate_pairings(k);
        CHECK(static_cast<long>(ps.size()) == double_factorial_oracle(k));
        const std::set<Pairing> distinct(ps.begin(), ps.end());
        CHECK(distinct.size() == ps.size());
    }
    CHECK(enumerate_pairings(5).size() == 945);
}

TEST_CASE("enumerate_pairings order is lexicographic and canonical") {
    for (int k : {2, 3, 4}) {
        const auto ps = enumerate_pairings(k);
        for (std::size_t i = 0; i < ps.size(); ++i) {
            CHECK(ps[i].pairs().front().first == 1);
            for (const auto& [a, b] : ps[i].pairs()) CHECK(a < b);
            if (i > 0) CHECK(ps[i - 1] < ps[i]);
        }
    }
}

TEST_CASE("enumerate_pairings enforces the cap") {
    CHECK_THROWS_AS(enumerate_pairings(0), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_pairings(9), size_limit_error);
    CHECK_THROWS_WITH(enumerate_pairings(9), Catch::Matchers::ContainsSubstring("cap"));
}

TEST_CASE("join examples") {
    const SetPartition p({{1, 2}, {3, 4}});
    const SetPartition q({{1, 3}, {2, 4}});
    CHECK(join(p, p) == p);
    CHECK(join(p, q) == SetPartition({{1, 2, 3, 4}}));
    CHECK(join(p, q).block_count() == 1);
    CHECK(join(p, SetPartition({{1, 2}, {3, 4}})).block_count() == 2);
    CHECK_THROWS_AS(join(p, SetPartition({{1, 2}})), std::invalid_argument);
}

TEST_CASE("join lattice laws on random partitions") {
    Xoshiro256pp rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 3 + static_cast<int>(rng.next() % 6);
        const SetPartition p = random_partition(m, rng);
        const SetPartition q = random_partition(m, rng);
        const SetPartition r = random_partition(m, rng);
        REQUIRE(join(p, q) == join(q, p));
        REQUIRE(join(join(p, q), r) == join(p, join(q, r)));
        REQUIRE(join(p, p) == p);
    }
}

TEST_CASE("join block count bounded by the smaller pairing") {
    Xoshiro256pp rng(777);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = 1 + static_cast<int>(rng.next() % 4);
        const Pairing p = random_pairing(k, rng);
        const Pairing q = random_pairing(k, rng);
        REQUIRE(join_block_count(p, q) <= std::min(p.size(), q.size()));
        REQUIRE(join_block_count(p, q) >= 1);
    }
}

TEST_CASE("apply_permutation examples") {
    const Pairing p({{1, 2}, {3, 4}});
    CHECK(apply_permutation(IndexPermutation::identity(4), p) == p);

    const IndexPermutation swap24({1, 4, 3, 2});
    CHECK(apply_permutation(swap24, p) == Pairing({{1, 4}, {2, 3}}));

    CHECK_THROWS_AS(apply_permutation(IndexPermutation::identity(6), p), std::invalid_argument);
}

TEST_CASE("S_4 orbit of the baseline pairing covers all pairings") {
    std::set<Pairing> orbit;
    std::vector<int> img{1, 2, 3, 4};
    do {
        orbit.insert(apply_permutation(IndexPermutation(img), Pairing::nested_baseline(2)));
    } while (std::next_permutation(img.begin(), img.end()));
    const auto all = enumerate_pairings(2);
    CHECK(orbit == std::set<Pairing>(all.begin(), all.end()));
}

TEST_CASE("permutation action composes") {
    Xoshiro256pp rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const IndexPermutation s = random_permutation(6, rng);
        const IndexPermutation t = random_permutation(6, rng);
        const Pairing p = random_pairing(3, rng);
        REQUIRE(apply_permutation(compose(s, t), p) ==
                apply_permutation(s, apply_permutation(t, p)));
        REQUIRE(apply_permutation(compose(s, s.inverse()), p) == p);
    }
}

TEST_CASE("permutation_sign basics and homomorphism") {
    CHECK(permutation_sign(IndexPermutation::identity(5)) == 1);
    CHECK(permutation_sign(IndexPermutation({2, 1, 3})) == -1);
    CHECK(permutation_sign(IndexPermutation({2, 3, 1})) == 1);  // 3-cycle

    Xoshiro256pp rng(4242);
    for (int trial = 0; trial < 100; ++trial) {
        const IndexPermutation s = random_permutation(7, rng);
        const IndexPermutation t = random_permutation(7, rng);
        REQUIRE(permutation_sign(s) == sign_oracle(s));
        REQUIRE(permutation_sign(compose(s, t)) == permutation_sign(s) * permutation_sign(t));
    }
}

TEST_CASE("refines examples") {
    const SetPartition two_blocks({{1, 2}, {3, 4}});
    CHECK(refines(Pairing({{1, 2}, {3, 4}}), two_blocks));
    CHECK_FALSE(refines(Pairing({{1, 3}, {2, 4}}), two_blocks));
    for (const auto& q : enumerate_pairings(2)) CHECK(refines(q, SetPartition::single_block(4)));
    CHECK_THROWS_AS(refines(Pairing({{1, 2}}), two_blocks), std::invalid_argument);
}

TEST_CASE("set partition validation") {
    CHECK_THROWS_AS(SetPartition({{1, 2}, {2, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(SetPartition({{1, 2}, {4}}), std::invalid_argument);
    CHECK_THROWS_AS(SetPartition({{1}, {}}), std::invalid_argument);
    const SetPartition p({{3, 1}, {2}});
    CHECK(p.blocks() == std::vector<std::vector<int>>{{1, 3}, {2}});  // canonical order
    CHECK(p.block_of() == std::vector<int>{0, 1, 0});
}
