#pragma once

#include "orthomom/common.hpp"
#include "orthomom/dense_tensor.hpp"
#include "orthomom/exact_linalg.hpp"
#include "orthomom/gram.hpp"
#include "orthomom/invariant_combination.hpp"
#include "orthomom/moments.hpp"
#include "orthomom/montecarlo.hpp"
#include "orthomom/npolynomial.hpp"
#include "orthomom/pairing.hpp"
#include "orthomom/rng.hpp"
#include "orthomom/set_partition.hpp"
#include "orthomom/weingarten.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace orthomom {

enum class CheckStatus { Pass, Fail, Inconclusive };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Fail;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;

    int count(CheckStatus s) const {
        int c = 0;
        for (const auto& ch : checks)
            if (ch.status == s) ++c;
        return c;
    }
    bool failed() const { return count(CheckStatus::Fail) > 0; }
};

struct VerifyOptions {
    std::uint64_t seed = 42;
    std::uint64_t samples = 1'000'000;
    int workers = 1;
};

namespace verify_detail {

inline std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

inline void add(SuiteResult& suite, const std::string& name, bool ok, const std::string& detail) {
    suite.checks.push_back({name, ok ? CheckStatus::Pass : CheckStatus::Fail, detail});
}

inline Pairing random_pairing(int k, Xoshiro256pp& rng) {
    const int m = 2 * k;
    std::vector<int> idx(static_cast<std::size_t>(m));
    std::iota(idx.begin(), idx.end(), 1);
    for (int i = m - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.next() % static_cast<std::uint64_t>(i + 1));
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
    std::vector<std::pair<int, int>> ps;
    for (int i = 0; i < k; ++i)
        ps.emplace_back(idx[static_cast<std::size_t>(2 * i)], idx[static_cast<std::size_t>(2 * i + 1)]);
    return Pairing(std::move(ps));
}

inline SetPartition random_partition(int m, Xoshiro256pp& rng) {
    std::vector<std::vector<int>> buckets(static_cast<std::size_t>(m));
    for (int x = 1; x <= m; ++x)
        buckets[rng.next() % static_cast<std::uint64_t>(m)].push_back(x);
    std::vector<std::vector<int>> blocks;
    for (auto& b : buckets)
        if (!b.empty()) blocks.push_back(std::move(b));
    return SetPartition(std::move(blocks));
}

inline IndexPermutation random_permutation(int m, Xoshiro256pp& rng) {
    std::vector<int> img(static_cast<std::size_t>(m));
    std::iota(img.begin(), img.end(), 1);
    for (int i = m - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.next() % static_cast<std::uint64_t>(i + 1));
        std::swap(img[static_cast<std::size_t>(i)], img[static_cast<std::size_t>(j)]);
    }
    return IndexPermutation(std::move(img));
}

/// Parity by brute-force inversion counting; an independent route used to
/// cross-check the cycle-based sign.
inline int sign_by_inversions(const IndexPermutation& s) {
    int inv = 0;
    for (int i = 1; i <= s.size(); ++i)
        for (int j = i + 1; j <= s.size(); ++j)
            if (s(i) > s(j)) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

/// Canonical pattern of a sequence: values relabeled by first occurrence,
/// so exact_moment results can be shared between queries that differ only by
/// index names.
inline std::string canonical_pattern(const std::vector<int>& seq) {
    std::map<int, int> relabel;
    std::string out;
    for (int v : seq) {
        auto [it, inserted] = relabel.emplace(v, static_cast<int>(relabel.size()));
        out += static_cast<char>('a' + it->second);
    }
    return out;
}

} // namespace verify_detail

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

inline SuiteResult verify_combinat(const VerifyOptions& opts) {
    using namespace verify_detail;
    SuiteResult suite{"combinat", {}};
    Xoshiro256pp rng(opts.seed, 101);

    {
        bool ok = true;
        std::string detail;
        for (int k = 1; k <= 5; ++k) {
            const auto ps = enumerate_pairings(k);
            const BigInt expected = odd_double_factorial(k);
            if (BigInt(ps.size()) != expected) ok = false;
            detail += (k > 1 ? ", " : "") + std::to_string(ps.size());
        }
        add(suite, "pairing_counts", ok, "sizes for k=1..5: " + detail);
    }
    {
        bool ok = true;
        for (int k = 1; k <= 5 && ok; ++k) {
            const auto ps = enumerate_pairings(k);
            for (std::size_t i = 0; i < ps.size() && ok; ++i) {
                if (ps[i].pairs().front().first != 1) ok = false;
                if (i > 0 && !(ps[i - 1] < ps[i])) ok = false;
            }
        }
        add(suite, "pairing_order_canonical", ok, "lexicographic, distinct, first pair starts at 1");
    }
    {
        bool ok = true;
        for (int trial = 0; trial < 100 && ok; ++trial) {
            const int m = 4 + static_cast<int>(rng.next() % 5);
            const SetPartition p = random_partition(m, rng);
            const SetPartition q = random_partition(m, rng);
            const SetPartition r = random_partition(m, rng);
            if (!(join(p, q) == join(q, p))) ok = false;
            if (!(join(p, join(q, r)) == join(join(p, q), r))) ok = false;
            if (!(join(p, p) == p)) ok = false;
        }
        add(suite, "join_lattice_laws", ok, "commutative, associative, idempotent on 100 random partitions");
    }
    {
        bool ok = true;
        for (int trial = 0; trial < 100 && ok; ++trial) {
            const int k = 2 + static_cast<int>(rng.next() % 3);
            const Pairing p = random_pairing(k, rng);
            const Pairing q = random_pairing(k, rng);
            const int l = join_block_count(p, q);
            if (l > std::min(p.size(), q.size())) ok = false;
        }
        add(suite, "join_block_bound", ok, "|p v q| <= min(|p|, |q|) on 100 random pairing pairs");
    }
    {
        std::vector<Pairing> orbit;
        std::vector<int> img{1, 2, 3, 4};
        do {
            const Pairing image = apply_permutation(IndexPermutation(img), Pairing::nested_baseline(2));
            if (std::find(orbit.begin(), orbit.end(), image) == orbit.end()) orbit.push_back(image);
        } while (std::next_permutation(img.begin(), img.end()));
        add(suite, "s4_orbit", orbit.size() == 3, "S_4 orbit of (1,2)(3,4) has size " + std::to_string(orbit.size()));
    }
    {
        bool ok = true;
        for (int trial = 0; trial < 100 && ok; ++trial) {
            const IndexPermutation s = random_permutation(6, rng);
            const IndexPermutation t = random_permutation(6, rng);
            if (permutation_sign(s) != sign_by_inversions(s)) ok = false;
            if (permutation_sign(compose(s, t)) != permutation_sign(s) * permutation_sign(t)) ok = false;
            const Pairing p = random_pairing(3, rng);
            if (apply_permutation(compose(s, t), p) != apply_permutation(s, apply_permutation(t, p))) ok = false;
        }
        add(suite, "permutation_action", ok, "sign homomorphism and action composition on 100 random cases");
    }
    return suite;
}

inline SuiteResult verify_gram(const VerifyOptions&) {
    using namespace verify_detail;
    SuiteResult suite{"gram", {}};

    {
        bool ok = true;
        for (int k = 1; k <= 4 && ok; ++k) {
            const GramMatrix g = gram_matrix(k);
            for (int i = 0; i < g.size() && ok; ++i) {
                if (g.exponent(i, i) != k) ok = false;
                for (int j = 0; j < g.size(); ++j) {
                    const int e = g.exponent(i, j);
                    if (e != g.exponent(j, i) || e < 1 || e > k) ok = false;
                }
            }
        }
        add(suite, "gram_symmetry_diagonal", ok, "symmetric, diagonal n^k, exponents in [1,k] for k<=4");
    }
    {
        bool ok = true;
        std::string detail;
        for (int k = 1; k <= 5; ++k) {
            const NPolynomial sum = gram_row_sum(k);
            if (sum != p_poly(k)) ok = false;
            if (k <= 3) detail += (k > 1 ? "; " : "") + sum.to_string();
        }
        add(suite, "gram_row_sums", ok, "all rows equal P(n,k) symbolically for k<=5; e.g. " + detail);
    }
    {
        bool ok = true;
        for (int k = 1; k <= 4 && ok; ++k)
            for (int n : {2, 3, 5}) {
                const Rational avg = gram_entry_average(k, n);
                if (avg != Rational(1) / mu(k, n)) ok = false;
            }
        add(suite, "gram_entry_average", ok, "average of Gram entries equals 1/mu_{k,n} for k<=4, n in {2,3,5}");
    }
    {
        bool ok = true;
        for (int k = 1; k <= 3 && ok; ++k) {
            const auto ps = enumerate_pairings(k);
            for (int n = 1; n <= 3 && ok; ++n)
                for (const auto& p : ps)
                    for (const auto& q : ps) {
                        const double lhs = inner(standard_invariant_dense(p, n), standard_invariant_dense(q, n));
                        const double rhs = static_cast<double>(int_pow(n, join_block_count(p, q)));
                        if (lhs != rhs) ok = false;
                    }
        }
        add(suite, "lemma7_brute_force", ok,
            "dense <I(P),I(Q)> equals n^|PvQ| exactly for all pairs, k<=3, n in {1,2,3}");
    }
    {
        bool ok = true;
        for (int k = 1; k <= 4 && ok; ++k) {
            const GramMatrix g = gram_matrix(k);
            for (int n : {1, 2, 3, 5}) {
                const Rational alpha(1, p_poly_value(k, n));
                for (int i = 0; i < g.size() && ok; ++i) {
                    Rational row = 0;
                    for (int j = 0; j < g.size(); ++j) row += alpha * Rational(g.value(i, j, n));
                    if (row != 1) ok = false;
                }
            }
        }
        add(suite, "normal_equations", ok, "G alpha = 1 exactly with alpha = 1/P(n,k), k<=4, n in {1,2,3,5}");
    }
    return suite;
}

inline SuiteResult verify_moments(const VerifyOptions&) {
    using namespace verify_detail;
    SuiteResult suite{"moments", {}};

    {
        const bool ok = mu(1, 7) == Rational(1, 7) && mu(2, 3) == Rational(1, 5) && mu(3, 1) == 1 &&
                        p_poly(2) == NPolynomial::monomial(2) + NPolynomial::monomial(1, 2) &&
                        p_poly(3).evaluate(3) == 105;
        add(suite, "mu_values", ok, "mu(1,7)=1/7, mu(2,3)=1/5, mu(3,1)=1, P(n,2)=n^2+2n, P(3,3)=105");
    }
    {
        bool ok = veronese_expectation(3, 2).is_zero() && veronese_expectation(5, 3).is_zero();
        const auto ve = veronese_expectation(4, 2);
        if (ve.terms().size() != 3) ok = false;
        for (const auto& [p, c] : ve.terms())
            if (c != Rational(1, 8)) ok = false;
        add(suite, "veronese_expectation", ok, "odd m gives zero; m=4, n=2 gives 1/8 on all three pairings");
    }
    {
        bool ok = true;
        for (int k = 1; k <= 4 && ok; ++k)
            for (int n : {2, 3, 5}) {
                const GramMatrix g = gram_matrix(k);
                const Rational alpha(1, p_poly_value(k, n));
                Rational quad = 0;
                for (int i = 0; i < g.size(); ++i)
                    for (int j = 0; j < g.size(); ++j) quad += alpha * alpha * Rational(g.value(i, j, n));
                if (quad != mu(k, n)) ok = false;
            }
        add(suite, "lemma3_projected_norm", ok,
            "alpha^T G alpha equals mu_{k,n} exactly for k<=4, n in {2,3,5}");
    }
    {
        bool ok = true;
        for (int k = 1; k <= 3 && ok; ++k) {
            const auto ps = enumerate_pairings(k);
            for (int n : {2, 3, 5})
                for (const auto& p : ps)
                    for (const auto& q : ps) {
                        const Rational lhs = pair_moment_cor3(p, q, n) * Rational(int_pow(n, 2 * k));
                        if (lhs != Rational(gram_entry(p, q).evaluate(n))) ok = false;
                    }
        }
        add(suite, "corollary3_vs_gram", ok,
            "pair moment times n^{2k} equals the Gram entry for k<=3, n in {2,3,5}");
    }
    {
        bool ok = true;
        // Pairing partitions: expectation is (1/n^l) I(P), checked entrywise.
        for (int n : {2, 3})
            for (int k = 1; k <= 2 && ok; ++k)
                for (const auto& p : enumerate_pairings(k)) {
                    std::vector<std::vector<int>> blocks;
                    for (const auto& [a, b] : p.pairs()) blocks.push_back({a, b});
                    const auto ge = generalized_expectation(SetPartition(blocks), n);
                    const DenseTensor got = generalized_expectation_dense(ge, n);
                    const DenseTensor ind = standard_invariant_dense(p, n);
                    const double scale = static_cast<double>(Rational(1, int_pow(n, k)));
                    for (std::size_t i = 0; i < got.entry_count() && ok; ++i)
                        if (got.entries()[i] != scale * ind.entries()[i]) ok = false;
                }
        // Odd block: zero.
        if (!generalized_expectation(SetPartition({{1, 2, 3}, {4, 5}}), 2).is_zero()) ok = false;
        add(suite, "generalized_expectation", ok,
            "pairing partitions give (1/n^l) I(P) entrywise; odd blocks give zero");
    }
    return suite;
}

inline SuiteResult verify_sft(const VerifyOptions&) {
    using namespace verify_detail;
    SuiteResult suite{"sft", {}};

    {
        const auto rel = sft_relation(2);
        const Pairing p0 = Pairing::nested_baseline(2);
        const Pairing swapped({{1, 4}, {3, 2}});
        const bool ok = rel.terms().size() == 2 && rel.terms().count(p0) && rel.terms().count(swapped) &&
                        rel.terms().at(p0) == 1 && rel.terms().at(swapped) == -1;
        add(suite, "sft_k2_structure", ok, "k=2 relation is I((1,2)(3,4)) - I((1,4)(2,3))");
    }
    {
        bool ok = true;
        std::string detail;
        for (const auto& [k, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {4, 3}}) {
            const double maxabs = evaluate_combination_dense(sft_relation(k), n).max_abs();
            if (maxabs != 0.0) ok = false;
            detail += "(" + std::to_string(k) + "," + std::to_string(n) + ") ";
        }
        add(suite, "sft_zero_when_k_exceeds_n", ok, "dense relation vanishes exactly at " + detail);
    }
    {
        bool ok = true;
        for (const auto& [k, n] : std::vector<std::pair<int, int>>{{2, 2}, {3, 3}}) {
            if (evaluate_combination_dense(sft_relation(k), n).max_abs() == 0.0) ok = false;
        }
        add(suite, "sft_nonzero_when_k_le_n", ok, "dense relation is nonzero at (2,2) and (3,3)");
    }
    return suite;
}

inline SuiteResult verify_corollary1(const VerifyOptions&) {
    using namespace verify_detail;
    SuiteResult suite{"corollary1", {}};

    {
        bool ok = true;
        std::string detail;
        for (const auto& [k, n] : std::vector<std::pair<int, int>>{{1, 2}, {2, 1}, {2, 3}, {3, 2}}) {
            const auto res = corollary1_identity(k, n);
            if (res.residual != 0.0) ok = false;
            detail += "(" + std::to_string(k) + "," + std::to_string(n) + "):basis " +
                      std::to_string(res.basis.size()) + " ";
        }
        add(suite, "corollary1_residual", ok, "residual exactly zero; " + detail);
    }
    {
        const auto res = corollary1_identity(2, 3);
        bool ok = res.row_sums.size() == 3;
        for (const auto& s : res.row_sums)
            if (s != Rational(1, 15)) ok = false;
        add(suite, "corollary1_k2_n3_coefficients", ok, "inverse-Gram row sums all equal 1/15");
    }
    {
        bool ok = true;
        for (const auto& [k, n] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 2}, {3, 3}}) {
            const auto basis = extract_basis(k, n);
            const int r = rank_exact(gram_matrix(k).evaluate(n));
            if (static_cast<int>(basis.size()) != r) ok = false;
        }
        add(suite, "basis_size_equals_gram_rank", ok,
            "greedy basis size equals exact Gram rank at (2,1),(2,2),(3,2),(3,3)");
    }
    return suite;
}

inline SuiteResult verify_corollary2(const VerifyOptions&) {
    using namespace verify_detail;
    SuiteResult suite{"corollary2", {}};
    for (int k = 1; k <= 4; ++k) {
        const auto rep = corollary2_check(k);
        add(suite, "corollary2_k" + std::to_string(k), rep.all_ok(),
            "all " + std::to_string(rep.row_ok.size()) + " Gram rows match the Kronecker row multiset");
    }
    return suite;
}

inline SuiteResult verify_weingarten(const VerifyOptions& opts) {
    using namespace verify_detail;
    SuiteResult suite{"weingarten", {}};
    Xoshiro256pp rng(opts.seed, 202);

    {
        // Single distinct row index: the factorized recipe and the normal
        // equations must agree exactly. Exact results are shared between
        // queries with the same column-equality pattern.
        bool ok = true;
        long checked = 0;
        for (int n : {2, 3, 5}) {
            std::map<std::string, Rational> memo;
            for (int m = 1; m <= 6 && ok; ++m) {
                std::vector<int> cols(static_cast<std::size_t>(m), 1);
                do {
                    std::vector<std::pair<int, int>> factors;
                    for (int c : cols) factors.emplace_back(1, c);
                    const MomentQuery q(n, factors);
                    const Rational t3 = theorem3_moment(q);
                    const std::string key = std::to_string(m) + ":" + canonical_pattern(cols);
                    auto it = memo.find(key);
                    if (it == memo.end()) it = memo.emplace(key, exact_moment(q)).first;
                    if (t3 != it->second) ok = false;
                    ++checked;
                } while (ok && next_index_tuple(cols, n));
            }
        }
        add(suite, "single_row_theorem3_equals_exact", ok,
            "all " + std::to_string(checked) + " single-row queries with m<=6, n in {2,3,5}");
    }
    {
        bool ok = true;
        for (int n : {2, 3, 5}) {
            const MomentQuery q(n, {{1, 1}, {1, 1}, {1, 1}, {1, 1}});
            const Rational expected(3, BigInt(n) * (n + 2));
            if (theorem3_moment(q) != expected || exact_moment(q) != expected) ok = false;
            if (corollary4_moment(n, {{1, 1, 4}}) != expected) ok = false;
        }
        add(suite, "x11_fourth_moment", ok, "theorem3 = exact = 3/(n(n+2)) at n in {2,3,5}");
    }
    {
        bool ok = true;
        for (int trial = 0; trial < 30 && ok; ++trial) {
            const int n = 2 + static_cast<int>(rng.next() % 2);
            const int m = 2 * (1 + static_cast<int>(rng.next() % 3));
            std::vector<std::pair<int, int>> factors;
            for (int s = 0; s < m; ++s)
                factors.emplace_back(1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(n)),
                                     1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(n)));
            const MomentQuery q(n, factors);
            const Rational base = exact_moment(q);

            auto shuffled = factors;
            for (int i = m - 1; i > 0; --i) {
                const int j = static_cast<int>(rng.next() % static_cast<std::uint64_t>(i + 1));
                std::swap(shuffled[static_cast<std::size_t>(i)], shuffled[static_cast<std::size_t>(j)]);
            }
            if (exact_moment(MomentQuery(n, shuffled)) != base) ok = false;

            auto transposed = factors;
            for (auto& [i, j] : transposed) std::swap(i, j);
            if (exact_moment(MomentQuery(n, transposed)) != base) ok = false;

            const IndexPermutation rowrel = random_permutation(n, rng);
            const IndexPermutation colrel = random_permutation(n, rng);
            auto relabeled = factors;
            for (auto& [i, j] : relabeled) {
                i = rowrel(i);
                j = colrel(j);
            }
            if (exact_moment(MomentQuery(n, relabeled)) != base) ok = false;
        }
        add(suite, "exact_moment_invariances", ok,
            "factor order, transposition and simultaneous relabeling on 30 random queries");
    }
    {
        bool ok = true;
        for (int trial = 0; trial < 20 && ok; ++trial) {
            const int n = 3;
            const int m = 2 * (1 + static_cast<int>(rng.next() % 3));
            std::vector<std::pair<int, int>> factors;
            factors.emplace_back(3, 1 + static_cast<int>(rng.next() % 3));  // row 3 appears exactly once
            for (int s = 1; s < m; ++s)
                factors.emplace_back(1 + static_cast<int>(rng.next() % 2),
                                     1 + static_cast<int>(rng.next() % 3));
            if (exact_moment(MomentQuery(n, factors)) != 0) ok = false;
        }
        add(suite, "lonely_row_vanishes", ok, "queries with a row index appearing once evaluate to 0");
    }
    {
        bool ok = true;
        const std::vector<std::pair<int, MomentQuery>> singular = {
            {1, MomentQuery(1, {{1, 1}, {1, 1}, {1, 1}, {1, 1}})},
            {2, MomentQuery(2, {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {1, 1}, {2, 2}})},
            {2, MomentQuery(2, {{1, 1}, {1, 1}, {1, 2}, {1, 2}, {2, 2}, {2, 2}})},
        };
        for (const auto& [n, q] : singular)
            if (exact_moment(q, PivotOrder::Forward) != exact_moment(q, PivotOrder::Reverse)) ok = false;
        add(suite, "pivot_order_independence", ok,
            "singular (k > n) systems give the same moment under both pivot orders");
    }
    {
        bool ok = true;
        long count = 0;
        // Factor tuples (i, j, 2k) with pairwise distinct rows, total degree <= 8.
        const std::vector<std::vector<std::tuple<int, int, int>>> specs = {
            {{1, 1, 2}},
            {{1, 2, 4}},
            {{1, 1, 6}},
            {{2, 2, 8}},
            {{1, 1, 2}, {2, 2, 2}},
            {{1, 2, 2}, {2, 1, 2}},
            {{1, 1, 4}, {2, 2, 2}},
            {{1, 1, 4}, {2, 1, 4}},
            {{1, 1, 6}, {2, 2, 2}},
            {{1, 1, 2}, {2, 2, 2}, {3, 3, 2}},
            {{1, 1, 2}, {2, 1, 2}, {3, 1, 4}},
            {{1, 1, 4}, {2, 2, 2}, {3, 3, 2}},
            {{1, 1, 2}, {2, 2, 2}, {3, 3, 2}, {4, 4, 2}},
        };
        for (const auto& spec : specs)
            for (int n : {4, 5}) {
                std::vector<std::pair<int, int>> expanded;
                Rational product = 1;
                for (const auto& [i, j, e] : spec) {
                    for (int c = 0; c < e; ++c) expanded.emplace_back(i, j);
                    product *= Rational(odd_double_factorial(e / 2), p_poly_value(e / 2, n));
                }
                if (corollary4_moment(n, spec) != product) ok = false;
                if (corollary4_moment(n, spec) != theorem3_moment(MomentQuery(n, expanded))) ok = false;
                ++count;
            }
        add(suite, "corollary4_product_form", ok,
            std::to_string(count) + " distinct-row specs with m<=8 match the factorized product");
    }
    {
        // Fixed arbitration suite: the exact evaluator against Monte Carlo.
        const std::vector<std::vector<std::pair<int, int>>> queries = {
            {{1, 1}, {1, 1}},
            {{1, 1}, {2, 2}},
            {{1, 1}, {1, 1}, {1, 1}, {1, 1}},
            {{1, 1}, {1, 1}, {2, 2}, {2, 2}},
            {{1, 1}, {1, 2}, {2, 1}, {2, 2}},
            {{1, 1}, {1, 1}, {1, 2}, {1, 2}, {2, 2}, {2, 2}},
        };
        bool ok = true;
        std::string detail;
        int run = 0;
        for (int n : {2, 3})
            for (const auto& factors : queries) {
                const MomentQuery q(n, factors);
                SamplerConfig cfg{opts.seed + static_cast<std::uint64_t>(300 + run), opts.samples, n,
                                  opts.workers};
                const Rational ex = exact_moment(q);
                const Estimate mc = estimate_query_moment(q, cfg);
                if (!mc.within(static_cast<double>(ex), 4.0)) {
                    ok = false;
                    detail += " miss at n=" + std::to_string(n) + " query " + std::to_string(run % 6);
                }
                ++run;
            }
        add(suite, "exact_vs_mc_12_queries", ok,
            "12 fixed queries at n in {2,3}, m<=6, " + std::to_string(opts.samples) + " samples each" + detail);
    }
    {
        // The l > 1 discrepancy: report both values and let Monte Carlo
        // arbitrate. Decisive means at least one evaluator is rejected at 6
        // standard errors; the discrepancy itself is the expected outcome, so
        // a decisive run passes regardless of which side wins.
        const MomentQuery q(2, {{1, 1}, {1, 1}, {2, 2}, {2, 2}});
        SamplerConfig cfg{opts.seed + 777, opts.samples, 2, opts.workers};
        const CompareReport rep = compare_methods(q, cfg);
        const double t3 = static_cast<double>(rep.theorem3);
        const double ex = static_cast<double>(rep.exact);
        const bool t3_rejected = std::abs(rep.mc.mean - t3) > 6.0 * rep.mc.stderr_;
        const bool ex_rejected = std::abs(rep.mc.mean - ex) > 6.0 * rep.mc.stderr_;
        const bool decisive = t3_rejected || ex_rejected;
        std::string supports = "neither";
        if (rep.exact_within_4se && t3_rejected) supports = "exact";
        else if (rep.theorem3_within_4se && ex_rejected) supports = "theorem3";
        CheckResult cr;
        cr.name = "x11sq_x22sq_arbitration";
        cr.status = decisive ? CheckStatus::Pass : CheckStatus::Inconclusive;
        cr.detail = "theorem3 = " + rational_to_string(rep.theorem3) + ", exact = " +
                    rational_to_string(rep.exact) + ", mc = " + fmt(rep.mc.mean) + " +- " +
                    fmt(rep.mc.stderr_) + ", mc supports " + supports;
        suite.checks.push_back(std::move(cr));
    }
    return suite;
}

inline SuiteResult verify_montecarlo(const VerifyOptions& opts) {
    using namespace verify_detail;
    SuiteResult suite{"montecarlo", {}};

    {
        Xoshiro256pp rng(opts.seed, 1);
        double worst = 0;
        for (int draw = 0; draw < 100; ++draw) {
            const SquareMatrix q = sample_haar_orthogonal(5, rng);
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 5; ++j) {
                    double dotc = 0;
                    for (int r = 0; r < 5; ++r) dotc += q.at(r, i) * q.at(r, j);
                    worst = std::max(worst, std::abs(dotc - (i == j ? 1.0 : 0.0)));
                }
        }
        add(suite, "haar_orthogonality", worst <= 1e-10,
            "max |Q^T Q - I| entry over 100 draws at n=5: " + fmt(worst));
    }
    {
        Xoshiro256pp rng(opts.seed, 2);
        double worst = 0;
        for (int draw = 0; draw < 100; ++draw)
            worst = std::max(worst, std::abs(norm2(sample_sphere(6, rng)) - 1.0));
        add(suite, "sphere_norm", worst <= 1e-12, "max |nrm - 1| over 100 draws at n=6: " + fmt(worst));
    }
    {
        // First-column covariance of a Haar draw: E(x_i1 x_j1) = delta_ij / n,
        // all entries accumulated over one stream of draws.
        const int n = 3;
        bool ok = true;
        Xoshiro256pp rng(opts.seed, 4);
        std::vector<double> sum(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
        std::vector<double> sumsq(sum.size(), 0.0);
        for (std::uint64_t s = 0; s < opts.samples; ++s) {
            const SquareMatrix q = sample_haar_orthogonal(n, rng);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double v = q.at(i, 0) * q.at(j, 0);
                    sum[static_cast<std::size_t>(i * n + j)] += v;
                    sumsq[static_cast<std::size_t>(i * n + j)] += v * v;
                }
        }
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n; ++j) {
                const double mean = sum[static_cast<std::size_t>(i * n + j)] / static_cast<double>(opts.samples);
                const double var = (sumsq[static_cast<std::size_t>(i * n + j)] -
                                    sum[static_cast<std::size_t>(i * n + j)] * mean) /
                                   static_cast<double>(opts.samples - 1);
                const double se = std::sqrt(std::max(var, 0.0) / static_cast<double>(opts.samples));
                const double exact = (i == j) ? 1.0 / n : 0.0;
                if (std::abs(mean - exact) > 4.0 * se) ok = false;
            }
        add(suite, "haar_column_covariance", ok, "covariance of first column matches I/n within 4 se at n=3");
    }
    {
        bool ok = true;
        const int n = 4;
        Xoshiro256pp rng(opts.seed, 3);
        std::vector<double> sum(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
        std::vector<double> sumsq(sum.size(), 0.0);
        const std::uint64_t draws = opts.samples;
        for (std::uint64_t s = 0; s < draws; ++s) {
            const Vector x = sample_sphere(n, rng);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double v = x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
                    sum[static_cast<std::size_t>(i * n + j)] += v;
                    sumsq[static_cast<std::size_t>(i * n + j)] += v * v;
                }
        }
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n; ++j) {
                const double mean = sum[static_cast<std::size_t>(i * n + j)] / static_cast<double>(draws);
                const double var = (sumsq[static_cast<std::size_t>(i * n + j)] -
                                    sum[static_cast<std::size_t>(i * n + j)] * mean) /
                                   static_cast<double>(draws - 1);
                const double se = std::sqrt(std::max(var, 0.0) / static_cast<double>(draws));
                const double exact = (i == j) ? 1.0 / n : 0.0;
                if (std::abs(mean - exact) > 4.0 * se) ok = false;
            }
        add(suite, "sphere_second_moments", ok, "E(x_i x_j) = delta_ij/n within 4 se at n=4");
    }
    {
        bool ok = true;
        std::string detail;
        int run = 0;
        for (int k : {1, 2, 3})
            for (int n : {2, 3, 5}) {
                SamplerConfig cfg{opts.seed + 100 + static_cast<std::uint64_t>(run++), opts.samples, n,
                                  opts.workers};
                const Estimate e = estimate_dot_power(n, k, cfg);
                const double exact = static_cast<double>(mu(k, n));
                if (!e.within(exact, 4.0)) {
                    ok = false;
                    detail += " miss(k=" + std::to_string(k) + ",n=" + std::to_string(n) + ")";
                }
            }
        add(suite, "dot_power_vs_mu", ok,
            "E(<x,y>^{2k}) matches mu_{k,n} within 4 se for k in {1,2,3}, n in {2,3,5}" + detail);
    }
    {
        bool ok = true;
        for (const auto& [n, m] : std::vector<std::pair<int, int>>{{3, 4}, {2, 2}, {3, 3}}) {
            SamplerConfig cfg{opts.seed + 150 + static_cast<std::uint64_t>(n * 10 + m), opts.samples, n,
                              opts.workers};
            const Lemma3Result r = estimate_lemma3(n, m, cfg);
            if (m % 2 == 0 && r.rhs != mu(m / 2, n)) ok = false;
            if (m % 2 != 0 && r.rhs != 0) ok = false;
            if (!r.lhs.within(static_cast<double>(r.rhs), 4.0)) ok = false;
        }
        add(suite, "lemma3_estimates", ok,
            "sampled <x,y>^m matches the exact projected norm within 4 se at (3,4),(2,2),(3,3)");
    }
    {
        bool ok = true;
        std::string detail;
        int run = 0;
        for (int n : {2, 3}) {
            // Single block of size 4: expectation of x^{tensor 4}.
            SamplerConfig cfg{opts.seed + 200 + static_cast<std::uint64_t>(run++), opts.samples, n,
                              opts.workers};
            const SetPartition part = SetPartition::single_block(4);
            const TensorEstimate est = estimate_tensor_expectation(part, n, cfg);
            const DenseTensor exact = generalized_expectation_dense(generalized_expectation(part, n), n);
            for (std::size_t i = 0; i < exact.entry_count(); ++i) {
                const double diff = std::abs(est.mean.entries()[i] - exact.entries()[i]);
                if (diff > 4.0 * est.stderr_.entries()[i]) {
                    ok = false;
                    detail += " miss(n=" + std::to_string(n) + ",entry=" + std::to_string(i) + ")";
                }
            }
        }
        {
            // Two blocks of size 2 at n=2: Lemma-5 pattern.
            SamplerConfig cfg{opts.seed + 250, opts.samples, 2, opts.workers};
            const SetPartition part({{1, 2}, {3, 4}});
            const TensorEstimate est = estimate_tensor_expectation(part, 2, cfg);
            const DenseTensor exact = generalized_expectation_dense(generalized_expectation(part, 2), 2);
            for (std::size_t i = 0; i < exact.entry_count(); ++i)
                if (std::abs(est.mean.entries()[i] - exact.entries()[i]) > 4.0 * est.stderr_.entries()[i])
                    ok = false;
        }
        add(suite, "tensor_expectation_entrywise", ok,
            "MC mean of x^{tensor 4} and of a two-block placement match exact expectations within 4 se" +
                detail);
    }
    {
        bool ok = true;
        int run = 0;
        const auto p2 = enumerate_pairings(2);
        std::vector<std::pair<Pairing, Pairing>> pairs = {
            {Pairing::nested_baseline(1), Pairing::nested_baseline(1)},
            {p2[0], p2[0]},
            {p2[0], p2[1]},
            {p2[1], p2[2]},
            {p2[0], p2[2]},
            {p2[2], p2[2]},
        };
        for (int n : {2, 3})
            for (const auto& [p, q] : pairs) {
                SamplerConfig cfg{opts.seed + 400 + static_cast<std::uint64_t>(run++), opts.samples, n,
                                  opts.workers};
                const Estimate e = estimate_pair_moment(p, q, n, cfg);
                if (!e.within(static_cast<double>(pair_moment_cor3(p, q, n)), 4.0)) ok = false;
            }
        add(suite, "pair_moment_vs_corollary3", ok,
            "6 pairing pairs at k<=2, n in {2,3} match n^{-(2k-l)} within 4 se");
    }
    {
        SamplerConfig cfg{opts.seed + 500, std::min<std::uint64_t>(opts.samples, 10'000), 3, opts.workers};
        const Estimate a = estimate_dot_power(3, 2, cfg);
        const Estimate b = estimate_dot_power(3, 2, cfg);
        const bool ok = a.mean == b.mean && a.stderr_ == b.stderr_ && a.samples == b.samples;
        add(suite, "reproducibility", ok, "identical config yields bit-identical estimates");
    }
    return suite;
}

inline std::vector<std::string> verify_suite_names() {
    return {"combinat", "gram", "moments", "sft", "corollary1", "corollary2", "weingarten", "montecarlo"};
}

inline SuiteResult run_suite(const std::string& name, const VerifyOptions& opts) {
    if (name == "combinat") return verify_combinat(opts);
    if (name == "gram") return verify_gram(opts);
    if (name == "moments") return verify_moments(opts);
    if (name == "sft") return verify_sft(opts);
    if (name == "corollary1") return verify_corollary1(opts);
    if (name == "corollary2") return verify_corollary2(opts);
    if (name == "weingarten") return verify_weingarten(opts);
    if (name == "montecarlo") return verify_montecarlo(opts);
    throw std::invalid_argument("run_suite: unknown suite '" + name + "'");
}

inline std::vector<SuiteResult> run_all_suites(const VerifyOptions& opts) {
    std::vector<SuiteResult> out;
    for (const auto& name : verify_suite_names()) out.push_back(run_suite(name, opts));
    return out;
}

} // namespace orthomom
