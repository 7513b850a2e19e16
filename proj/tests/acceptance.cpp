// Acceptance suite: end-to-end identities, Monte Carlo cross-checks and CLI
// reproducibility, one pass/fail line per criterion. Exits nonzero if any
// criterion fails.

#include "orthomom/orthomom.hpp"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

using namespace orthomom;

namespace {

int failures = 0;

void report(int number, const std::string& text, bool ok, const std::string& extra = "") {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << number << ". " << text;
    if (!extra.empty()) std::cout << " -- " << extra;
    std::cout << "\n" << std::flush;
    if (!ok) ++failures;
}

std::string run_cli_capture(const std::string& args, int& exit_code) {
    const std::string cmd = std::string(ORTHOMOM_CLI_PATH) + " " + args + " 2>/dev/null";
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        exit_code = -1;
        return out;
    }
    std::array<char, 8192> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

std::string pattern_of(const std::vector<int>& seq) {
    std::map<int, char> relabel;
    std::string s;
    for (int v : seq) {
        auto [it, fresh] = relabel.emplace(v, static_cast<char>('a' + relabel.size()));
        s += it->second;
    }
    return s;
}

} // namespace

int main() {
    constexpr std::uint64_t kSamples = 1'000'000;
    constexpr std::uint64_t kSeed = 42;

    // 1. Pairing counts (2k-1)!! for k = 1..5.
    {
        const std::vector<std::size_t> expected{1, 3, 15, 105, 945};
        bool ok = true;
        for (int k = 1; k <= 5; ++k)
            if (enumerate_pairings(k).size() != expected[static_cast<std::size_t>(k - 1)]) ok = false;
        report(1, "pairing counts 1, 3, 15, 105, 945 for k = 1..5", ok);
    }

    // 2. Dense inner products equal n^|PvQ| exactly for k <= 3, n in {1,2,3}.
    {
        bool ok = true;
        for (int k = 1; k <= 3 && ok; ++k) {
            const auto ps = enumerate_pairings(k);
            for (int n = 1; n <= 3 && ok; ++n)
                for (const auto& p : ps)
                    for (const auto& q : ps) {
                        const double lhs =
                            inner(standard_invariant_dense(p, n), standard_invariant_dense(q, n));
                        if (lhs != static_cast<double>(int_pow(n, join_block_count(p, q)))) ok = false;
                    }
        }
        report(2, "brute-force <I(P),I(Q)> = n^|PvQ| exactly, k <= 3, n in {1,2,3}", ok);
    }

    // 3. Row sums equal P(n,k) symbolically for k <= 5; Gram entry average
    //    equals 1/mu_{k,n} exactly for k <= 4, n in {2,3,5}.
    {
        bool ok = true;
        for (int k = 1; k <= 5; ++k)
            if (gram_row_sum(k) != p_poly(k)) ok = false;
        for (int k = 1; k <= 4; ++k)
            for (int n : {2, 3, 5})
                if (gram_entry_average(k, n) != Rational(1) / mu(k, n)) ok = false;
        report(3, "row sums = P(n,k) symbolically (k <= 5); entry average = 1/mu (k <= 4)", ok);
    }

    // 4. Normal equations G alpha = 1 with alpha = 1/P(n,k), k <= 4, n in {1,2,3,5}.
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
        report(4, "normal equations G alpha = 1 hold exactly, k <= 4, n in {1,2,3,5}", ok);
    }

    // 5. Sampled dot powers match mu_{k,n} within 4 standard errors.
    {
        bool ok = true;
        std::string extra;
        int run = 0;
        for (int k : {1, 2, 3})
            for (int n : {2, 3, 5}) {
                SamplerConfig cfg{kSeed + static_cast<std::uint64_t>(run++), kSamples, n, 1};
                const Estimate e = estimate_dot_power(n, k, cfg);
                const double exact = static_cast<double>(mu(k, n));
                if (!(std::abs(e.mean - exact) < 4.0 * e.stderr_)) {
                    ok = false;
                    extra += "(k=" + std::to_string(k) + ",n=" + std::to_string(n) + ") ";
                }
            }
        report(5, "E(<x,y>^{2k}) vs mu_{k,n} within 4 se, (k,n) in {1,2,3}x{2,3,5}, 1e6 samples",
               ok, ok ? "e.g. mu(2,3) = " + rational_to_string(mu(2, 3)) : extra);
    }

    // 6. Entrywise Monte Carlo mean of x tensor x tensor x tensor x matches
    //    (1/P(n,2)) sum of invariants at n in {2,3}.
    {
        bool ok = true;
        for (int n : {2, 3}) {
            SamplerConfig cfg{kSeed + static_cast<std::uint64_t>(20 + n), kSamples, n, 1};
            const TensorEstimate est = estimate_tensor_expectation(SetPartition::single_block(4), n, cfg);
            const DenseTensor exact = evaluate_combination_dense(veronese_expectation(4, n), n);
            for (std::size_t i = 0; i < exact.entry_count(); ++i)
                if (!(std::abs(est.mean.entries()[i] - exact.entries()[i]) <
                      4.0 * est.stderr_.entries()[i]))
                    ok = false;
        }
        report(6, "MC mean of the order-4 veronese tensor matches (1/P(n,2)) sum I(P) entrywise", ok);
    }

    // 7. The alternating relations evaluate to the exact zero tensor for
    //    k > n and nonzero for k <= n.
    {
        bool ok = true;
        for (const auto& [k, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {4, 3}})
            if (evaluate_combination_dense(sft_relation(k), n).max_abs() != 0.0) ok = false;
        for (const auto& [k, n] : std::vector<std::pair<int, int>>{{2, 2}, {3, 3}})
            if (evaluate_combination_dense(sft_relation(k), n).max_abs() == 0.0) ok = false;
        report(7, "alternating relations vanish dense for (2,1),(3,1),(3,2),(4,3); nonzero for (2,2),(3,3)",
               ok);
    }

    // 8. Inverse-Gram row sums reproduce the veronese expectation exactly.
    {
        bool ok = true;
        std::string extra;
        for (const auto& [k, n] : std::vector<std::pair<int, int>>{{1, 2}, {2, 1}, {2, 3}, {3, 2}}) {
            const auto res = corollary1_identity(k, n);
            if (res.residual != 0.0) ok = false;
            extra += "(" + std::to_string(k) + "," + std::to_string(n) + "):" +
                     std::to_string(res.basis.size()) + " ";
        }
        report(8, "sum s_i I(P_i) - mu A_m residual exactly zero at (1,2),(2,1),(2,3),(3,2)", ok,
               "basis sizes " + extra);
    }

    // 9. Gram rows match the Kronecker-product row multisets for k <= 4.
    {
        bool ok = true;
        for (int k = 1; k <= 4; ++k)
            if (!corollary2_check(k).all_ok()) ok = false;
        report(9, "Gram rows match M_1 x M_3 x ... x M_{2k-1} row multisets, k <= 4", ok);
    }

    // 10. Sampled generalized-veronese pair moments match n^{-(2k-l)}.
    {
        bool ok = true;
        const auto p2 = enumerate_pairings(2);
        const std::vector<std::pair<Pairing, Pairing>> pairs = {
            {Pairing({{1, 2}}), Pairing({{1, 2}})},
            {p2[0], p2[0]},
            {p2[0], p2[1]},
            {p2[1], p2[2]},
            {p2[0], p2[2]},
            {p2[1], p2[1]},
        };
        int run = 0;
        for (int n : {2, 3})
            for (const auto& [p, q] : pairs) {
                SamplerConfig cfg{kSeed + static_cast<std::uint64_t>(40 + run++), kSamples, n, 1};
                const Estimate e = estimate_pair_moment(p, q, n, cfg);
                const double exact = static_cast<double>(pair_moment_cor3(p, q, n));
                if (!(std::abs(e.mean - exact) < 4.0 * e.stderr_)) ok = false;
            }
        report(10, "6 pairing-pair moments vs n^{-(2k-|PvQ|)} within 4 se at n in {2,3}", ok);
    }

    // 11. Single-row queries: the factorized recipe equals the exact solver
    //     for every query with m <= 6 at n in {2,3,5}; the fourth-moment value
    //     is 3/(n(n+2)) and Monte Carlo agrees within 4 se.
    {
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
                    const std::string key = std::to_string(m) + ":" + pattern_of(cols);
                    auto it = memo.find(key);
                    if (it == memo.end()) it = memo.emplace(key, exact_moment(q)).first;
                    if (theorem3_moment(q) != it->second) ok = false;
                    ++checked;
                } while (ok && next_index_tuple(cols, n));
            }
        }
        int run = 0;
        for (int n : {2, 3, 5}) {
            const MomentQuery q(n, {{1, 1}, {1, 1}, {1, 1}, {1, 1}});
            const Rational expected(3, BigInt(n) * (n + 2));
            if (theorem3_moment(q) != expected || exact_moment(q) != expected) ok = false;
            SamplerConfig cfg{kSeed + static_cast<std::uint64_t>(60 + run++), kSamples, n, 1};
            const Estimate e = estimate_query_moment(q, cfg);
            if (!(std::abs(e.mean - static_cast<double>(expected)) < 4.0 * e.stderr_)) ok = false;
        }
        report(11, "single-row queries: theorem3 = exact on all m <= 6 queries; x11^4 = 3/(n(n+2)) vs MC",
               ok, std::to_string(checked) + " queries checked");
    }

    // 12. The l = 2 discrepancy: both values are computed, and the 1e6-sample
    //     estimate separates them at more than 6 standard errors. Recording
    //     which value the sampler supports is the acceptance outcome; the
    //     disagreement itself does not fail the build.
    {
        const MomentQuery q(2, {{1, 1}, {1, 1}, {2, 2}, {2, 2}});
        const Rational t3 = theorem3_moment(q);
        const Rational ex = exact_moment(q);
        SamplerConfig cfg{kSeed + 70, kSamples, 2, 1};
        const Estimate mc = estimate_query_moment(q, cfg);
        const double dt3 = std::abs(mc.mean - static_cast<double>(t3)) / mc.stderr_;
        const double dex = std::abs(mc.mean - static_cast<double>(ex)) / mc.stderr_;
        const bool values_ok = (t3 == Rational(1, 4)) && (ex == Rational(3, 8));
        const bool decisive = dt3 > 6.0 || dex > 6.0;
        std::string supports = "neither";
        if (dex <= 4.0 && dt3 > 6.0) supports = "exact";
        else if (dt3 <= 4.0 && dex > 6.0) supports = "theorem3";
        report(12, "x11^2 x22^2 at n=2: theorem3 = 1/4, exact = 3/8, MC decisive at > 6 se",
               values_ok && decisive,
               "mc = " + std::to_string(mc.mean) + " +- " + std::to_string(mc.stderr_) +
                   ", supports " + supports);
    }

    // 13. The full verification suite is byte-identical across runs.
    {
        int code_a = -1, code_b = -1;
        const std::string a = run_cli_capture("verify --suite all --seed 42 --workers 1", code_a);
        const std::string b = run_cli_capture("verify --suite all --seed 42 --workers 1", code_b);
        const bool ok = !a.empty() && a == b && code_a == code_b && code_a == 0;
        report(13, "verify --suite all --seed 42 --workers 1 twice: byte-identical JSON, exit 0", ok,
               "bytes " + std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                   ", exit codes " + std::to_string(code_a) + "/" + std::to_string(code_b));
    }

    std::cout << (failures == 0 ? "ACCEPTANCE: all 13 criteria passed"
                                : "ACCEPTANCE: " + std::to_string(failures) + " criterion(s) failed")
              << "\n";
    return failures == 0 ? 0 : 1;
}
