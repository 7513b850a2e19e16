// Command-line surface: pairing enumeration, Gram matrices, matrix-entry
// moments and the verification suites, all emitting JSON on stdout.
// Exit codes: 0 success, 1 check failure, 2 usage error, 3 size-cap exceeded.

#include "orthomom/orthomom.hpp"
#include "orthomom/serialize.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace {

using orthomom::Json;

std::vector<std::pair<int, int>> parse_query(const std::string& text) {
    std::vector<std::pair<int, int>> factors;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(';', pos);
        if (end == std::string::npos) end = text.size();
        const std::string token = text.substr(pos, end - pos);
        const std::size_t comma = token.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("query token '" + token + "' is not of the form i,j");
        std::size_t used_i = 0, used_j = 0;
        const int i = std::stoi(token.substr(0, comma), &used_i);
        const int j = std::stoi(token.substr(comma + 1), &used_j);
        if (used_i != comma || used_j != token.size() - comma - 1)
            throw std::invalid_argument("query token '" + token + "' is not of the form i,j");
        factors.emplace_back(i, j);
        pos = end + 1;
    }
    if (factors.empty()) throw std::invalid_argument("query must contain at least one i,j factor");
    return factors;
}

void emit(const Json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file '" + out_path + "'");
        f << text;
    }
}

Json suite_to_json(const orthomom::SuiteResult& s) {
    Json checks = Json::array();
    for (const auto& c : s.checks)
        checks.push_back(Json{{"name", c.name}, {"status", orthomom::to_string(c.status)}, {"detail", c.detail}});
    return Json{{"suite", s.suite},
                {"checks", std::move(checks)},
                {"passed", s.count(orthomom::CheckStatus::Pass)},
                {"failed", s.count(orthomom::CheckStatus::Fail)},
                {"inconclusive", s.count(orthomom::CheckStatus::Inconclusive)}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and Monte Carlo moments of Haar-random orthogonal matrices"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags such as --out may follow the subcommand

    std::string out_path;
    app.add_option("--out", out_path, "Also write the JSON output to this file");

    int k = 0;
    int m = 0;
    int n = 0;
    std::string query_text;
    std::string method = "all";
    std::string suite = "all";
    std::uint64_t seed = 42;
    std::uint64_t samples = 1'000'000;
    int workers = 1;

    auto* cmd_pairings = app.add_subcommand("pairings", "Enumerate the pairings of {1,...,2k}");
    auto* pk = cmd_pairings->add_option("--k", k, "Number of pairs");
    auto* pm = cmd_pairings->add_option("--m", m, "Tensor order 2k (alternative to --k)");
    pk->excludes(pm);

    auto* cmd_gram = app.add_subcommand("gram", "Gram matrix of the standard invariants");
    auto* gk = cmd_gram->add_option("--k", k, "Number of pairs");
    auto* gm = cmd_gram->add_option("--m", m, "Tensor order 2k (alternative to --k)");
    gk->excludes(gm);
    cmd_gram->add_option("--n", n, "Evaluate entries at this dimension (symbolic n^l otherwise)");

    auto* cmd_moment = app.add_subcommand("moment", "Moment of a product of matrix entries");
    cmd_moment->add_option("--n", n, "Matrix dimension")->required();
    cmd_moment->add_option("--q", query_text, "Semicolon-separated i,j factors, e.g. 1,1;1,1")->required();
    cmd_moment->add_option("--method", method, "theorem3 | exact | mc | all")
        ->check(CLI::IsMember({"theorem3", "exact", "mc", "all"}));
    cmd_moment->add_option("--seed", seed, "RNG seed");
    cmd_moment->add_option("--samples", samples, "Monte Carlo sample count");
    cmd_moment->add_option("--workers", workers, "Worker threads (1 = reproducibility reference)");

    auto* cmd_verify = app.add_subcommand("verify", "Run a verification suite");
    cmd_verify->add_option("--suite", suite,
                           "combinat|gram|moments|sft|corollary1|corollary2|weingarten|montecarlo|all");
    cmd_verify->add_option("--seed", seed, "RNG seed");
    cmd_verify->add_option("--samples", samples, "Monte Carlo sample count per check");
    cmd_verify->add_option("--workers", workers, "Worker threads (1 = reproducibility reference)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    auto resolve_k = [&](const CLI::App* cmd) {
        const bool has_k = cmd->count("--k") > 0;
        const bool has_m = cmd->count("--m") > 0;
        if (has_k == has_m) throw std::invalid_argument("exactly one of --k and --m is required");
        if (has_k) return k;
        if (m < 2 || m % 2 != 0) throw std::invalid_argument("--m must be a positive even tensor order");
        return m / 2;
    };

    try {
        if (*cmd_pairings) {
            Json arr = Json::array();
            for (const auto& p : orthomom::enumerate_pairings(resolve_k(cmd_pairings)))
                arr.push_back(orthomom::pairing_to_json(p));
            emit(arr, out_path);
            return 0;
        }

        if (*cmd_gram) {
            const orthomom::GramMatrix g = orthomom::gram_matrix(resolve_k(cmd_gram));
            const std::optional<int> dim =
                cmd_gram->count("--n") ? std::optional<int>(n) : std::nullopt;
            if (dim && *dim < 1) throw std::invalid_argument("gram: --n must be >= 1");
            emit(orthomom::gram_to_json(g, dim), out_path);
            return 0;
        }

        if (*cmd_moment) {
            const orthomom::MomentQuery q(n, parse_query(query_text));
            const orthomom::SamplerConfig cfg{seed, samples, n, workers};
            Json out;
            if (method == "all") {
                out = orthomom::compare_report_to_json(q, orthomom::compare_methods(q, cfg), cfg);
            } else {
                Json query = Json::array();
                for (const auto& [i, j] : q.factors) query.push_back(Json::array({i, j}));
                out = Json{{"query", std::move(query)}, {"n", q.n}};
                if (method == "theorem3")
                    out["theorem3"] = orthomom::rational_to_string(orthomom::theorem3_moment(q));
                else if (method == "exact")
                    out["exact"] = orthomom::rational_to_string(orthomom::exact_moment(q));
                else
                    out["mc"] = orthomom::estimate_to_json(orthomom::estimate_query_moment(q, cfg), cfg);
            }
            emit(out, out_path);
            return 0;
        }

        // verify
        const orthomom::VerifyOptions opts{seed, samples, workers};
        std::vector<orthomom::SuiteResult> results;
        if (suite == "all")
            results = orthomom::run_all_suites(opts);
        else
            results.push_back(orthomom::run_suite(suite, opts));

        Json suites = Json::array();
        int passed = 0, failed = 0, inconclusive = 0;
        for (const auto& s : results) {
            suites.push_back(suite_to_json(s));
            passed += s.count(orthomom::CheckStatus::Pass);
            failed += s.count(orthomom::CheckStatus::Fail);
            inconclusive += s.count(orthomom::CheckStatus::Inconclusive);
        }
        emit(Json{{"suite", suite},
                  {"seed", seed},
                  {"samples", samples},
                  {"workers", workers},
                  {"suites", std::move(suites)},
                  {"passed", passed},
                  {"failed", failed},
                  {"inconclusive", inconclusive}},
             out_path);
        return failed > 0 ? 1 : 0;
    } catch (const orthomom::size_limit_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
