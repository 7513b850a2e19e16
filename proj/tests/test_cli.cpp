#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

// Runs the CLI with stderr dropped; stdout is captured byte for byte.
CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(ORTHOMOM_CLI_PATH) + " " + args + " 2>/dev/null";
    CliResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

using Json = nlohmann::json;

} // namespace

TEST_CASE("pairings subcommand") {
    const CliResult r = run_cli("pairings --k 2");
    REQUIRE(r.exit_code == 0);
    const Json j = Json::parse(r.out);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 3);
    CHECK(j[0].dump() == "[[1,2],[3,4]]");
    CHECK(j[1].dump() == "[[1,3],[2,4]]");
    CHECK(j[2].dump() == "[[1,4],[2,3]]");

    const CliResult one = run_cli("pairings --k 1");
    CHECK(Json::parse(one.out).size() == 1);

    // --m is the tensor-order spelling of the same request.
    const CliResult viam = run_cli("pairings --m 4");
    CHECK(viam.exit_code == 0);
    CHECK(viam.out == r.out);
}

TEST_CASE("pairings over the cap exits with the resource code") {
    const CliResult r = run_cli("pairings --k 9");
    CHECK(r.exit_code == 3);
    CHECK(r.out.empty());
}

TEST_CASE("gram subcommand symbolic and evaluated") {
    const CliResult sym = run_cli("gram --k 2");
    REQUIRE(sym.exit_code == 0);
    const Json js = Json::parse(sym.out);
    CHECK(js["k"] == 2);
    CHECK(js["entries"][0] == Json::array({"n^2", "n^1", "n^1"}));
    CHECK(js["entries"][1] == Json::array({"n^1", "n^2", "n^1"}));

    const CliResult eval = run_cli("gram --k 2 --n 3");
    REQUIRE(eval.exit_code == 0);
    const Json je = Json::parse(eval.out);
    CHECK(je["entries"][0] == Json::array({"9", "3", "3"}));
    CHECK(je["entries"][2] == Json::array({"3", "3", "9"}));

    const CliResult k1 = run_cli("gram --k 1");
    CHECK(Json::parse(k1.out)["entries"][0] == Json::array({"n^1"}));
}

TEST_CASE("moment subcommand methods") {
    const CliResult exact = run_cli("moment --n 3 --q \"1,1;1,1;1,1;1,1\" --method exact");
    REQUIRE(exact.exit_code == 0);
    const Json je = Json::parse(exact.out);
    CHECK(je["exact"] == "1/5");
    CHECK(je["n"] == 3);
    CHECK(je["query"].size() == 4);

    const CliResult t3 = run_cli("moment --n 2 --q \"1,1;1,1;2,2;2,2\" --method theorem3");
    CHECK(Json::parse(t3.out)["theorem3"] == "1/4");

    const CliResult all =
        run_cli("moment --n 2 --q \"1,1;2,2\" --method all --samples 20000 --seed 9");
    REQUIRE(all.exit_code == 0);
    const Json ja = Json::parse(all.out);
    CHECK(ja["theorem3"] == "0");
    CHECK(ja["exact"] == "0");
    CHECK(std::abs(ja["mc"]["mean"].get<double>()) < 0.05);
    CHECK(ja["mc"]["samples"] == 20000);
    CHECK(ja["mc"]["seed"] == 9);
    CHECK(ja["agreement"].contains("exact_within_4se"));

    const CliResult arb =
        run_cli("moment --n 2 --q \"1,1;1,1;2,2;2,2\" --method all --samples 50000 --seed 4");
    const Json jarb = Json::parse(arb.out);
    CHECK(jarb["theorem3"] == "1/4");
    CHECK(jarb["exact"] == "3/8");
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("moment --n 2 --q \"1,1;zz\" --method exact").exit_code == 2);
    CHECK(run_cli("moment --n 2 --q \"1,5\" --method exact").exit_code == 2);
    CHECK(run_cli("moment --q \"1,1\"").exit_code == 2);       // missing --n
    CHECK(run_cli("verify --suite nosuchsuite").exit_code == 2);
    CHECK(run_cli("pairings").exit_code == 2);                 // neither --k nor --m
    CHECK(run_cli("pairings --k 2 --m 4").exit_code == 2);     // both
    CHECK(run_cli("nosuchcommand").exit_code == 2);
}

TEST_CASE("enumeration cap override via the environment") {
    // Lowering the cap makes a previously valid k hit the resource limit.
    const std::string cmd = "env ORTHOMOM_MAX_K=3 " + std::string(ORTHOMOM_CLI_PATH) +
                            " pairings --k 4 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 256> buf{};
    while (fread(buf.data(), 1, buf.size(), pipe) > 0) {
    }
    const int status = pclose(pipe);
    REQUIRE(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 3);

    // Without the override the same request is within the default cap.
    CHECK(run_cli("pairings --k 4").exit_code == 0);
}

TEST_CASE("verify subcommand runs a fast suite") {
    const CliResult r = run_cli("verify --suite combinat --seed 42");
    REQUIRE(r.exit_code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["suite"] == "combinat");
    CHECK(j["failed"] == 0);
    CHECK(j["passed"].get<int>() > 0);
    REQUIRE(j["suites"].size() == 1);
    for (const auto& check : j["suites"][0]["checks"]) CHECK(check["status"] == "pass");
}

TEST_CASE("verify output is byte-identical across runs") {
    const CliResult a = run_cli("verify --suite gram --seed 42 --workers 1");
    const CliResult b = run_cli("verify --suite gram --seed 42 --workers 1");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);

    const CliResult c = run_cli("verify --suite sft --seed 42 --workers 1");
    const CliResult d = run_cli("verify --suite sft --seed 42 --workers 1");
    REQUIRE(c.exit_code == 0);
    CHECK(c.out == d.out);
}

TEST_CASE("out flag mirrors stdout to a file") {
    const std::string path = "/tmp/orthomom_cli_test_out.json";
    std::remove(path.c_str());
    const CliResult r = run_cli("pairings --k 1 --out " + path);
    REQUIRE(r.exit_code == 0);
    FILE* f = fopen(path.c_str(), "rb");
    REQUIRE(f != nullptr);
    std::string content;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), f)) > 0) content.append(buf.data(), got);
    fclose(f);
    std::remove(path.c_str());
    CHECK(content == r.out);
}
