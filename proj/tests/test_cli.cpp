#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string command = std::string(ROBUSTBET_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buf[4096];
    for (;;) {
        const std::size_t got = std::fread(buf, 1, sizeof buf, pipe);
        if (got == 0) break;
        output.append(buf, got);
    }
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

bool contains(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gains csv for the full interval") {
    const CliResult r = run_cli("gains --pset 0:1 --n 2");
    CHECK(r.exit_code == 0);
    CHECK(r.output ==
          "# pset=0:1\n"
          "k,q,gain\n"
          "0,0,0\n"
          "1,0,-0.333333333333\n"
          "1,1,0.333333333333\n");
}

TEST_CASE("gains csv includes the static stage for the larger example") {
    const CliResult r = run_cli("gains --pset 0.25:0.95 --n 3");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "# pset=0.25:0.95\n"));
    CHECK(contains(r.output, "0,0,0.2\n"));
}

TEST_CASE("gains for a symmetric set is a no-bet table") {
    const CliResult r = run_cli("gains --pset 0.4:0.6 --n 1");
    CHECK(r.exit_code == 0);
    // last line is the single entry k=0,q=0
    std::istringstream lines(r.output);
    std::string line;
    std::string last;
    while (std::getline(lines, line))
        if (!line.empty()) last = line;
    REQUIRE(last.rfind("0,0,", 0) == 0);
    CHECK(std::abs(std::stod(last.substr(4))) < 1e-14);
}

TEST_CASE("gains json round-trips through a parser") {
    const CliResult r = run_cli("gains --pset 0:1 --n 2 --format json");
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    CHECK(doc["n"] == 2);
    CHECK(doc["pset"] == "0:1");
    REQUIRE(doc["gains"].size() == 2);
    CHECK(std::abs(doc["gains"][1][1].get<double>() - 1.0 / 3.0) < 1e-12);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("gains --pset 0.5:0.5 --n 2").exit_code == 2);
    CHECK(run_cli("gains --pset 0:1").exit_code == 2);          // missing --n
    CHECK(run_cli("gains --n 2").exit_code == 2);               // missing --pset
    CHECK(run_cli("gains --pset bogus --n 2").exit_code == 2);  // unparsable
    CHECK(run_cli("nonsense").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("compare emits the metadata line and dominated columns") {
    const CliResult r = run_cli("compare --pset 0.25:0.95 --n 3 --grid 21");
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.output);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "# pset=0.25:0.95 n=3");
    std::getline(lines, line);
    CHECK(line == "p,elg_star,elg_robust,elg_static");
    int rows = 0;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        ++rows;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream cells(line);
        double p = 0.0;
        double star = 0.0;
        double robust = 0.0;
        double stat = 0.0;
        cells >> p >> star >> robust >> stat;
        CHECK(star >= robust - 1e-12);
        CHECK(star >= stat - 1e-12);
        // static column follows the two-term closed form with K0 = 0.2
        const double closed = p * std::log(1.2) + (1.0 - p) * std::log(0.8);
        CHECK(std::abs(stat - closed) < 1e-11);
    }
    CHECK(rows == 21);

    SUBCASE("byte deterministic") {
        CHECK(run_cli("compare --pset 0.25:0.95 --n 3 --grid 21").output == r.output);
    }
}

TEST_CASE("simulate with a symmetric static controller reports zero growth") {
    const CliResult r =
        run_cli("simulate --controller static --pset 0.4:0.6 --n 5 --p-true 0.5 --trials 200");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "mean_log_growth: 0\n"));
    CHECK(contains(r.output, "ruin_count: 0\n"));
}

TEST_CASE("simulate certain doubling") {
    const CliResult r =
        run_cli("simulate --controller kelly:1 --n 4 --p-true 1 --v0 1 --trials 50");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "min_final_wealth: 16\n"));
    CHECK(contains(r.output, "max_final_wealth: 16\n"));
}

TEST_CASE("simulate json format and per-trial dump") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto csv_path = dir / "robustbet_trials_test.csv";
    const CliResult r = run_cli(
        "simulate --controller robust --pset 0.25:0.95 --n 3 --p-true 0.6 --trials 25 "
        "--seed 5 --format json --trials-csv " +
        csv_path.string());
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    CHECK(doc["controller"] == "robust");
    CHECK(doc["pset"] == "0.25:0.95");
    CHECK(doc["report"]["trials"] == 25);

    std::ifstream csv(csv_path);
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "trial,final_wealth,log_growth");
    int rows = 0;
    std::string line;
    while (std::getline(csv, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 25);
    std::filesystem::remove(csv_path);
}

TEST_CASE("simulate validation errors") {
    CHECK(run_cli("simulate --controller robust --n 3 --p-true 0.5").exit_code == 2);
    CHECK(run_cli("simulate --controller kelly:2 --n 3 --p-true 0.5").exit_code == 2);
    CHECK(run_cli("simulate --controller robust --pset 0:1 --n 3 --p-true 1.5").exit_code == 2);
}

TEST_CASE("verify passes on the worked examples") {
    const CliResult small = run_cli("verify --pset 0:1 --n 2");
    CHECK(small.exit_code == 0);
    CHECK(contains(small.output, "verify: PASS"));

    const CliResult larger = run_cli("verify --pset 0.25:0.95 --n 3");
    CHECK(larger.exit_code == 0);
    CHECK(contains(larger.output, "[PASS] oracle gain agreement"));
    CHECK(contains(larger.output, "[PASS] structural audit"));

    const CliResult audit_only = run_cli("verify --pset 0.25:0.95 --n 7");
    CHECK(audit_only.exit_code == 0);
    CHECK(contains(audit_only.output, "structural audit"));

    CHECK(run_cli("verify --pset 0.5:0.5 --n 2").exit_code == 2);
}

TEST_CASE("advise walks the table") {
    const CliResult skip = run_cli("advise --pset 0:1 --n 2 --history \"\"");
    CHECK(skip.exit_code == 0);
    CHECK(contains(skip.output, "gain: 0\n"));
    CHECK(contains(skip.output, "no bet"));

    const CliResult heads = run_cli("advise --pset 0:1 --n 2 --history H");
    CHECK(heads.exit_code == 0);
    CHECK(contains(heads.output, "bet 0.333333333333 of wealth on heads"));

    const CliResult tails = run_cli("advise --pset 0:1 --n 2 --history T");
    CHECK(tails.exit_code == 0);
    CHECK(contains(tails.output, "bet 0.333333333333 of wealth on tails"));

    const CliResult mixed = run_cli("advise --pset 0.25:0.95 --n 3 --history HT");
    CHECK(mixed.exit_code == 0);
    CHECK(contains(mixed.output, "gain: 0.117991631799"));

    CHECK(run_cli("advise --pset 0:1 --n 2 --history HH").exit_code == 2);
    CHECK(run_cli("advise --pset 0:1 --n 2 --history HX").exit_code == 2);
}

TEST_CASE("output file option") {
    const auto path = std::filesystem::temp_directory_path() / "robustbet_gains_test.csv";
    const CliResult r = run_cli("gains --pset 0:1 --n 2 --out " + path.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream content;
    content << in.rdbuf();
    CHECK(contains(content.str(), "k,q,gain"));
    std::filesystem::remove(path);
}

}  // TEST_SUITE
