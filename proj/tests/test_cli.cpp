#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef ALPHAFORGE_CLI_PATH
#define ALPHAFORGE_CLI_PATH "alphaforge"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string out_file = std::string("/tmp/alphaforge_cli_test_") +
                           std::to_string(reinterpret_cast<uintptr_t>(&args) % 100000) +
                           ".out";
    std::string cmd = std::string(ALPHAFORGE_CLI_PATH) + " " + args + " > " + out_file +
                      " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    std::remove(out_file.c_str());
    return {WEXITSTATUS(rc), ss.str()};
}

}  // namespace

TEST_CASE("cli: alpha JSON report re-parses with full configuration") {
    auto r = run_cli("alpha --poly \"1,0,1\" --cutoff 100000 --json --workers 2");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == "alpha-forge/1");
    CHECK(j["command"] == "alpha");
    CHECK(j["poly"] == "1,0,1");
    CHECK(j["cutoff"] == 100000);
    CHECK(j["partial_sum"].is_number());
    CHECK(j["config"]["workers"] == 2);
    CHECK(j["config"]["segment_size"] == 1048576);
    CHECK(j.contains("seconds"));
}

TEST_CASE("cli: rh-tail fields") {
    auto r = run_cli("alpha --poly \"1,0,1\" --cutoff 10000 --rh-tail --json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["assumes_rh"] == true);
    double lo = j["interval_lo"], hi = j["interval_hi"], ps = j["partial_sum"],
           tb = j["tail_bound"];
    CHECK(lo == ps - tb);
    CHECK(hi == ps + tb);
}

TEST_CASE("cli: rho and psi values") {
    auto r = run_cli("rho --u 2");
    REQUIRE(r.exit_code == 0);
    CHECK(std::stod(r.out) == doctest::Approx(0.30685281944005452).epsilon(1e-12));
    auto d = run_cli("rho --u 2 --deriv 1");
    CHECK(std::stod(d.out) == doctest::Approx(-0.5).epsilon(1e-12));
    auto p = run_cli("psi --x 100 --bound 5");
    REQUIRE(p.exit_code == 0);
    CHECK(std::stoull(p.out) == 34);
}

TEST_CASE("cli: worker counts 1 and 8 give identical numeric fields") {
    auto r1 = run_cli("alpha --poly \"1,0,1\" --cutoff 2000000 --rh-tail --json --workers 1");
    auto r8 = run_cli("alpha --poly \"1,0,1\" --cutoff 2000000 --rh-tail --json --workers 8");
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r8.exit_code == 0);
    auto j1 = nlohmann::json::parse(r1.out);
    auto j8 = nlohmann::json::parse(r8.out);
    j1.erase("seconds");
    j8.erase("seconds");
    j1["config"].erase("workers");
    j8["config"].erase("workers");
    CHECK(j1.dump() == j8.dump());
}

TEST_CASE("cli: exit codes") {
    CHECK(run_cli("alpha --poly \"1,0,1\"").exit_code == 64);   // missing --cutoff
    CHECK(run_cli("nonsense").exit_code == 64);                  // unknown subcommand
    CHECK(run_cli("census --poly \"-2,0,1\" --norm-bound 100 --smooth-bound 10")
              .exit_code == 2);                                  // indefinite form
    CHECK(run_cli("rho --u 200").exit_code == 2);                // beyond u_max
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("cli: census with oracle cross-check") {
    auto r = run_cli("census --poly \"1,0,1\" --norm-bound 5000 --smooth-bound 30 "
                     "--oracle --json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["pairs_total"].get<std::uint64_t>() > 0);
}

TEST_CASE("cli: experiment CSV has one row per (x,B)") {
    auto r = run_cli("experiment-t42 --poly \"5,0,1\" --norm-bound 20000,40000 "
                     "--smooth-bound 50,100 --alpha-cutoff 10000 --csv");
    REQUIRE(r.exit_code == 0);
    int lines = 0;
    for (char c : r.out)
        if (c == '\n') ++lines;
    CHECK(lines == 5);  // header + 4 rows
}

TEST_CASE("cli: avg sweep output") {
    auto r = run_cli("avg --degree 2 --prime 3 --sweep 5,10 --json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["rows"].size() == 2);
    CHECK(j["rows"][0]["m"] == 5);
}
