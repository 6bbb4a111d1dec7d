#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <sys/wait.h>

#include "srlnc/experiments.hpp"

using namespace srlnc::experiments;

namespace {

int run_cli(const std::string& args) {
    int status = std::system(("./srlnc " + args + " >/dev/null 2>&1").c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const char* path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("method names round-trip through the parser") {
    auto ms = parse_methods("stein-chen,lower-bound,upper-bound,exact-classic,monte-carlo");
    REQUIRE(ms.size() == 5);
    CHECK(ms[0] == Method::SteinChen);
    CHECK(ms[4] == Method::MonteCarlo);
    for (Method m : ms) CHECK(parse_methods(method_name(m)).front() == m);
    CHECK_THROWS_AS(parse_methods("stein-chen,bogus"), std::invalid_argument);
    CHECK_THROWS_AS(parse_methods(""), std::invalid_argument);
}

TEST_CASE("rank sweeps emit the documented schema") {
    RunConfig cfg;
    cfg.k = 2;
    cfg.q = 2;
    cfg.p = 0.5;
    cfg.n_start = 2;
    cfg.n_end = 3;
    cfg.methods = {Method::ExactClassic};
    std::ostringstream out;
    out << rank_csv_header();
    run_rank(cfg, out);
    CHECK(out.str() ==
          "K,n,q,p,method,value,ci_half_width,m_star\n"
          "2,2,2,0.5,exact-classic,0.375,,\n"
          "2,3,2,0.5,exact-classic,0.65625,,\n");
}

TEST_CASE("approximation rows carry the chosen order") {
    RunConfig cfg;
    cfg.k = 5;
    cfg.p = 0.8;
    cfg.n_start = 5;
    cfg.n_end = 6;
    cfg.methods = {Method::SteinChen};
    std::ostringstream out;
    run_rank(cfg, out);
    std::string s = out.str();
    // Two rows, each ending in a nonempty integer order column.
    size_t rows = 0;
    std::istringstream lines(s);
    std::string line;
    while (std::getline(lines, line)) {
        ++rows;
        auto last_comma = line.rfind(',');
        REQUIRE(last_comma != std::string::npos);
        std::string m_star = line.substr(last_comma + 1);
        CHECK_FALSE(m_star.empty());
        CHECK(std::stoul(m_star) >= 2);
    }
    CHECK(rows == 2);
}

TEST_CASE("simulation rows carry a confidence interval") {
    RunConfig cfg;
    cfg.k = 3;
    cfg.p = 0.5;
    cfg.n_start = 3;
    cfg.n_end = 4;
    cfg.methods = {Method::MonteCarlo};
    cfg.sim.trials = 2000;
    cfg.sim.master_seed = 4;
    std::ostringstream out;
    run_rank(cfg, out);
    std::istringstream lines(out.str());
    std::string line;
    while (std::getline(lines, line)) {
        // value and ci populated, order column empty
        CHECK(line.back() == ',');
        auto mc_pos = line.find(",monte-carlo,");
        REQUIRE(mc_pos != std::string::npos);
    }
}

TEST_CASE("sweep output is byte-identical across repeated runs") {
    RunConfig cfg;
    cfg.k = 4;
    cfg.p = 0.7;
    cfg.n_start = 4;
    cfg.n_end = 10;
    cfg.methods = {Method::SteinChen, Method::MonteCarlo, Method::LowerBound};
    cfg.sim.trials = 3000;
    cfg.sim.master_seed = 8;
    std::ostringstream a, b;
    run_rank(cfg, a);
    run_rank(cfg, b);
    CHECK(a.str() == b.str());
    CHECK_FALSE(a.str().empty());
}

TEST_CASE("delivery sweeps pair analytic and simulated curves") {
    RunConfig cfg;
    cfg.k = 4;
    cfg.p = 0.7;
    cfg.epsilon = 0.1;
    cfg.n_start = 4;
    cfg.n_end = 8;
    cfg.methods = {Method::SteinChen, Method::MonteCarlo};
    cfg.sim.trials = 2000;
    cfg.sim.master_seed = 15;
    std::ostringstream out;
    run_delivery(cfg, out);
    std::istringstream lines(out.str());
    std::string line;
    size_t analytic_rows = 0, sim_rows = 0;
    while (std::getline(lines, line)) {
        if (line.find(",stein-chen,") != std::string::npos) {
            ++analytic_rows;
            CHECK(line.back() == ',');  // no interval on model curves
        }
        if (line.find(",monte-carlo,") != std::string::npos) {
            ++sim_rows;
            CHECK(line.back() != ',');
        }
    }
    CHECK(analytic_rows == 5);
    CHECK(sim_rows == 5);
}

TEST_CASE("overhead sweeps report censoring on the diagnostic stream only") {
    RunConfig cfg;
    cfg.k = 6;
    cfg.p = 0.8;
    cfg.methods = {Method::MonteCarlo};
    cfg.epsilons = {0.3};
    cfg.sim.trials = 500;
    cfg.sim.master_seed = 2;
    cfg.sim.max_transmissions = 8;  // force heavy censoring
    std::ostringstream out, diag;
    run_overhead(cfg, out, diag);
    CHECK(diag.str().find("warning") != std::string::npos);
    CHECK(out.str().find("warning") == std::string::npos);
    std::istringstream lines(out.str());
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line.rfind("6,2,0.8,0.3,monte-carlo,", 0) == 0);
}

TEST_CASE("score sweeps emit one row per method and sparsity") {
    RunConfig cfg;
    cfg.k = 4;
    cfg.p = 0.7;
    cfg.epsilon = 0.1;
    cfg.n_start = 4;
    cfg.n_end = 8;
    cfg.methods = {Method::SteinChen, Method::UpperBound};
    cfg.ps = {0.6, 0.8};
    cfg.sim.trials = 2000;
    cfg.sim.master_seed = 6;
    std::ostringstream out;
    run_score(cfg, out);
    std::istringstream lines(out.str());
    std::string line;
    size_t rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 4);  // two methods x two sparsity values
}

TEST_CASE("presets expose the documented figure grids") {
    auto names = preset_names();
    CHECK(names.size() == 6);
    CHECK(preset("fig1").command == "rank");
    CHECK(preset("fig2a").command == "delivery");
    CHECK(preset("fig2a").runs.size() == 3);
    CHECK(preset("fig2b").runs.size() == 3);
    CHECK(preset("fig3").command == "delivery");
    CHECK(preset("fig3").runs.size() == 4);
    CHECK(preset("fig4").command == "delivery");
    CHECK(preset("fig5").command == "overhead");
    CHECK(preset("fig5").runs.size() == 6);
    for (const auto& run : preset("fig5").runs) {
        CHECK(run.epsilons.size() == 7);  // 0 .. 0.3 in steps of 0.05
        CHECK(run.q == 2);
    }
    CHECK_THROWS_AS(preset("fig6"), std::invalid_argument);
}

TEST_CASE("command line runs a sweep to a file and exits cleanly") {
    const char* path = "cli_rank_test.csv";
    std::remove(path);
    int rc = run_cli("rank --K 4 --q 2 --p 0.5 --N-start 4 --N-end 6 "
                     "--methods exact-classic --output cli_rank_test.csv");
    CHECK(rc == 0);
    std::string csv = slurp(path);
    CHECK(csv.rfind("K,n,q,p,method,value,ci_half_width,m_star\n", 0) == 0);
    CHECK(csv.find("exact-classic") != std::string::npos);
    std::remove(path);
}

TEST_CASE("command line rejects invalid requests with exit code one") {
    CHECK(run_cli("rank --K 4 --p 0.7 --methods exact-classic") == 1);
    CHECK(run_cli("rank --K 4 --methods bogus") == 1);
    CHECK(run_cli("frobnicate") == 1);
    CHECK(run_cli("rank --K 4 --N-start 10 --N-end 5") == 1);
}

TEST_CASE("command line reports runtime failures with exit code two") {
    CHECK(run_cli("overhead --K 5 --p 0.7 --epsilon 0.99 --methods stein-chen") == 2);
}

TEST_CASE("command line help exits cleanly") {
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("rank --help") == 0);
}
