#include "robustbet/simulate.hpp"

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "robustbet/elg.hpp"
#include "robustbet/rng.hpp"
#include "test_helpers.hpp"

using namespace robustbet;

TEST_SUITE("simulate") {

TEST_CASE("bernoulli mapping endpoints") {
    CHECK(bernoulli_heads(0, 0.5));
    CHECK_FALSE(bernoulli_heads(~std::uint64_t{0}, 0.5));
    CHECK(bernoulli_heads(~std::uint64_t{0}, 1.0));  // p = 1 always heads
    CHECK_FALSE(bernoulli_heads(0, 0.0));            // p = 0 never heads
}

TEST_CASE("no bet gives zero growth exactly") {
    SimConfig cfg;
    cfg.controller = StaticLinear{0.0};
    cfg.horizon = 4;
    cfg.p_true = 0.37;
    cfg.trials = 200;
    cfg.seed = 7;
    const SimReport report = run_simulation(cfg);
    CHECK(report.mean_log_growth == 0.0);
    CHECK(report.stderr_log_growth == 0.0);
    CHECK(report.ruin_count == 0);
    CHECK(report.min_final_wealth == 1.0);
    CHECK(report.max_final_wealth == 1.0);
}

TEST_CASE("certain heads with an all-in kelly bet doubles every flip") {
    SimConfig cfg;
    cfg.controller = kelly_perfect(1.0);
    cfg.horizon = 5;
    cfg.p_true = 1.0;
    cfg.trials = 50;
    const SimReport report = run_simulation(cfg);
    CHECK(report.min_final_wealth == 32.0);
    CHECK(report.max_final_wealth == 32.0);
    CHECK(report.mean_log_growth == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(report.ruin_count == 0);
}

TEST_CASE("all-in bet against a possible tail ruins some trials") {
    SimConfig cfg;
    cfg.controller = StaticLinear{1.0};
    cfg.horizon = 3;
    cfg.p_true = 0.5;
    cfg.trials = 500;
    cfg.seed = 3;
    const SimReport report = run_simulation(cfg);
    CHECK(report.ruin_count > 0);
    CHECK(report.mean_log_growth == kNegInf);
    CHECK(report.min_final_wealth == 0.0);
    // survivors all doubled three times
    CHECK(report.max_final_wealth == 8.0);
    CHECK(report.mean_log_growth_surviving == doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("fixed seeds reproduce reports exactly") {
    SimConfig cfg;
    cfg.controller = robust_optimal(make_uncertainty_set({{0.25, 0.95}}), 3);
    cfg.horizon = 3;
    cfg.p_true = 0.6;
    cfg.trials = 5000;
    cfg.seed = 42;
    const SimReport first = run_simulation(cfg);
    const SimReport second = run_simulation(cfg);
    CHECK(report_text(first) == report_text(second));

    cfg.seed = 43;
    const SimReport shifted = run_simulation(cfg);
    CHECK(report_text(first) != report_text(shifted));
}

TEST_CASE("sample mean tracks the exact expectation") {
    const Controller c = robust_optimal(make_uncertainty_set({{0.25, 0.95}}), 3);
    SimConfig cfg;
    cfg.controller = c;
    cfg.horizon = 3;
    cfg.p_true = 0.75;
    cfg.trials = 200000;
    cfg.seed = 2024;
    const SimReport report = run_simulation(cfg);
    const double exact = elg_at(c, 3, 0.75);
    CHECK(std::abs(report.mean_log_growth - exact) <= 4.0 * report.stderr_log_growth);
}

TEST_CASE("single path trajectories") {
    CHECK(single_path(StaticLinear{0.0}, 3, 2.0, {1, -1, 1}) ==
          std::vector<double>{2.0, 2.0, 2.0, 2.0});

    const Controller example1 = robust_optimal(make_uncertainty_set({{0.0, 1.0}}), 2);
    const auto win = single_path(example1, 2, 1.0, {1, 1});
    CHECK(win[0] == 1.0);
    CHECK(win[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(win[2] == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    const auto lose = single_path(example1, 2, 1.0, {1, -1});
    CHECK(lose[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    CHECK_THROWS_AS(single_path(example1, 2, 1.0, {1}), std::invalid_argument);
    CHECK_THROWS_AS(single_path(example1, 2, 0.0, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(single_path(example1, 3, 1.0, {1, 1, 1}), std::invalid_argument);
}

TEST_CASE("wealth stays positive for interior gains") {
    std::mt19937_64 rng(77);
    SimConfig cfg;
    cfg.controller = RobustTable{rb_test::random_gain_table(rng, 6, 0.99),
                                 make_uncertainty_set({{0.1, 0.9}})};
    cfg.horizon = 6;
    cfg.p_true = 0.5;
    cfg.trials = 2000;
    cfg.seed = 9;
    const SimReport report = run_simulation(cfg);
    CHECK(report.ruin_count == 0);
    CHECK(report.min_final_wealth > 0.0);
}

TEST_CASE("per-trial data and csv dump") {
    SimConfig cfg;
    cfg.controller = StaticLinear{0.25};
    cfg.horizon = 2;
    cfg.p_true = 0.5;
    cfg.trials = 10;
    cfg.keep_per_trial = true;
    const SimReport report = run_simulation(cfg);
    REQUIRE(report.per_trial_log_growth.size() == 10);
    REQUIRE(report.per_trial_final_wealth.size() == 10);
    std::ostringstream out;
    write_trials_csv(out, report);
    CHECK(out.str().rfind("trial,final_wealth,log_growth\n", 0) == 0);
    // header plus one row per trial
    std::size_t lines = 0;
    for (char ch : out.str())
        if (ch == '\n') ++lines;
    CHECK(lines == 11);

    cfg.keep_per_trial = false;
    const SimReport bare = run_simulation(cfg);
    std::ostringstream sink;
    CHECK_THROWS_AS(write_trials_csv(sink, bare), std::logic_error);
}

TEST_CASE("config validation") {
    SimConfig cfg;
    cfg.controller = StaticLinear{0.0};
    cfg.horizon = 2;
    cfg.p_true = 1.5;
    CHECK_THROWS_AS(run_simulation(cfg), std::invalid_argument);
    cfg.p_true = 0.5;
    cfg.trials = 0;
    CHECK_THROWS_AS(run_simulation(cfg), std::invalid_argument);
    cfg.trials = 1;
    cfg.v0 = 0.0;
    CHECK_THROWS_AS(run_simulation(cfg), std::invalid_argument);
    cfg.v0 = 1.0;
    cfg.controller = robust_optimal(make_uncertainty_set({{0.2, 0.8}}), 1);
    cfg.horizon = 2;
    CHECK_THROWS_AS(run_simulation(cfg), std::invalid_argument);
}

}  // TEST_SUITE
