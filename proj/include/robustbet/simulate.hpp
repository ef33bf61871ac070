#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "robustbet/controller.hpp"

namespace robustbet {

struct SimConfig {
    Controller controller;
    int horizon = 1;
    double p_true = 0.5;
    std::int64_t trials = 1;
    double v0 = 1.0;  // initial wealth, must be positive
    std::uint64_t seed = 0;
    bool keep_per_trial = false;
};

struct SimReport {
    std::int64_t trials = 0;
    std::int64_t ruin_count = 0;             // trials whose wealth hit zero
    double mean_log_growth = 0.0;            // -inf when ruin_count > 0
    double mean_log_growth_surviving = 0.0;  // over finite-valued trials only
    double stderr_log_growth = 0.0;          // ditto
    double min_final_wealth = 0.0;
    double max_final_wealth = 0.0;
    std::string generator;  // PRNG identity and substream scheme
    // Filled only when SimConfig::keep_per_trial is set.
    std::vector<double> per_trial_log_growth;
    std::vector<double> per_trial_final_wealth;
};

// Runs cfg.trials independent games with i.i.d. flips at P(heads) = p_true.
// Trial t draws from a counter-based substream of (seed, t), so identical
// configs produce bit-identical reports. A trial that reaches zero wealth
// stops betting and contributes log growth -inf.
SimReport run_simulation(const SimConfig& cfg);

// Exact wealth trajectory V_0..V_n along one fixed sample path.
std::vector<double> single_path(const Controller& c, int n, double v0, const SamplePath& path);

std::string report_text(const SimReport& report);
std::string report_json(const SimReport& report);

// "trial,final_wealth,log_growth" rows; requires per-trial data.
void write_trials_csv(std::ostream& out, const SimReport& report);

}  // namespace robustbet
