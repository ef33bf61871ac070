#include "robustbet/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <span>
#include <stdexcept>

#include "json.hpp"
#include "robustbet/elg.hpp"
#include "robustbet/format.hpp"
#include "robustbet/rng.hpp"

namespace robustbet {

namespace {

// order-independent, reproducible summation
double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

void validate(const SimConfig& cfg) {
    if (!(cfg.p_true >= 0.0 && cfg.p_true <= 1.0))
        throw std::invalid_argument("simulate: p_true must lie in [0,1]");
    if (cfg.horizon < 1) throw std::invalid_argument("simulate: horizon must be >= 1");
    if (cfg.trials < 1) throw std::invalid_argument("simulate: need at least one trial");
    if (!(cfg.v0 > 0.0)) throw std::invalid_argument("simulate: initial wealth must be positive");
    if (const auto h = horizon(cfg.controller); h && *h < cfg.horizon)
        throw std::invalid_argument("simulate: controller horizon shorter than n");
}

nlohmann::ordered_json number_or_inf(double v) {
    if (std::isinf(v)) return format_number(v);
    return v;
}

}  // namespace

SimReport run_simulation(const SimConfig& cfg) {
    validate(cfg);
    const int n = cfg.horizon;

    std::vector<double> growths(static_cast<std::size_t>(cfg.trials));
    std::vector<double> wealths(static_cast<std::size_t>(cfg.trials));
    std::int64_t ruin = 0;
    SamplePath prefix;
    prefix.reserve(n);

    for (std::int64_t t = 0; t < cfg.trials; ++t) {
        SplitMix64 rng = trial_stream(cfg.seed, static_cast<std::uint64_t>(t));
        double wealth = cfg.v0;
        double log_sum = 0.0;
        bool ruined = false;
        prefix.clear();
        for (int k = 0; k < n; ++k) {
            const bool heads = bernoulli_heads(rng.next(), cfg.p_true);
            const double gain = gain_at(cfg.controller, prefix);
            if (!(std::abs(gain) <= 1.0))
                throw std::invalid_argument("simulate: budget constraint violated");
            const double step = heads ? gain : -gain;
            const double factor = 1.0 + step;
            if (factor <= 0.0) {  // wealth hits zero; betting stops
                ruined = true;
                break;
            }
            wealth *= factor;
            log_sum += std::log1p(step);
            prefix.push_back(heads ? 1 : -1);
        }
        if (ruined) {
            wealth = 0.0;
            growths[t] = kNegInf;
            ++ruin;
        } else {
            growths[t] = log_sum / n;
        }
        wealths[t] = wealth;
    }

    SimReport report;
    report.trials = cfg.trials;
    report.ruin_count = ruin;
    report.min_final_wealth = *std::min_element(wealths.begin(), wealths.end());
    report.max_final_wealth = *std::max_element(wealths.begin(), wealths.end());
    report.generator = generator_id();

    std::vector<double> finite;
    finite.reserve(growths.size());
    for (double g : growths)
        if (g != kNegInf) finite.push_back(g);

    if (finite.empty()) {
        report.mean_log_growth_surviving = kNegInf;
        report.stderr_log_growth = 0.0;
    } else {
        const double m = static_cast<double>(finite.size());
        const double mean = pairwise_sum(finite) / m;
        report.mean_log_growth_surviving = mean;
        if (finite.size() >= 2) {
            std::vector<double> sq(finite.size());
            for (std::size_t i = 0; i < finite.size(); ++i) {
                const double d = finite[i] - mean;
                sq[i] = d * d;
            }
            const double var = pairwise_sum(sq) / (m - 1.0);
            report.stderr_log_growth = std::sqrt(var / m);
        }
    }
    report.mean_log_growth = ruin > 0 ? kNegInf : report.mean_log_growth_surviving;

    if (cfg.keep_per_trial) {
        report.per_trial_log_growth = std::move(growths);
        report.per_trial_final_wealth = std::move(wealths);
    }
    return report;
}

std::vector<double> single_path(const Controller& c, int n, double v0, const SamplePath& path) {
    if (n < 1) throw std::invalid_argument("single_path: horizon must be >= 1");
    if (static_cast<int>(path.size()) != n)
        throw std::invalid_argument("single_path: path length must equal n");
    if (!(v0 > 0.0)) throw std::invalid_argument("single_path: initial wealth must be positive");
    if (const auto h = horizon(c); h && *h < n)
        throw std::invalid_argument("single_path: controller horizon shorter than n");
    heads_count(path);  // validates entries

    std::vector<double> wealth(n + 1);
    wealth[0] = v0;
    SamplePath prefix;
    prefix.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double gain = gain_at(c, prefix);
        if (!(std::abs(gain) <= 1.0))
            throw std::invalid_argument("single_path: budget constraint violated");
        wealth[k + 1] = wealth[k] * (1.0 + gain * path[k]);
        prefix.push_back(path[k]);
    }
    return wealth;
}

std::string report_text(const SimReport& report) {
    std::string out;
    out += "trials: " + std::to_string(report.trials) + "\n";
    out += "ruin_count: " + std::to_string(report.ruin_count) + "\n";
    out += "mean_log_growth: " + format_number(report.mean_log_growth) + "\n";
    out += "mean_log_growth_surviving: " + format_number(report.mean_log_growth_surviving) + "\n";
    out += "stderr_log_growth: " + format_number(report.stderr_log_growth) + "\n";
    out += "min_final_wealth: " + format_number(report.min_final_wealth) + "\n";
    out += "max_final_wealth: " + format_number(report.max_final_wealth) + "\n";
    out += "generator: " + report.generator + "\n";
    return out;
}

std::string report_json(const SimReport& report) {
    nlohmann::ordered_json doc;
    doc["trials"] = report.trials;
    doc["ruin_count"] = report.ruin_count;
    doc["mean_log_growth"] = number_or_inf(report.mean_log_growth);
    doc["mean_log_growth_surviving"] = number_or_inf(report.mean_log_growth_surviving);
    doc["stderr_log_growth"] = report.stderr_log_growth;
    doc["min_final_wealth"] = report.min_final_wealth;
    doc["max_final_wealth"] = report.max_final_wealth;
    doc["generator"] = report.generator;
    return doc.dump(2);
}

void write_trials_csv(std::ostream& out, const SimReport& report) {
    if (report.per_trial_log_growth.size() != static_cast<std::size_t>(report.trials))
        throw std::logic_error("trials csv: per-trial data was not recorded");
    out << "trial,final_wealth,log_growth\n";
    for (std::size_t t = 0; t < report.per_trial_log_growth.size(); ++t)
        out << t << ',' << format_number(report.per_trial_final_wealth[t]) << ','
            << format_number(report.per_trial_log_growth[t]) << '\n';
}

}  // namespace robustbet
