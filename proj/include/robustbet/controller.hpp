#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "robustbet/uncertainty.hpp"

namespace robustbet {

// A coin-flip history; +1 is heads, -1 is tails.
using SamplePath = std::vector<int>;

int heads_count(const SamplePath& path);
SamplePath parse_history(std::string_view text);  // "HTH" -> {+1,-1,+1}
std::string format_history(const SamplePath& path);

// Triangular table K[k][q]: the fraction of wealth wagered at stage k after
// observing q heads, for 0 <= q <= k <= n-1. Positive gains bet on heads,
// negative on tails; every entry obeys the budget constraint |K| <= 1. The
// table holds exactly n(n+1)/2 values.
class GainTable {
public:
    GainTable(int horizon, std::vector<std::vector<double>> rows);

    int horizon() const { return horizon_; }
    double at(int k, int q) const;
    const std::vector<std::vector<double>>& rows() const { return rows_; }
    std::size_t size() const { return static_cast<std::size_t>(horizon_) * (horizon_ + 1) / 2; }

private:
    int horizon_;
    std::vector<std::vector<double>> rows_;  // row k holds q = 0..k
};

struct StaticLinear {
    double gain;  // same bet fraction at every node
};

struct PerfectKelly {
    double p;  // plays 2p-1 at every node
};

struct RobustTable {
    GainTable table;
    UncertaintySet pset;
};

// Fully expanded policy: one gain per tree node, stage-major. Within a stage
// the all-heads node comes first; a history maps to position
// sum_i tails_bit(i) << (k-1-i). Exists for oracle and verification work.
struct ExplicitTree {
    int horizon;
    std::vector<double> gains;  // 2^horizon - 1 entries
};

using Controller = std::variant<StaticLinear, PerfectKelly, RobustTable, ExplicitTree>;

// The perfect-information optimum for a known heads probability: gain 2p-1.
Controller kelly_perfect(double p);

// Best single constant gain against the uncertainty set: 2*centroid - 1.
// For a single interval this is lo + hi - 1.
Controller static_linear_optimal(const UncertaintySet& pset);

// The optimal robust nonlinear controller for an n-flip game. Gains depend
// on history only through (stage, heads so far):
//   K[k][q] = (alpha - beta) / (alpha + beta),
//   alpha = I_{q+1,k-q}(P), beta = I_{q,k-q+1}(P).
// Every optimal gain is strictly interior to (-1,1).
Controller robust_optimal(const UncertaintySet& pset, int n);

// Gain the controller plays after observing `history` (stage = history
// length). Throws std::out_of_range when the stage is past a finite horizon.
double gain_at(const Controller& c, const SamplePath& history);

// Horizon bound, or nullopt for history-independent controllers.
std::optional<int> horizon(const Controller& c);

// Expand any controller to the full 2^n - 1 node representation.
Controller as_explicit_tree(const Controller& c, int n);

// Stage-major node index of a history prefix (see ExplicitTree).
std::size_t tree_node_index(const SamplePath& prefix);

std::string controller_tag(const Controller& c);

// CSV with header "k,q,gain", one row per table entry.
std::string gain_table_csv(const GainTable& table);

// {"n": ..., "pset": "lo:hi,...", "gains": [[K00],[K10,K11],...]}
std::string gain_table_json(const GainTable& table, const std::string& pset_text);

}  // namespace robustbet
