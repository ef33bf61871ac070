#include "robustbet/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "robustbet/elg.hpp"
#include "robustbet/moments.hpp"

namespace robustbet {

namespace {

// search domain stays strictly inside (-1,1) so logs remain finite; the true
// optimum is interior
constexpr double kEdge = 1e-12;

// w[h] = I_{h,n-h}(P), the integrated probability of any path with h heads
std::vector<double> path_weights(const UncertaintySet& pset, int n) {
    std::vector<double> w(n + 1);
    for (int h = 0; h <= n; ++h) w[h] = moment(pset, h, n - h);
    return w;
}

double tree_objective(const std::vector<double>& gains, const std::vector<double>& weights,
                      int n) {
    double total = 0.0;
    const std::size_t paths = std::size_t{1} << n;
    for (std::size_t code = 0; code < paths; ++code) {
        const int tails = std::popcount(code);
        double path_log = 0.0;
        std::size_t pos = 0;
        for (int k = 0; k < n; ++k) {
            const std::size_t tail_bit = (code >> k) & 1u;
            const double gain = gains[((std::size_t{1} << k) - 1) + pos];
            const double factor = tail_bit ? 1.0 - gain : 1.0 + gain;
            if (factor <= 0.0) return kNegInf;
            path_log += std::log(factor);
            pos = 2 * pos + tail_bit;
        }
        total += weights[n - tails] * path_log;
    }
    return total / n;
}

double max_abs_gap(const std::vector<double>& a, const std::vector<double>& b) {
    double gap = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) gap = std::max(gap, std::abs(a[i] - b[i]));
    return gap;
}

}  // namespace

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double xtol, long* iterations) {
    if (!(lo < hi)) throw std::invalid_argument("golden_section_max: need lo < hi");
    if (!(xtol > 0.0)) throw std::invalid_argument("golden_section_max: xtol must be > 0");
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo;
    double b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    long evals = 2;
    while (b - a > xtol && evals < 400) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
        ++evals;
    }
    if (iterations) *iterations += evals;
    return 0.5 * (a + b);
}

double oracle_objective(const ExplicitTree& tree, const UncertaintySet& pset, int n) {
    if (n < 1) throw std::invalid_argument("oracle_objective: horizon must be >= 1");
    if (tree.horizon < n)
        throw std::invalid_argument("oracle_objective: tree horizon shorter than n");
    if (tree.gains.size() != (std::size_t{1} << tree.horizon) - 1)
        throw std::invalid_argument("oracle_objective: tree gain count mismatch");
    return tree_objective(tree.gains, path_weights(pset, n), n);
}

OracleResult oracle_optimize(const UncertaintySet& pset, int n, double tol) {
    if (n < 1 || n > 4) throw std::invalid_argument("oracle_optimize: n must lie in 1..4");
    if (!(tol > 0.0)) throw std::invalid_argument("oracle_optimize: tol must be positive");

    const auto weights = path_weights(pset, n);
    OracleResult result;
    result.best = ExplicitTree{n, std::vector<double>((std::size_t{1} << n) - 1, 0.0)};

    for (int k = 0; k < n; ++k) {
        const std::size_t stage_nodes = std::size_t{1} << k;
        for (std::size_t pos = 0; pos < stage_nodes; ++pos) {
            int q = 0;
            for (int i = 0; i < k; ++i)
                if (!((pos >> (k - 1 - i)) & 1u)) ++q;
            // alpha/beta assembled path by path, one term per completion of
            // this node's history
            const int rest = n - k - 1;
            const std::size_t completions = std::size_t{1} << rest;
            double alpha = 0.0;
            double beta = 0.0;
            for (std::size_t comp = 0; comp < completions; ++comp) {
                const int comp_heads = rest - std::popcount(comp);
                alpha += weights[q + 1 + comp_heads];
                beta += weights[q + comp_heads];
            }
            const auto node_objective = [alpha, beta](double x) {
                return alpha * std::log1p(x) + beta * std::log1p(-x);
            };
            result.best.gains[(stage_nodes - 1) + pos] = golden_section_max(
                node_objective, -1.0 + kEdge, 1.0 - kEdge, std::min(tol, 1e-12),
                &result.iterations);
        }
    }

    result.best_objective = tree_objective(result.best.gains, weights, n);
    const auto closed = std::get<ExplicitTree>(as_explicit_tree(robust_optimal(pset, n), n));
    result.max_gain_gap = max_abs_gap(result.best.gains, closed.gains);
    return result;
}

CoordinateAscentResult coordinate_ascent(const UncertaintySet& pset, int n, std::uint64_t seed,
                                         int starts) {
    if (n < 1 || n > 3) throw std::invalid_argument("coordinate_ascent: n must lie in 1..3");
    if (starts < 1) throw std::invalid_argument("coordinate_ascent: need at least one start");

    const auto weights = path_weights(pset, n);
    const auto closed = std::get<ExplicitTree>(as_explicit_tree(robust_optimal(pset, n), n));
    const std::size_t nodes = (std::size_t{1} << n) - 1;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> init(-0.9, 0.9);

    CoordinateAscentResult result;
    std::vector<double> gains(nodes);
    for (int s = 0; s < starts; ++s) {
        for (auto& g : gains) g = init(rng);
        for (int sweep = 0; sweep < 30; ++sweep) {
            double shift = 0.0;
            for (std::size_t j = 0; j < nodes; ++j) {
                const auto slice = [&](double x) {
                    const double saved = gains[j];
                    gains[j] = x;
                    const double value = tree_objective(gains, weights, n);
                    gains[j] = saved;
                    return value;
                };
                const double next = golden_section_max(slice, -1.0 + kEdge, 1.0 - kEdge, 1e-13);
                shift = std::max(shift, std::abs(next - gains[j]));
                gains[j] = next;
            }
            ++result.sweeps;
            // once converged, per-sweep movement is golden-section jitter
            // near the sqrt(eps) localization floor
            if (shift < 5e-8) break;
        }
        result.max_gain_gap = std::max(result.max_gain_gap, max_abs_gap(gains, closed.gains));
    }
    result.best = ExplicitTree{n, gains};
    result.objective = tree_objective(gains, weights, n);
    return result;
}

AuditReport structural_audit(const UncertaintySet& pset, int n) {
    if (n < 1 || n > 20) throw std::invalid_argument("structural_audit: n must lie in 1..20");
    AuditReport report;
    report.horizon = n;

    const Controller optimal = robust_optimal(pset, n);
    const auto& table = std::get<RobustTable>(optimal).table;
    for (const auto& row : table.rows()) report.table_entries += row.size();
    const std::size_t expected = static_cast<std::size_t>(n) * (n + 1) / 2;
    if (report.table_entries != expected)
        report.failures.push_back("table holds " + std::to_string(report.table_entries) +
                                  " gains, expected " + std::to_string(expected));

    const auto tree = std::get<ExplicitTree>(as_explicit_tree(optimal, n));
    for (int k = 0; k < n; ++k) {
        const std::size_t stage_nodes = std::size_t{1} << k;
        std::set<double> distinct;
        for (std::size_t pos = 0; pos < stage_nodes; ++pos) {
            int q = 0;
            for (int i = 0; i < k; ++i)
                if (!((pos >> (k - 1 - i)) & 1u)) ++q;
            const double gain = tree.gains[(stage_nodes - 1) + pos];
            if (gain != table.at(k, q))
                report.failures.push_back("stage " + std::to_string(k) + " node " +
                                          std::to_string(pos) +
                                          " differs from its (k,q) class value");
            distinct.insert(gain);
        }
        report.stage_value_counts.push_back(static_cast<int>(distinct.size()));
        if (distinct.size() > static_cast<std::size_t>(k) + 1)
            report.failures.push_back("stage " + std::to_string(k) + " holds " +
                                      std::to_string(distinct.size()) +
                                      " distinct gains, expected at most " +
                                      std::to_string(k + 1));
    }
    return report;
}

}  // namespace robustbet
