#include "robustbet/elg.hpp"

#include <bit>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "robustbet/format.hpp"
#include "robustbet/moments.hpp"
#include "robustbet/quadrature.hpp"

namespace robustbet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

double pow_int(double x, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

double binom(int k, int q) {
    if (q < 0 || q > k) return 0.0;
    if (q > k - q) q = k - q;
    double c = 1.0;
    for (int i = 1; i <= q; ++i) c = c * (k - q + i) / i;
    return c;
}

void check_budget(double gain) {
    if (!(std::abs(gain) <= 1.0))
        throw std::invalid_argument("elg: controller gain outside [-1,1]");
}

// O(n^2) route: gains depend on history only through (stage, head count), so
// paths collapse into binomially weighted classes.
template <typename GainFn>
double elg_structured(int n, double p, GainFn&& gain_at_kq) {
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
        for (int q = 0; q <= k; ++q) {
            const double weight = binom(k, q) * pow_int(p, q) * pow_int(1.0 - p, k - q);
            if (weight == 0.0) continue;  // unreachable node, 0 * (-inf) = 0
            const double gain = gain_at_kq(k, q);
            check_budget(gain);
            const double inner =
                weighted(p, std::log1p(gain)) + weighted(1.0 - p, std::log1p(-gain));
            if (inner == kNegInf) return kNegInf;
            total += weight * inner;
        }
    }
    return total / n;
}

double elg_tree(const ExplicitTree& tree, int n, double p) {
    for (double g : tree.gains) check_budget(g);
    double total = 0.0;
    const std::size_t paths = std::size_t{1} << n;
    for (std::size_t code = 0; code < paths; ++code) {
        // bit i of code: flip i came up tails
        const int tails = std::popcount(code);
        const double prob = pow_int(p, n - tails) * pow_int(1.0 - p, tails);
        if (prob == 0.0) continue;
        double path_log = 0.0;
        std::size_t pos = 0;
        for (int k = 0; k < n; ++k) {
            const std::size_t tail_bit = (code >> k) & 1u;
            const double gain = tree.gains[((std::size_t{1} << k) - 1) + pos];
            path_log += tail_bit ? std::log1p(-gain) : std::log1p(gain);
            pos = 2 * pos + tail_bit;
        }
        if (path_log == kNegInf) return kNegInf;
        total += prob * path_log;
    }
    return total / n;
}

void check_admissible(const Controller& c, int n) {
    if (n < 1) throw std::invalid_argument("elg: horizon must be >= 1");
    if (const auto h = horizon(c); h && *h < n)
        throw std::invalid_argument("elg: controller horizon shorter than n");
}

template <typename StructuredFn, typename TreeFn>
double dispatch(const Controller& c, StructuredFn&& structured, TreeFn&& tree_route) {
    return std::visit(
        overloaded{
            [&](const StaticLinear& s) {
                return structured([gain = s.gain](int, int) { return gain; });
            },
            [&](const PerfectKelly& pk) {
                return structured([gain = 2.0 * pk.p - 1.0](int, int) { return gain; });
            },
            [&](const RobustTable& r) {
                return structured([&table = r.table](int k, int q) { return table.at(k, q); });
            },
            [&](const ExplicitTree& t) { return tree_route(t); },
        },
        c);
}

}  // namespace

double elg_star(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("elg_star: p must lie in [0,1]");
    return weighted(p, std::log(2.0 * p)) + weighted(1.0 - p, std::log(2.0 * (1.0 - p)));
}

double elg_at(const Controller& c, int n, double p) {
    check_admissible(c, n);
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("elg: p must lie in [0,1]");
    return dispatch(
        c, [&](auto&& gain_fn) { return elg_structured(n, p, gain_fn); },
        [&](const ExplicitTree& t) { return elg_tree(t, n, p); });
}

double integrated_elg(const Controller& c, int n, const UncertaintySet& pset) {
    check_admissible(c, n);
    return dispatch(
        c,
        [&](auto&& gain_fn) {
            const MomentTable moments(pset, n);
            double total = 0.0;
            for (int k = 0; k < n; ++k) {
                for (int q = 0; q <= k; ++q) {
                    const double gain = gain_fn(k, q);
                    check_budget(gain);
                    const double log_up = std::log1p(gain);
                    const double log_down = std::log1p(-gain);
                    // both moment weights are strictly positive
                    if (log_up == kNegInf || log_down == kNegInf) return kNegInf;
                    total += binom(k, q) * (moments.at(q + 1, k - q) * log_up +
                                            moments.at(q, k - q + 1) * log_down);
                }
            }
            return total / n;
        },
        [&](const ExplicitTree& t) {
            for (double g : t.gains) {
                check_budget(g);
                // a +-1 gain is played at a node reachable with positive
                // probability for every interior p, so the integral diverges
                if (std::abs(g) == 1.0) return kNegInf;
            }
            const double tol = 1e-10 / static_cast<double>(pset.intervals().size());
            double total = 0.0;
            for (const auto& iv : pset.intervals())
                total += integrate_adaptive([&](double p) { return elg_at(c, n, p); }, iv.lo,
                                            iv.hi, tol);
            return total;
        });
}

double elg_star_integral(const UncertaintySet& pset) {
    const double tol = 1e-10 / static_cast<double>(pset.intervals().size());
    double total = 0.0;
    for (const auto& iv : pset.intervals())
        total += integrate_adaptive(elg_star, iv.lo, iv.hi, tol);
    return total;
}

double err_integral(const Controller& c, int n, const UncertaintySet& pset) {
    return elg_star_integral(pset) - integrated_elg(c, n, pset);
}

ElgCurve elg_curve(const Controller& c, int n, int grid_size) {
    if (grid_size < 2) throw std::invalid_argument("elg_curve: grid needs at least 2 points");
    ElgCurve curve;
    curve.controller_tag = controller_tag(c);
    if (const auto* robust = std::get_if<RobustTable>(&c))
        curve.pset_tag = format_uncertainty_set(robust->pset);
    curve.grid.resize(grid_size);
    curve.values.resize(grid_size);
    for (int i = 0; i < grid_size; ++i) {
        const double p = static_cast<double>(i) / (grid_size - 1);
        curve.grid[i] = p;
        curve.values[i] = elg_at(c, n, p);
    }
    return curve;
}

void write_curve_csv(std::ostream& out, const ElgCurve& curve) {
    out << "# controller=" << curve.controller_tag;
    if (!curve.pset_tag.empty()) out << " pset=" << curve.pset_tag;
    out << "\np,elg\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i)
        out << format_number(curve.grid[i]) << ',' << format_number(curve.values[i]) << '\n';
}

void write_comparison_csv(std::ostream& out, const UncertaintySet& pset, int n, int grid_size) {
    if (grid_size < 2)
        throw std::invalid_argument("comparison csv: grid needs at least 2 points");
    const Controller robust = robust_optimal(pset, n);
    const Controller stat = static_linear_optimal(pset);
    out << "# pset=" << format_uncertainty_set(pset) << " n=" << n << '\n';
    out << "p,elg_star,elg_robust,elg_static\n";
    for (int i = 0; i < grid_size; ++i) {
        const double p = static_cast<double>(i) / (grid_size - 1);
        out << format_number(p) << ',' << format_number(elg_star(p)) << ','
            << format_number(elg_at(robust, n, p)) << ',' << format_number(elg_at(stat, n, p))
            << '\n';
    }
}

}  // namespace robustbet
