#include "robustbet/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace robustbet {

namespace {

QuadRule compute_rule(int order) {
    QuadRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const double pi = std::acos(-1.0);
    // roots come in symmetric pairs, so only the upper half is solved for
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double z = std::cos(pi * (i + 0.75) / (order + 0.5));
        double deriv = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence (j+1) P_{j+1} = (2j+1) z P_j - j P_{j-1}
            double p1 = 1.0;
            double p2 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) * z * p2 - j * p3) / (j + 1);
            }
            deriv = order * (z * p1 - p2) / (z * z - 1.0);
            const double step = p1 / deriv;
            z -= step;
            if (std::abs(step) <= 1e-15) break;
        }
        rule.nodes[i] = -z;
        rule.nodes[order - 1 - i] = z;
        const double w = 2.0 / ((1.0 - z * z) * deriv * deriv);
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    return rule;
}

struct Estimate {
    double value;
    double error;
};

Estimate gl_pair(const std::function<double(double)>& f, double lo, double hi) {
    const QuadRule& coarse = gauss_legendre(7);
    const QuadRule& fine = gauss_legendre(15);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double i7 = 0.0;
    for (std::size_t i = 0; i < coarse.nodes.size(); ++i)
        i7 += coarse.weights[i] * f(mid + half * coarse.nodes[i]);
    double i15 = 0.0;
    for (std::size_t i = 0; i < fine.nodes.size(); ++i)
        i15 += fine.weights[i] * f(mid + half * fine.nodes[i]);
    i7 *= half;
    i15 *= half;
    return {i15, std::abs(i15 - i7)};
}

double adapt(const std::function<double(double)>& f, double lo, double hi, double tol,
             int depth) {
    const Estimate est = gl_pair(f, lo, hi);
    if (est.error <= tol || depth >= 48) return est.value;
    const double mid = 0.5 * (lo + hi);
    return adapt(f, lo, mid, 0.5 * tol, depth + 1) + adapt(f, mid, hi, 0.5 * tol, depth + 1);
}

}  // namespace

const QuadRule& gauss_legendre(int order) {
    if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    static std::mutex guard;
    static std::map<int, QuadRule> cache;
    std::lock_guard<std::mutex> lock(guard);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
    return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double lo, double hi, int order) {
    const QuadRule& rule = gauss_legendre(order);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double total = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        total += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * total;
}

double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          double abs_tol) {
    if (!(lo <= hi)) throw std::invalid_argument("integrate_adaptive: need lo <= hi");
    if (!(abs_tol > 0.0)) throw std::invalid_argument("integrate_adaptive: tolerance must be > 0");
    if (lo == hi) return 0.0;
    return adapt(f, lo, hi, abs_tol, 0);
}

}  // namespace robustbet
