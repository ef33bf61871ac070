#include "robustbet/moments.hpp"

#include <stdexcept>
#include <utility>

#include "robustbet/quadrature.hpp"

namespace robustbet {

namespace {

double pow_int(double x, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

}  // namespace

double moment(const UncertaintySet& pset, int a, int b) {
    if (a < 0 || b < 0) throw std::invalid_argument("moment: exponents must be nonnegative");
    // exact for the degree-(a+b) integrand; avoids the cancellation a
    // binomial expansion would suffer for moderate b
    const int order = (a + b + 3) / 2;
    const QuadRule& rule = gauss_legendre(order);
    double total = 0.0;
    for (const auto& iv : pset.intervals()) {
        const double mid = 0.5 * (iv.lo + iv.hi);
        const double half = 0.5 * (iv.hi - iv.lo);
        double part = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double p = mid + half * rule.nodes[i];
            part += rule.weights[i] * pow_int(p, a) * pow_int(1.0 - p, b);
        }
        total += half * part;
    }
    return total;
}

MomentTable::MomentTable(UncertaintySet pset, int max_sum)
    : pset_(std::move(pset)), max_sum_(max_sum) {
    if (max_sum_ < 0) throw std::invalid_argument("moment table: max_sum must be >= 0");
    values_.reserve(static_cast<std::size_t>(max_sum_ + 1) * (max_sum_ + 2) / 2);
    for (int s = 0; s <= max_sum_; ++s)
        for (int a = 0; a <= s; ++a) values_.push_back(moment(pset_, a, s - a));
}

double MomentTable::at(int a, int b) const {
    if (a < 0 || b < 0 || a + b > max_sum_)
        throw std::out_of_range("moment table: (a,b) outside precomputed range");
    const int s = a + b;
    return values_[static_cast<std::size_t>(s) * (s + 1) / 2 + a];
}

MomentTable moment_table(const UncertaintySet& pset, int n) {
    if (n < 1) throw std::invalid_argument("moment_table: n must be >= 1");
    return MomentTable(pset, n);
}

}  // namespace robustbet
