#pragma once

#include <functional>
#include <vector>

namespace robustbet {

// Gauss-Legendre nodes and weights on [-1,1]. An order-m rule integrates
// polynomials up to degree 2m-1 exactly.
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Rules are computed by Newton iteration on the Legendre recurrence
// (tolerance 1e-15), cached per order. Thread-safe.
const QuadRule& gauss_legendre(int order);

// Fixed-order Gauss-Legendre on [lo,hi].
double integrate_gl(const std::function<double(double)>& f, double lo, double hi, int order);

// Adaptive bisection with an embedded low/high order error estimate, driven
// to the given absolute tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          double abs_tol);

}  // namespace robustbet
