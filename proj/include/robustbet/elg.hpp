#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "robustbet/controller.hpp"
#include "robustbet/uncertainty.hpp"

namespace robustbet {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// w * t under the convention 0 * (-inf) = 0: zero-probability paths
// contribute nothing even when their log factor is -inf.
inline double weighted(double w, double t) { return w == 0.0 ? 0.0 : w * t; }

// Perfect-information optimum p log(2p) + (1-p) log(2(1-p)), with the
// continuous extension 0 log 0 = 0 at the endpoints.
double elg_star(double p);

// Expected log growth per flip of controller c over an n-flip game at heads
// probability p. -inf is a legitimate value (a positive-probability path
// meets a +-1 gain moving against the bet), not an error. (k,q)-structured
// controllers are evaluated by an O(n^2) aggregation over (stage, head
// count); explicit trees by full 2^n path enumeration.
double elg_at(const Controller& c, int n, double p);

// Integral of ELG_c(p) over P. Exact via moment integrals for
// (k,q)-structured controllers; adaptive quadrature (abs tol 1e-10) for
// explicit trees.
double integrated_elg(const Controller& c, int n, const UncertaintySet& pset);

// Integral of elg_star over P, by adaptive quadrature.
double elg_star_integral(const UncertaintySet& pset);

// Integrated regret against perfect information:
// integral over P of (ELG*(p) - ELG_c(p)) dp. Never negative.
double err_integral(const Controller& c, int n, const UncertaintySet& pset);

struct ElgCurve {
    std::vector<double> grid;    // strictly increasing probabilities
    std::vector<double> values;  // elg_at per grid point; may hold -inf
    std::string controller_tag;
    std::string pset_tag;  // set for robust controllers, else empty
};

// Uniform grid over [0,1] inclusive, grid_size >= 2 points.
ElgCurve elg_curve(const Controller& c, int n, int grid_size);

// Header "p,elg"; 12 significant digits; -inf serialized as "-inf".
void write_curve_csv(std::ostream& out, const ElgCurve& curve);

// "# pset=..." metadata line, then "p,elg_star,elg_robust,elg_static" rows
// for the optimal robust and static controllers built from pset.
void write_comparison_csv(std::ostream& out, const UncertaintySet& pset, int n, int grid_size);

}  // namespace robustbet
