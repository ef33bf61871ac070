#pragma once

#include <vector>

#include "robustbet/uncertainty.hpp"

namespace robustbet {

// I_{a,b}(P) = integral over P of p^a (1-p)^b dp. The integrand is a
// polynomial of degree a+b, so per-interval Gauss-Legendre with enough nodes
// is exact up to rounding. Always strictly positive for a valid set.
double moment(const UncertaintySet& pset, int a, int b);

// All I_{a,b} with a+b <= max_sum, precomputed. The entries satisfy the
// Pascal-type identity I_{a,b} = I_{a+1,b} + I_{a,b+1}. Immutable; concurrent
// reads are safe.
class MomentTable {
public:
    MomentTable(UncertaintySet pset, int max_sum);

    double at(int a, int b) const;  // throws std::out_of_range past max_sum
    int max_sum() const { return max_sum_; }
    const UncertaintySet& pset() const { return pset_; }

private:
    UncertaintySet pset_;
    int max_sum_;
    std::vector<double> values_;  // triangular layout: (a,b) at s(s+1)/2 + a, s = a+b
};

// Table with every moment needed for gain tables up to horizon n.
MomentTable moment_table(const UncertaintySet& pset, int n);

}  // namespace robustbet
