#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "robustbet/controller.hpp"
#include "robustbet/uncertainty.hpp"

namespace robustbet {

// Maximizes a unimodal f on [lo,hi] to bracket width xtol. Accumulates the
// number of function evaluations into *iterations when given.
double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double xtol, long* iterations = nullptr);

// Brute-force value of the integrated ELG for a fully expanded policy:
// enumerates all 2^n paths and weights each path's log sum with the exact
// moment integral of its probability polynomial. Gains outside (-1,1) that
// can zero or negate a wealth factor evaluate to -inf.
double oracle_objective(const ExplicitTree& tree, const UncertaintySet& pset, int n);

struct OracleResult {
    ExplicitTree best;
    double best_objective = 0.0;
    double max_gain_gap = 0.0;  // max |oracle - closed form| over nodes
    long iterations = 0;
};

// Independent per-node maximization: each node's strictly concave objective
// alpha log(1+K) + beta log(1-K) is maximized by golden-section search on
// [-1+1e-12, 1-1e-12], with alpha and beta assembled by enumerating every
// path completion. Never evaluates the closed-form ratio. n <= 4.
OracleResult oracle_optimize(const UncertaintySet& pset, int n, double tol);

struct CoordinateAscentResult {
    ExplicitTree best;
    double objective = 0.0;
    double max_gain_gap = 0.0;  // worst over starts, vs the closed form
    int sweeps = 0;
};

// Fully generic check: coordinate ascent on the raw path-enumeration
// objective from random starts, with no separability assumptions. n <= 3.
CoordinateAscentResult coordinate_ascent(const UncertaintySet& pset, int n, std::uint64_t seed,
                                         int starts = 3);

struct AuditReport {
    int horizon = 0;
    std::size_t table_entries = 0;
    std::vector<int> stage_value_counts;  // distinct gains per stage
    std::vector<std::string> failures;

    bool pass() const { return failures.empty(); }
};

// Expands the optimal table to a full tree and checks the structural claims:
// exactly n(n+1)/2 table entries, nodes with equal (stage, head count) carry
// identical gains, and each stage k holds at most k+1 distinct values.
AuditReport structural_audit(const UncertaintySet& pset, int n);

}  // namespace robustbet
