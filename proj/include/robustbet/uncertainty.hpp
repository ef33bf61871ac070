#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace robustbet {

// One closed subinterval of [0,1].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool operator==(const Interval&) const = default;
};

// The set of heads probabilities the coin is known to lie in: a finite union
// of disjoint positive-length subintervals of [0,1], kept sorted ascending.
// Overlapping or touching input intervals are merged on construction, so the
// stored intervals always satisfy hi_i < lo_{i+1} and the total measure is
// strictly positive. Immutable after construction; safe to share across
// threads.
class UncertaintySet {
public:
    explicit UncertaintySet(std::vector<Interval> intervals);

    const std::vector<Interval>& intervals() const { return intervals_; }

    // Total length of the union.
    double measure() const { return measure_; }

    // Mean of p under the uniform distribution on the set. Equals
    // (lo + hi)/2 for a single interval.
    double centroid() const;

    double p_min() const { return intervals_.front().lo; }
    double p_max() const { return intervals_.back().hi; }

    bool operator==(const UncertaintySet&) const = default;

private:
    std::vector<Interval> intervals_;
    double measure_ = 0.0;
};

UncertaintySet make_uncertainty_set(const std::vector<std::pair<double, double>>& spans);

// Text syntax "lo:hi[,lo:hi...]", e.g. "0.25:0.95" or "0:0.2,0.8:1".
// Whitespace is ignored. Throws std::invalid_argument on malformed input or
// invalid endpoints.
UncertaintySet parse_uncertainty_set(std::string_view text);

// Normalized form of the same syntax.
std::string format_uncertainty_set(const UncertaintySet& pset);

}  // namespace robustbet
