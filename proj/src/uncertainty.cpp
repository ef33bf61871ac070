#include "robustbet/uncertainty.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "robustbet/format.hpp"

namespace robustbet {

UncertaintySet::UncertaintySet(std::vector<Interval> intervals) {
    if (intervals.empty())
        throw std::invalid_argument("uncertainty set: need at least one interval");
    for (const auto& iv : intervals) {
        if (!(iv.lo >= 0.0 && iv.hi <= 1.0))
            throw std::invalid_argument("uncertainty set: endpoints must lie in [0,1]");
        if (!(iv.lo < iv.hi))
            throw std::invalid_argument(
                "uncertainty set: need lo < hi (zero-length intervals rejected)");
    }
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (const auto& iv : intervals) {
        // merge overlapping or touching neighbours
        if (!intervals_.empty() && iv.lo <= intervals_.back().hi)
            intervals_.back().hi = std::max(intervals_.back().hi, iv.hi);
        else
            intervals_.push_back(iv);
    }
    for (const auto& iv : intervals_) measure_ += iv.length();
}

double UncertaintySet::centroid() const {
    // single interval: midpoint, computed directly so symmetric sets stay exact
    if (intervals_.size() == 1) return 0.5 * (intervals_[0].lo + intervals_[0].hi);
    double weighted_mid = 0.0;
    for (const auto& iv : intervals_) weighted_mid += iv.length() * 0.5 * (iv.lo + iv.hi);
    return weighted_mid / measure_;
}

UncertaintySet make_uncertainty_set(const std::vector<std::pair<double, double>>& spans) {
    std::vector<Interval> intervals;
    intervals.reserve(spans.size());
    for (const auto& [lo, hi] : spans) intervals.push_back({lo, hi});
    return UncertaintySet(std::move(intervals));
}

namespace {

double parse_probability(const std::string& token) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("uncertainty set: cannot parse number '" + token + "'");
    }
    if (used != token.size())
        throw std::invalid_argument("uncertainty set: trailing characters in '" + token + "'");
    return value;
}

}  // namespace

UncertaintySet parse_uncertainty_set(std::string_view text) {
    std::string compact;
    compact.reserve(text.size());
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);
    if (compact.empty()) throw std::invalid_argument("uncertainty set: empty specification");

    std::vector<Interval> intervals;
    std::size_t start = 0;
    while (start <= compact.size()) {
        const std::size_t comma = compact.find(',', start);
        const std::string item =
            compact.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos || item.find(':', colon + 1) != std::string::npos)
            throw std::invalid_argument("uncertainty set: expected lo:hi, got '" + item + "'");
        intervals.push_back(
            {parse_probability(item.substr(0, colon)), parse_probability(item.substr(colon + 1))});
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return UncertaintySet(std::move(intervals));
}

std::string format_uncertainty_set(const UncertaintySet& pset) {
    std::string out;
    for (const auto& iv : pset.intervals()) {
        if (!out.empty()) out += ',';
        out += format_number(iv.lo);
        out += ':';
        out += format_number(iv.hi);
    }
    return out;
}

}  // namespace robustbet
