#include "robustbet/controller.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "json.hpp"
#include "robustbet/format.hpp"
#include "robustbet/moments.hpp"

namespace robustbet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

}  // namespace

int heads_count(const SamplePath& path) {
    int q = 0;
    for (int x : path) {
        if (x == 1)
            ++q;
        else if (x != -1)
            throw std::invalid_argument("sample path: entries must be +1 or -1");
    }
    return q;
}

SamplePath parse_history(std::string_view text) {
    SamplePath path;
    path.reserve(text.size());
    for (char ch : text) {
        if (ch == 'H' || ch == 'h')
            path.push_back(1);
        else if (ch == 'T' || ch == 't')
            path.push_back(-1);
        else
            throw std::invalid_argument("history: expected only H or T characters");
    }
    return path;
}

std::string format_history(const SamplePath& path) {
    std::string out;
    out.reserve(path.size());
    for (int x : path) {
        if (x != 1 && x != -1)
            throw std::invalid_argument("sample path: entries must be +1 or -1");
        out.push_back(x == 1 ? 'H' : 'T');
    }
    return out;
}

GainTable::GainTable(int horizon, std::vector<std::vector<double>> rows)
    : horizon_(horizon), rows_(std::move(rows)) {
    if (horizon_ < 1) throw std::invalid_argument("gain table: horizon must be >= 1");
    if (rows_.size() != static_cast<std::size_t>(horizon_))
        throw std::invalid_argument("gain table: need one row per stage");
    for (int k = 0; k < horizon_; ++k) {
        if (rows_[k].size() != static_cast<std::size_t>(k) + 1)
            throw std::invalid_argument("gain table: row k must hold gains for q = 0..k");
        for (double g : rows_[k])
            if (!(std::abs(g) <= 1.0))
                throw std::invalid_argument("gain table: budget constraint |K| <= 1 violated");
    }
}

double GainTable::at(int k, int q) const {
    if (k < 0 || k >= horizon_ || q < 0 || q > k)
        throw std::out_of_range("gain table: need 0 <= q <= k < n");
    return rows_[k][q];
}

Controller kelly_perfect(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("kelly_perfect: p must lie in [0,1]");
    return PerfectKelly{p};
}

Controller static_linear_optimal(const UncertaintySet& pset) {
    return StaticLinear{2.0 * pset.centroid() - 1.0};
}

Controller robust_optimal(const UncertaintySet& pset, int n) {
    if (n < 1) throw std::invalid_argument("robust_optimal: horizon must be >= 1");
    const MomentTable moments(pset, n);
    std::vector<std::vector<double>> rows(n);
    for (int k = 0; k < n; ++k) {
        rows[k].resize(k + 1);
        for (int q = 0; q <= k; ++q) {
            const double alpha = moments.at(q + 1, k - q);
            const double beta = moments.at(q, k - q + 1);
            const double gain = (alpha - beta) / (alpha + beta);
            // alpha, beta > 0 for any positive-measure set, so the unique
            // per-node optimum is always interior
            if (!(std::abs(gain) < 1.0))
                throw std::logic_error("robust_optimal: optimal gain must be interior to (-1,1)");
            rows[k][q] = gain;
        }
    }
    return RobustTable{GainTable(n, std::move(rows)), pset};
}

double gain_at(const Controller& c, const SamplePath& history) {
    const int k = static_cast<int>(history.size());
    const int q = heads_count(history);  // also validates the entries
    return std::visit(
        overloaded{
            [](const StaticLinear& s) { return s.gain; },
            [](const PerfectKelly& pk) { return 2.0 * pk.p - 1.0; },
            [&](const RobustTable& r) {
                if (k >= r.table.horizon())
                    throw std::out_of_range("gain_at: history length past controller horizon");
                return r.table.at(k, q);
            },
            [&](const ExplicitTree& t) {
                if (k >= t.horizon)
                    throw std::out_of_range("gain_at: history length past controller horizon");
                return t.gains[tree_node_index(history)];
            },
        },
        c);
}

std::optional<int> horizon(const Controller& c) {
    return std::visit(overloaded{
                          [](const StaticLinear&) { return std::optional<int>(); },
                          [](const PerfectKelly&) { return std::optional<int>(); },
                          [](const RobustTable& r) { return std::optional<int>(r.table.horizon()); },
                          [](const ExplicitTree& t) { return std::optional<int>(t.horizon); },
                      },
                      c);
}

std::size_t tree_node_index(const SamplePath& prefix) {
    std::size_t pos = 0;
    for (int x : prefix) pos = 2 * pos + (x == -1 ? 1 : 0);  // heads branch first
    return ((std::size_t{1} << prefix.size()) - 1) + pos;
}

Controller as_explicit_tree(const Controller& c, int n) {
    if (n < 1) throw std::invalid_argument("as_explicit_tree: horizon must be >= 1");
    if (n > 25) throw std::invalid_argument("as_explicit_tree: 2^n tree too large");
    if (const auto h = horizon(c); h && *h < n)
        throw std::invalid_argument("as_explicit_tree: controller horizon shorter than n");
    ExplicitTree tree{n, std::vector<double>((std::size_t{1} << n) - 1, 0.0)};
    SamplePath prefix;
    prefix.reserve(n);
    for (int k = 0; k < n; ++k) {
        const std::size_t stage_nodes = std::size_t{1} << k;
        for (std::size_t pos = 0; pos < stage_nodes; ++pos) {
            prefix.clear();
            for (int i = 0; i < k; ++i)
                prefix.push_back(((pos >> (k - 1 - i)) & 1u) ? -1 : 1);
            tree.gains[(stage_nodes - 1) + pos] = gain_at(c, prefix);
        }
    }
    return tree;
}

std::string controller_tag(const Controller& c) {
    return std::visit(overloaded{
                          [](const StaticLinear&) { return std::string("static-linear"); },
                          [](const PerfectKelly&) { return std::string("perfect-kelly"); },
                          [](const RobustTable&) { return std::string("robust"); },
                          [](const ExplicitTree&) { return std::string("tree"); },
                      },
                      c);
}

std::string gain_table_csv(const GainTable& table) {
    std::string out = "k,q,gain\n";
    for (int k = 0; k < table.horizon(); ++k)
        for (int q = 0; q <= k; ++q) {
            out += std::to_string(k);
            out += ',';
            out += std::to_string(q);
            out += ',';
            out += format_number(table.at(k, q));
            out += '\n';
        }
    return out;
}

std::string gain_table_json(const GainTable& table, const std::string& pset_text) {
    nlohmann::ordered_json doc;
    doc["n"] = table.horizon();
    doc["pset"] = pset_text;
    doc["gains"] = table.rows();
    return doc.dump(2);
}

}  // namespace robustbet
