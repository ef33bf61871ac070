#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "robustbet/controller.hpp"
#include "robustbet/elg.hpp"
#include "robustbet/format.hpp"
#include "robustbet/oracle.hpp"
#include "robustbet/simulate.hpp"
#include "robustbet/uncertainty.hpp"

namespace {

using namespace robustbet;

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << text;
}

struct Options {
    std::string pset_text;
    std::string format = "csv";
    std::string out_path;
    std::string controller_spec = "robust";
    std::string history_text;
    std::string trials_csv_path;
    int n = 1;
    int grid = 201;
    double p_true = 0.5;
    double v0 = 1.0;
    double tol = 1e-7;
    std::int64_t trials = 100000;
    std::uint64_t seed = 0;
};

int run_gains(const Options& opt) {
    const UncertaintySet pset = parse_uncertainty_set(opt.pset_text);
    const Controller c = robust_optimal(pset, opt.n);
    const GainTable& table = std::get<RobustTable>(c).table;
    const std::string normalized = format_uncertainty_set(pset);
    std::string text;
    if (opt.format == "json")
        text = gain_table_json(table, normalized) + "\n";
    else
        text = "# pset=" + normalized + "\n" + gain_table_csv(table);
    emit(opt.out_path, text);
    return 0;
}

int run_compare(const Options& opt) {
    const UncertaintySet pset = parse_uncertainty_set(opt.pset_text);
    std::ostringstream csv;
    write_comparison_csv(csv, pset, opt.n, opt.grid);
    emit(opt.out_path, csv.str());
    return 0;
}

Controller build_controller(const Options& opt, std::optional<UncertaintySet>& pset) {
    if (opt.controller_spec == "robust" || opt.controller_spec == "static") {
        if (opt.pset_text.empty())
            throw std::invalid_argument("--pset is required for the robust and static controllers");
        pset = parse_uncertainty_set(opt.pset_text);
        return opt.controller_spec == "robust" ? robust_optimal(*pset, opt.n)
                                               : static_linear_optimal(*pset);
    }
    if (opt.controller_spec.rfind("kelly:", 0) == 0) {
        const std::string arg = opt.controller_spec.substr(6);
        std::size_t used = 0;
        double p = 0.0;
        try {
            p = std::stod(arg, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != arg.size())
            throw std::invalid_argument("cannot parse kelly probability '" + arg + "'");
        return kelly_perfect(p);
    }
    throw std::invalid_argument("--controller must be robust, static, or kelly:<p>");
}

int run_simulate(const Options& opt) {
    std::optional<UncertaintySet> pset;
    SimConfig cfg;
    cfg.controller = build_controller(opt, pset);
    cfg.horizon = opt.n;
    cfg.p_true = opt.p_true;
    cfg.trials = opt.trials;
    cfg.v0 = opt.v0;
    cfg.seed = opt.seed;
    cfg.keep_per_trial = !opt.trials_csv_path.empty();
    const SimReport report = run_simulation(cfg);

    std::string header = "# controller=" + controller_tag(cfg.controller);
    if (pset) header += " pset=" + format_uncertainty_set(*pset);
    header += " n=" + std::to_string(opt.n) + " p_true=" + format_number(opt.p_true) +
              " trials=" + std::to_string(opt.trials) + " seed=" + std::to_string(opt.seed) +
              " v0=" + format_number(opt.v0);

    std::string text;
    if (opt.format == "json") {
        nlohmann::ordered_json doc;
        doc["controller"] = controller_tag(cfg.controller);
        if (pset) doc["pset"] = format_uncertainty_set(*pset);
        doc["n"] = opt.n;
        doc["p_true"] = opt.p_true;
        doc["trials"] = opt.trials;
        doc["seed"] = opt.seed;
        doc["v0"] = opt.v0;
        doc["report"] = nlohmann::ordered_json::parse(report_json(report));
        text = doc.dump(2) + "\n";
    } else {
        text = header + "\n" + report_text(report);
    }
    emit(opt.out_path, text);

    if (!opt.trials_csv_path.empty()) {
        std::ostringstream csv;
        write_trials_csv(csv, report);
        emit(opt.trials_csv_path, csv.str());
    }
    return 0;
}

int run_verify(const Options& opt) {
    const UncertaintySet pset = parse_uncertainty_set(opt.pset_text);
    if (opt.n > 12)
        throw std::invalid_argument("verify: n must be <= 12 (structural audit bound)");
    std::cout << "# pset=" << format_uncertainty_set(pset) << " n=" << opt.n << "\n";

    bool ok = true;
    const auto line = [&ok](bool pass, const std::string& name, const std::string& detail) {
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << name;
        if (!detail.empty()) std::cout << "  (" << detail << ")";
        std::cout << "\n";
        ok = ok && pass;
    };

    if (opt.n <= 4) {
        const OracleResult oracle = oracle_optimize(pset, opt.n, opt.tol);
        const double gain_gate = std::max(opt.tol, 1e-7);
        line(oracle.max_gain_gap < gain_gate, "oracle gain agreement",
             "max gap " + format_number(oracle.max_gain_gap) + ", gate " +
                 format_number(gain_gate));

        const Controller closed = robust_optimal(pset, opt.n);
        const double closed_objective = integrated_elg(closed, opt.n, pset);
        const double diff = std::abs(oracle.best_objective - closed_objective);
        const double scale = std::max(std::abs(oracle.best_objective), std::abs(closed_objective));
        line(diff <= std::max(1e-10 * scale, 1e-13), "oracle objective agreement",
             "gap " + format_number(diff) + ", objective " + format_number(closed_objective));

        // every single-gain perturbation must strictly lower the objective
        auto tree = std::get<ExplicitTree>(as_explicit_tree(closed, opt.n));
        const double base = oracle_objective(tree, pset, opt.n);
        double min_decrease = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < tree.gains.size(); ++j) {
            for (const double delta : {1e-3, -1e-3}) {
                const double saved = tree.gains[j];
                tree.gains[j] = saved + delta;
                const double perturbed = oracle_objective(tree, pset, opt.n);
                tree.gains[j] = saved;
                min_decrease = std::min(min_decrease, base - perturbed);
            }
        }
        line(min_decrease > 0.0, "perturbation optimality",
             "min decrease " + format_number(min_decrease));

        if (opt.n <= 3) {
            const CoordinateAscentResult ascent = coordinate_ascent(pset, opt.n, opt.seed);
            line(ascent.max_gain_gap < gain_gate, "coordinate ascent agreement",
                 "max gap " + format_number(ascent.max_gain_gap) + ", sweeps " +
                     std::to_string(ascent.sweeps));
        }
    } else {
        std::cout << "# full oracle limited to n <= 4; running structural audit only\n";
    }

    const AuditReport audit = structural_audit(pset, opt.n);
    std::string counts;
    for (int c : audit.stage_value_counts) counts += (counts.empty() ? "" : "/") + std::to_string(c);
    line(audit.pass(), "structural audit",
         std::to_string(audit.table_entries) + " gains, stage classes " + counts);
    for (const auto& failure : audit.failures) std::cout << "  - " << failure << "\n";

    std::cout << (ok ? "verify: PASS\n" : "verify: FAIL\n");
    return ok ? 0 : 1;
}

int run_advise(const Options& opt) {
    const UncertaintySet pset = parse_uncertainty_set(opt.pset_text);
    const SamplePath history = parse_history(opt.history_text);
    if (static_cast<int>(history.size()) >= opt.n)
        throw std::invalid_argument("advise: history must be shorter than n");
    const Controller c = robust_optimal(pset, opt.n);
    const double gain = gain_at(c, history);

    std::cout << "# pset=" << format_uncertainty_set(pset) << " n=" << opt.n << "\n";
    std::cout << "stage: " << history.size() << "\n";
    std::cout << "heads_so_far: " << heads_count(history) << "\n";
    std::cout << "gain: " << format_number(gain) << "\n";
    if (gain > 0.0)
        std::cout << "bet " << format_number(gain) << " of wealth on heads\n";
    else if (gain < 0.0)
        std::cout << "bet " << format_number(-gain) << " of wealth on tails\n";
    else
        std::cout << "no bet\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal robust betting controllers for repeated biased-coin wagers"};
    app.require_subcommand(1);
    Options opt;

    auto* gains = app.add_subcommand("gains", "Compute the optimal robust nonlinear gain table");
    gains->add_option("--pset", opt.pset_text, "uncertainty set, lo:hi[,lo:hi...]")->required();
    gains->add_option("--n", opt.n, "number of flips")->required()->check(CLI::Range(1, 64));
    gains->add_option("--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    gains->add_option("--out", opt.out_path, "write to file instead of stdout");

    auto* compare = app.add_subcommand(
        "compare", "Emit p,elg_star,elg_robust,elg_static rows across [0,1]");
    compare->add_option("--pset", opt.pset_text)->required();
    compare->add_option("--n", opt.n)->required()->check(CLI::Range(1, 25));
    compare->add_option("--grid", opt.grid, "grid points over [0,1]")->check(CLI::Range(2, 1000000));
    compare->add_option("--out", opt.out_path);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo simulation of the betting game");
    simulate->add_option("--pset", opt.pset_text);
    simulate->add_option("--n", opt.n)->required()->check(CLI::Range(1, 10000));
    simulate->add_option("--p-true", opt.p_true, "true heads probability")->required();
    simulate->add_option("--trials", opt.trials)->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));
    simulate->add_option("--seed", opt.seed);
    simulate->add_option("--v0", opt.v0, "initial wealth");
    simulate->add_option("--controller", opt.controller_spec, "robust|static|kelly:<p>");
    simulate->add_option("--format", opt.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    simulate->add_option("--out", opt.out_path);
    simulate->add_option("--trials-csv", opt.trials_csv_path, "per-trial CSV dump path");

    auto* verify = app.add_subcommand(
        "verify", "Check the closed-form optimum against brute-force oracles");
    verify->add_option("--pset", opt.pset_text)->required();
    verify->add_option("--n", opt.n)->required()->check(CLI::Range(1, 12));
    verify->add_option("--tol", opt.tol, "per-gain agreement tolerance");
    verify->add_option("--seed", opt.seed, "seed for randomized starts");

    auto* advise = app.add_subcommand("advise", "Next bet for an observed flip history");
    advise->add_option("--pset", opt.pset_text)->required();
    advise->add_option("--n", opt.n)->required()->check(CLI::Range(1, 64));
    advise->add_option("--history", opt.history_text, "flips so far, e.g. HHT");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (dynamic_cast<const CLI::CallForHelp*>(&e) ||
            dynamic_cast<const CLI::CallForAllHelp*>(&e))
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (gains->parsed()) return run_gains(opt);
        if (compare->parsed()) return run_compare(opt);
        if (simulate->parsed()) return run_simulate(opt);
        if (verify->parsed()) return run_verify(opt);
        if (advise->parsed()) return run_advise(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
