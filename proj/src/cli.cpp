// Apache License, Version 2.0, refer to LICENSE.txt
#include "pchaos/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pchaos/acceptance.hpp"
#include "pchaos/branching.hpp"
#include "pchaos/csv_io.hpp"
#include "pchaos/errors.hpp"
#include "pchaos/harness.hpp"
#include "pchaos/pseudo_chaos.hpp"
#include "pchaos/run_config.hpp"

namespace pchaos {

namespace {

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> paths;
    std::string out_dir;
    std::string points;
    std::string input;
    std::optional<std::size_t> j_max;
    double scale{0.1};
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

RunConfig resolve_config(const Options& o) {
    RunConfig c = o.config_path.empty() ? default_config() : load_config(o.config_path);
    if (o.seed) c.seed = *o.seed;
    if (o.paths) c.n_paths = *o.paths;
    if (o.j_max) c.j_max = *o.j_max;
    if (!o.points.empty()) c.points = o.points;
    if (!o.input.empty()) c.input = o.input;
    if (c.n_paths < 1) throw ConfigError("n_paths must be >= 1");
    return c;
}

std::optional<std::filesystem::path> out_path(const Options& o) {
    if (o.out_dir.empty()) return std::nullopt;
    std::filesystem::create_directories(o.out_dir);
    return std::filesystem::path(o.out_dir);
}

// "t:theta,t:theta,..."
std::vector<Point> parse_points(const std::string& text) {
    std::vector<Point> points;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw UsageError("--points: expected t:theta, got '" + item + "'");
        points.push_back({parse_double(item.substr(0, colon), "--points", 1),
                          parse_double(item.substr(colon + 1), "--points", 1)});
    }
    if (points.empty()) throw UsageError("--points: no points given");
    return points;
}

void emit(std::ostream& out, const std::optional<std::filesystem::path>& dir, const std::string& name,
          const std::string& text) {
    out << text;
    if (dir) write_text_file(*dir / name, text);
}

int cmd_simulate(const Options& o, std::ostream& out) {
    const RunConfig c = resolve_config(o);
    ExperimentSpec spec{make_params(c), c.n_paths, c.seed, Statistic::HawkesMean, make_mode(c)};
    spec.write_paths = !o.out_dir.empty();
    const ExperimentResult r = run_experiment(spec, out_path(o));
    out << results_csv(r.rows);
    return kExitOk;
}

int cmd_coeff(const Options& o, std::ostream& out) {
    const RunConfig c = resolve_config(o);
    if (c.points.empty()) throw UsageError("coeff needs --points t:theta,...");
    const std::vector<Point> points = parse_points(c.points);
    const double value = coeff_hawkes({make_params(c), points});
    std::ostringstream csv;
    csv << 'k';
    for (std::size_t i = 1; i <= points.size(); ++i) csv << ",t_" << i << ",theta_" << i;
    csv << ",c_k\n" << points.size();
    for (const Point& p : points) csv << ',' << format_double(p.t) << ',' << format_double(p.theta);
    csv << ',' << format_double(value) << '\n';
    emit(out, out_path(o), "coeff.csv", csv.str());
    return kExitOk;
}

int cmd_reconstruct(const Options& o, std::ostream& out) {
    const RunConfig c = resolve_config(o);
    const HawkesParams params = make_params(c);
    const auto dir = out_path(o);
    if (c.input.empty()) {
        // No configuration given: audit over n_paths sampled configurations.
        const ExperimentSpec spec{params, c.n_paths, c.seed, Statistic::ReconstructionAudit, make_mode(c)};
        const ExperimentResult r = run_experiment(spec, dir);
        out << results_csv(r.rows);
        return r.headline.mean == 1.0 ? kExitOk : kExitCheckFailed;
    }
    const Configuration source = read_configuration_csv(c.input, params.window);
    const ReconstructionReport report = reconstruct(params, source);
    std::ostringstream csv;
    csv << "k,sum_c_k\n";
    for (std::size_t k = 0; k < report.partial_sums.size(); ++k) {
        csv << k + 1 << ',' << report.partial_sums[k] << '\n';
    }
    csv << "\ntotal,h_T,exact_match\n"
        << report.total << ',' << report.h_T << ',' << (report.exact_match ? "true" : "false") << '\n';
    emit(out, dir, "reconstruction.csv", csv.str());
    return report.exact_match ? kExitOk : kExitCheckFailed;
}

int cmd_expect(const Options& o, std::ostream& out) {
    const RunConfig c = resolve_config(o);
    const HawkesParams params = make_params(c);
    const double horizon = c.horizon > 0.0 ? c.horizon : c.T;
    const ConvolutionLadder ladder = build_ladder(params.kernel, c.h, horizon, c.n_max);
    const AnalyticExpectation analytic = expected_count_analytic(params, ladder);
    const ExperimentSpec spec{params, c.n_paths, c.seed, Statistic::HawkesMean, make_mode(c)};
    ExperimentResult r = run_experiment(spec, out_path(o));

    std::vector<ResultRow> rows{{"analytic_E_H_T", MCEstimate{0, analytic.value, std::nullopt, c.seed}},
                                {"analytic_budget", MCEstimate{0, analytic.budget, std::nullopt, c.seed}}};
    rows.insert(rows.end(), r.rows.begin(), r.rows.end());
    out << results_csv(rows);
    return within(r.headline, analytic.value, 3.0, analytic.budget) ? kExitOk : kExitCheckFailed;
}

int cmd_branching(const Options& o, std::ostream& out) {
    const RunConfig c = resolve_config(o);
    const HawkesParams params = make_params(c);
    const MCEstimate residual = martingale_residual(params, c.n_paths, c.seed);
    const JumpHistogram hist = jump_size_histogram(params, c.n_paths, c.seed);

    std::ostringstream summary;
    summary << "residual_mean,residual_se,frac_jumps_ge2\n"
            << format_double(residual.mean) << ',' << format_double(residual.se_or_zero()) << ','
            << format_double(hist.fraction_at_least(2)) << '\n';
    out << summary.str();

    if (const auto dir = out_path(o)) {
        // Same keys as the estimators above, so the rows describe the same paths.
        std::ostringstream paths;
        paths << "path_id,t,jump_size\n";
        for (std::size_t i = 0; i < c.n_paths; ++i) {
            const BranchingPath path(params, sample_poisson(params.window, RngKey{c.seed, i}));
            for (std::size_t j = 0; j < path.jump_times().size(); ++j) {
                paths << i << ',' << format_double(path.jump_times()[j]) << ',' << path.jump_sizes()[j] << '\n';
            }
        }
        write_text_file(*dir / "branching_paths.csv", paths.str());
        write_text_file(*dir / "branching_summary.csv", summary.str());
    }
    return within(residual, 0.0, 3.0) ? kExitOk : kExitCheckFailed;
}

int cmd_characterize(const Options& o, std::ostream& out) {
    const RunConfig c = resolve_config(o);
    ExperimentSpec spec{make_params(c), c.n_paths, c.seed, Statistic::Characterization, make_mode(c)};
    spec.j_max = c.j_max;
    const ExperimentResult r = run_experiment(spec, out_path(o));
    out << results_csv(r.rows);
    const auto find = [&](const std::string& name) {
        for (const ResultRow& row : r.rows) {
            if (row.statistic == name) return row.estimate;
        }
        throw InvariantError("missing result row " + name);
    };
    const MCEstimate expectation = find("E_F");
    const double budget = find("truncation_budget").mean;
    const double gap = std::abs(r.headline.mean - expectation.mean);
    return gap <= 3.0 * combined_se(r.headline, expectation) + budget ? kExitOk : kExitCheckFailed;
}

int cmd_ipp(const Options& o, std::ostream& out) {
    const RunConfig c = resolve_config(o);
    const ExperimentSpec spec{make_params(c), c.n_paths, c.seed, Statistic::Ipp, make_mode(c)};
    const ExperimentResult r = run_experiment(spec, out_path(o));
    out << results_csv(r.rows);
    return within(r.headline, 0.0, 3.0) ? kExitOk : kExitCheckFailed;
}

int cmd_selfcheck(const Options& o, std::ostream& out) {
    if (!(o.scale > 0.0)) throw UsageError("--scale must be > 0");
    AcceptanceOptions options;
    options.scale = o.scale;
    if (o.seed) options.seed = *o.seed;
    const auto results = run_acceptance(options, out);
    std::size_t passed = 0;
    for (const auto& r : results) passed += r.passed ? 1 : 0;
    out << passed << "/" << results.size() << " criteria passed\n";
    return passed == results.size() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pseudo-chaotic expansion toolkit for linear Hawkes processes", "pchaos"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "key = value run configuration")->check(CLI::ExistingFile);
        sub->add_option("--seed", o.seed, "override the configured seed");
        sub->add_option("--out", o.out_dir, "directory for CSV artifacts and run_log.jsonl");
        sub->add_option("--paths", o.paths, "override the configured number of paths");
        return sub;
    };

    struct Command {
        CLI::App* app;
        int (*run)(const Options&, std::ostream&);
    };
    std::vector<Command> commands{
        {add_common(app.add_subcommand("simulate", "simulate Hawkes paths, report mean H_T")), cmd_simulate},
        {add_common(app.add_subcommand("coeff", "closed-form coefficient for one point tuple")), cmd_coeff},
        {add_common(app.add_subcommand("reconstruct", "pathwise reconstruction of H_T")), cmd_reconstruct},
        {add_common(app.add_subcommand("expect", "analytic vs Monte Carlo E[H_T]")), cmd_expect},
        {add_common(app.add_subcommand("branching", "chain-counting process X")), cmd_branching},
        {add_common(app.add_subcommand("characterize", "alternating-series identity for E[H_T]")), cmd_characterize},
        {add_common(app.add_subcommand("ipp", "first-order integration by parts")), cmd_ipp},
        {add_common(app.add_subcommand("selfcheck", "acceptance suite at reduced scale")), cmd_selfcheck},
    };
    commands[1].app->add_option("--points", o.points, "t:theta,t:theta,...");
    commands[2].app->add_option("--input", o.input, "configuration CSV with columns t,theta");
    commands[5].app->add_option("--j-max", o.j_max, "number of series terms");
    commands[7].app->add_option("--scale", o.scale, "multiplier on Monte Carlo sample counts")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << app.help();
        return kExitUsage;
    }

    for (const Command& c : commands) {
        if (!c.app->parsed()) continue;
        try {
            return c.run(o, out);
        } catch (const UsageError& e) {
            err << "usage error: " << e.what() << '\n';
            return kExitUsage;
        } catch (const ConfigError& e) {
            err << "config error: " << e.what() << '\n';
            return kExitUsage;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return kExitUsage;
        }
    }
    return kExitUsage;
}

}  // namespace pchaos
