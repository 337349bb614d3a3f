// Apache License, Version 2.0, refer to LICENSE.txt
#include "pchaos/harness.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pchaos/branching.hpp"
#include "pchaos/csv_io.hpp"
#include "pchaos/errors.hpp"
#include "pchaos/malliavin.hpp"
#include "pchaos/pseudo_chaos.hpp"

namespace pchaos {

AnalyticExpectation expected_count_analytic(const HawkesParams& params, const ConvolutionLadder& ladder) {
    const double T = params.window.T;
    if (ladder.horizon() < T * (1.0 - 1e-12)) {
        throw DomainError("expected_count_analytic: ladder horizon " + format_double(ladder.horizon()) +
                          " is shorter than T=" + format_double(T));
    }
    const auto psi = ladder.psi();
    const double fine = nested_double_integral(psi, ladder.step(), 0.0, T);

    // Same samples at twice the step give the quadrature error estimate.
    std::vector<double> coarse;
    for (std::size_t i = 0; i < psi.size(); i += 2) coarse.push_back(psi[i]);
    double coarse_value = fine;
    if (coarse.size() >= 2 && 2.0 * ladder.step() * static_cast<double>(coarse.size() - 1) >= T) {
        coarse_value = nested_double_integral(coarse, 2.0 * ladder.step(), 0.0, T);
    }
    AnalyticExpectation out;
    out.value = params.mu * T + params.mu * fine;
    out.budget = params.mu * (T * ladder.tail_bound() + std::abs(fine - coarse_value));
    return out;
}

std::string_view statistic_name(Statistic s) noexcept {
    switch (s) {
        case Statistic::HawkesMean: return "hawkes_mean";
        case Statistic::ReconstructionAudit: return "reconstruction_audit";
        case Statistic::MartingaleResidual: return "martingale_residual";
        case Statistic::JumpHistogram: return "jump_histogram";
        case Statistic::Characterization: return "characterization";
        case Statistic::Ipp: return "ipp";
    }
    return "unknown";
}

std::optional<Statistic> parse_statistic(std::string_view name) noexcept {
    for (Statistic s : {Statistic::HawkesMean, Statistic::ReconstructionAudit, Statistic::MartingaleResidual,
                        Statistic::JumpHistogram, Statistic::Characterization, Statistic::Ipp}) {
        if (statistic_name(s) == name) return s;
    }
    return std::nullopt;
}

AuditResult reconstruction_audit(const HawkesParams& params, std::size_t n_paths, std::uint64_t seed,
                                 std::size_t budget) {
    enum Outcome : int { Exact, Mismatch, Skipped };
    const auto outcomes = parallel_map(n_paths, [&](std::size_t i) {
        const Configuration source = sample_poisson(params.window, RngKey{seed, i});
        if (source.size() > budget) return Skipped;
        return reconstruct(params, source, ReconstructionMethod::Batched, budget).exact_match ? Exact : Mismatch;
    });
    AuditResult result;
    for (int o : outcomes) {
        if (o == Skipped) {
            ++result.skipped_budget;
            continue;
        }
        ++result.checked;
        if (o == Exact) ++result.exact;
    }
    return result;
}

namespace {

MCEstimate exact_value(double value, std::size_t n, std::uint64_t seed) {
    return MCEstimate{n, value, std::nullopt, seed};
}

nlohmann::json estimate_json(const MCEstimate& e) {
    nlohmann::json j{{"n", e.n}, {"mean", e.mean}, {"seed", e.seed}};
    j["se"] = e.se ? nlohmann::json(*e.se) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json spec_json(const ExperimentSpec& spec) {
    const Kernel& k = spec.params.kernel;
    nlohmann::json kernel{{"family", k.family() == Kernel::Family::Exponential ? "exp" : "table"},
                          {"l1_norm", k.l1_norm()},
                          {"sup_norm", k.sup_norm()}};
    if (k.family() == Kernel::Family::Exponential) {
        kernel["alpha"] = k.alpha();
        kernel["beta"] = k.beta();
    } else {
        kernel["step"] = k.table_step();
        kernel["nodes"] = k.table_values().size();
    }
    return nlohmann::json{{"statistic", statistic_name(spec.statistic)},
                          {"mu", spec.params.mu},
                          {"T", spec.params.window.T},
                          {"M", spec.params.window.M},
                          {"kernel", kernel},
                          {"n_paths", spec.n_paths},
                          {"seed", spec.seed},
                          {"mode", spec.mode == SimulationMode::ExactThinning ? "thinning" : "imbedding"},
                          {"j_max", spec.j_max}};
}

}  // namespace

std::string results_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    out << "statistic,mean,se,n,seed\n";
    for (const ResultRow& r : rows) {
        out << r.statistic << ',' << format_double(r.estimate.mean) << ','
            << (r.estimate.se ? format_double(*r.estimate.se) : std::string()) << ',' << r.estimate.n << ','
            << r.estimate.seed << '\n';
    }
    return out.str();
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const std::optional<std::filesystem::path>& out_dir) {
    if (spec.n_paths < 1) throw DomainError("run_experiment: n_paths must be >= 1");
    const HawkesParams& params = spec.params;
    const std::uint64_t seed = spec.seed;
    ExperimentResult result;
    std::string paths_text;

    switch (spec.statistic) {
        case Statistic::HawkesMean: {
            const auto paths = parallel_map(spec.n_paths, [&](std::size_t i) {
                return simulate(params, RngKey{seed, i}, spec.mode);
            });
            std::vector<double> counts(paths.size()), overflow(paths.size());
            for (std::size_t i = 0; i < paths.size(); ++i) {
                counts[i] = static_cast<double>(paths[i].count());
                overflow[i] = paths[i].overflow ? 1.0 : 0.0;
            }
            result.headline = summarize(counts, seed);
            result.rows.push_back({"H_T_mean", result.headline});
            result.rows.push_back({"overflow_fraction", summarize(overflow, seed)});
            if (spec.write_paths) {
                std::ostringstream out;
                out << "path_id,t,theta,accepted,intensity\n";
                for (std::size_t i = 0; i < paths.size(); ++i) write_path_rows(out, i, paths[i]);
                paths_text = out.str();
            }
            break;
        }
        case Statistic::ReconstructionAudit: {
            const AuditResult audit = reconstruction_audit(params, spec.n_paths, seed);
            const double frac = audit.checked == 0 ? 0.0 : static_cast<double>(audit.exact) /
                                                               static_cast<double>(audit.checked);
            result.headline = exact_value(frac, audit.checked, seed);
            result.rows.push_back({"exact_fraction", result.headline});
            result.rows.push_back({"checked", exact_value(static_cast<double>(audit.checked), spec.n_paths, seed)});
            result.rows.push_back({"exact", exact_value(static_cast<double>(audit.exact), spec.n_paths, seed)});
            result.rows.push_back(
                {"skipped_budget", exact_value(static_cast<double>(audit.skipped_budget), spec.n_paths, seed)});
            break;
        }
        case Statistic::MartingaleResidual: {
            result.headline = martingale_residual(params, spec.n_paths, seed);
            result.rows.push_back({"residual", result.headline});
            result.rows.push_back({"X_T_mean", branching_mean(params, spec.n_paths, seed)});
            break;
        }
        case Statistic::JumpHistogram: {
            const JumpHistogram hist = jump_size_histogram(params, spec.n_paths, seed);
            result.headline = exact_value(hist.fraction_at_least(2), hist.jumps, seed);
            result.rows.push_back({"frac_jumps_ge2", result.headline});
            result.rows.push_back({"ignored_fraction", exact_value(hist.ignored_fraction(), hist.atoms, seed)});
            for (const auto& [size, count] : hist.counts) {
                result.rows.push_back({"jump_size_" + std::to_string(size),
                                       exact_value(static_cast<double>(count), hist.jumps, seed)});
            }
            break;
        }
        case Statistic::Characterization: {
            const auto report =
                characterization_check(counting_functional(params), params.window, spec.j_max, spec.n_paths, seed);
            for (std::size_t j = 0; j < report.terms.size(); ++j) {
                result.rows.push_back({"term_" + std::to_string(j + 1), report.terms[j]});
                result.rows.push_back({"cumulative_" + std::to_string(j + 1), report.cumulative[j]});
            }
            result.rows.push_back({"next_term", report.next_term});
            result.rows.push_back({"E_F", report.expectation});
            result.rows.push_back({"truncation_budget", exact_value(report.truncation_budget, spec.n_paths, seed)});
            result.headline = report.cumulative.back();
            break;
        }
        case Statistic::Ipp: {
            const IppCheck ipp = ipp_check_order1(counting_functional(params), params.window, spec.n_paths, seed);
            result.rows.push_back({"ipp_lhs", ipp.lhs});
            result.rows.push_back({"ipp_rhs", ipp.rhs});
            result.headline = MCEstimate{ipp.lhs.n, ipp.lhs.mean - ipp.rhs.mean, combined_se(ipp.lhs, ipp.rhs), seed};
            result.rows.push_back({"ipp_difference", result.headline});
            break;
        }
    }

    if (out_dir) {
        const auto results_path = *out_dir / "results.csv";
        write_text_file(results_path, results_csv(result.rows));
        result.artifacts.push_back(results_path);
        if (!paths_text.empty()) {
            const auto paths_path = *out_dir / "paths.csv";
            write_text_file(paths_path, paths_text);
            result.artifacts.push_back(paths_path);
        }
        nlohmann::json log{{"spec", spec_json(spec)}};
        for (const ResultRow& r : result.rows) log["results"][r.statistic] = estimate_json(r.estimate);
        const auto log_path = *out_dir / "run_log.jsonl";
        std::ofstream out(log_path, std::ios::app);
        if (!out) throw std::runtime_error("cannot open " + log_path.string() + " for appending");
        out << log.dump() << '\n';
        result.artifacts.push_back(log_path);
    }
    return result;
}

}  // namespace pchaos
