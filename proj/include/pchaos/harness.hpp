// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pchaos/hawkes.hpp"
#include "pchaos/kernel.hpp"
#include "pchaos/stats.hpp"

namespace pchaos {

struct AnalyticExpectation {
    double value{0.0};
    double budget{0.0};  // resolvent tail + quadrature error estimate
};

/// E[H_T] = mu T + mu int_0^T int_0^u Psi(u - r) dr du on the ladder grid.
/// Throws DomainError when the ladder horizon is shorter than T.
AnalyticExpectation expected_count_analytic(const HawkesParams& params, const ConvolutionLadder& ladder);

enum class Statistic {
    HawkesMean,
    ReconstructionAudit,
    MartingaleResidual,
    JumpHistogram,
    Characterization,
    Ipp,
};

std::string_view statistic_name(Statistic s) noexcept;
std::optional<Statistic> parse_statistic(std::string_view name) noexcept;

struct ExperimentSpec {
    HawkesParams params;
    std::size_t n_paths{10000};
    std::uint64_t seed{0};
    Statistic statistic{Statistic::HawkesMean};
    SimulationMode mode{SimulationMode::ExactThinning};
    std::size_t j_max{2};
    bool write_paths{false};
};

/// One `statistic,mean,se,n,seed` row of the results CSV.
struct ResultRow {
    std::string statistic;
    MCEstimate estimate;
};

struct ExperimentResult {
    MCEstimate headline;
    std::vector<ResultRow> rows;
    std::vector<std::filesystem::path> artifacts;
};

/// Runs the experiment path-parallel with keys (seed, path_index); the result
/// depends on the spec only. With an output directory, writes results.csv,
/// appends the spec and results to run_log.jsonl and optionally paths.csv.
ExperimentResult run_experiment(const ExperimentSpec& spec,
                                const std::optional<std::filesystem::path>& out_dir = std::nullopt);

std::string results_csv(const std::vector<ResultRow>& rows);

struct AuditResult {
    std::size_t checked{0};
    std::size_t exact{0};
    std::size_t skipped_budget{0};
};

/// reconstruct() on every sampled path; over-budget paths are skipped.
AuditResult reconstruction_audit(const HawkesParams& params, std::size_t n_paths, std::uint64_t seed,
                                 std::size_t budget = kDefaultAtomBudget);

}  // namespace pchaos
