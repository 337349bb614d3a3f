// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace pchaos {

struct CriterionResult {
    int id{0};
    std::string name;
    bool passed{false};
    std::string detail;
};

struct AcceptanceOptions {
    /// Multiplies every Monte Carlo sample count (1.0 = full scale).
    double scale{1.0};
    std::uint64_t seed{20240601};
};

/// Regression value for the fraction of branching jumps of size >= 2 under the
/// default parameters (mu = 1, Phi = 0.5 e^{-t}, T = 5, M = 4), 10^4 paths and
/// the default acceptance seed: 11182 of 49803 jumps on the first verified
/// full-scale run. Path results are keyed by (seed, path index), so the value
/// does not depend on the thread count.
inline constexpr double kPinnedJumpFractionGe2 = 11182.0 / 49803.0;
inline constexpr double kPinnedJumpFractionTolerance = 1e-9;

/// The end-to-end checks, one per criterion, in order 1..10.
std::vector<std::function<CriterionResult(const AcceptanceOptions&)>> acceptance_criteria();

/// Runs every criterion, writing one PASS/FAIL line each to `out` as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::ostream& out);

}  // namespace pchaos
