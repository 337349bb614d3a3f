// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pchaos/configuration.hpp"
#include "pchaos/hawkes.hpp"
#include "pchaos/malliavin.hpp"
#include "pchaos/stats.hpp"

namespace pchaos {

struct CoefficientQuery {
    HawkesParams params;
    std::vector<Point> points;
};

/// Closed-form pseudo-chaotic coefficient c_k of H_T for a linear Hawkes process.
///
/// With the points sorted by time and x_(k) the latest, returns
///   sum_{S subset {x_(1)..x_(k-1)}} (-1)^{k-1-|S|} 1{theta_(k) <= lambda_{t_(k)}(S)}
/// where lambda on the fixed configuration S comes from the triangular system.
/// Always an integer; symmetric in the points.
double coeff_hawkes(const CoefficientQuery& query, std::size_t budget = kDefaultAtomBudget);

/// c_k as the vanishing-measure expectation of D^k F, i.e. D^k F at the empty
/// configuration: 2^k evaluations of F. Independent of coeff_hawkes.
double coeff_oracle(const Functional& F, Window window, std::span<const Point> points,
                    std::size_t budget = kDefaultAtomBudget);

struct ReconstructionReport {
    Configuration source{Window{}};
    std::vector<long long> partial_sums;  // index k-1: sum of c_k over size-k subsets
    long long total{0};
    long long h_T{0};
    bool exact_match{false};
};

enum class ReconstructionMethod {
    /// Per latest atom, all 2^j indicator values at once (masked adds on the
    /// subset lattice) followed by one Moebius transform.
    Batched,
    /// One coeff_hawkes call per subset. O(3^n); used as a cross-check.
    PerSubset,
};

/// Sum over all nonempty subsets S of the source of c_{|S|}(S), compared with
/// H_T from solve_path. Throws AtomBudgetExceeded past `budget` atoms.
ReconstructionReport reconstruct(const HawkesParams& params, const Configuration& source,
                                 ReconstructionMethod method = ReconstructionMethod::Batched,
                                 std::size_t budget = kDefaultAtomBudget);

struct CharacterizationReport {
    std::size_t j_max{0};
    std::vector<MCEstimate> terms;       // (-1)^{j+1}/j! int E[D^j F], j = 1..j_max
    std::vector<MCEstimate> cumulative;  // partial sums of terms, se combined in quadrature
    MCEstimate next_term;                // term j_max + 1, for the truncation budget
    MCEstimate expectation;              // E[F]
    double truncation_budget{0.0};       // |next_term| + 3 se(next_term)
};

/// Monte Carlo evaluation of both sides of
///   E[F] = sum_j (-1)^{j+1}/j! int_{rect^j} E[D^j F] dx_1..dx_j.
/// Term j draws j uniform points and an independent configuration per path
/// and scales by (T M)^j. Each term and E[F] use disjoint stream families.
CharacterizationReport characterization_check(const Functional& F, Window window, std::size_t j_max,
                                              std::size_t n_paths, std::uint64_t seed);

/// f_j(points) = E[D^j H_T] estimated over sampled configurations.
MCEstimate chaotic_coeff_mc(const HawkesParams& params, std::span<const Point> points,
                            std::size_t n_paths, std::uint64_t seed);

}  // namespace pchaos
