// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "pchaos/configuration.hpp"
#include "pchaos/hawkes.hpp"
#include "pchaos/stats.hpp"

namespace pchaos {

// The chain-counting process X = sum_n X^(n). A chain is a time-ordered run of
// atoms (v_1, theta_1), ..., (v_n, theta_n) with theta_1 <= mu and
// theta_i <= Phi(v_i - v_{i-1}); X jumps at every atom by the number of chains
// ending there, so jumps larger than one do occur.

/// Number of chains (of any length) ending at each atom of `source`.
/// Requires M >= max(mu, sup Phi) so that no chain link is cut by the window.
std::vector<std::uint64_t> chain_counts(const HawkesParams& params, const Configuration& source);

/// counts[n-1][i]: chains of exactly length n ending at atom i, n <= max_length.
std::vector<std::vector<std::uint64_t>> chain_counts_by_length(const HawkesParams& params,
                                                               const Configuration& source,
                                                               std::size_t max_length);

class BranchingPath {
public:
    BranchingPath(HawkesParams params, Configuration source);

    const HawkesParams& params() const noexcept { return params_; }
    const Configuration& source() const noexcept { return source_; }
    std::span<const std::uint64_t> chain_counts() const noexcept { return counts_; }
    std::span<const double> jump_times() const noexcept { return jump_times_; }
    std::span<const std::uint64_t> jump_sizes() const noexcept { return jump_sizes_; }

    /// X_t = sum_{t_x <= t} c(x).
    std::uint64_t value_at(double t) const noexcept;
    /// ell_t = mu + sum_{t_x < t} Phi(t - t_x) c(x).
    double ell(double t) const;
    /// int_0^t ell_u du = mu t + sum_{t_x < t} c(x) int_0^{t - t_x} Phi.
    double ell_integral(double t) const;

private:
    HawkesParams params_;
    Configuration source_;
    std::vector<std::uint64_t> counts_;
    std::vector<double> jump_times_;
    std::vector<std::uint64_t> jump_sizes_;
};

BranchingPath branching_path(const HawkesParams& params, const Configuration& source);

/// E[X_T - int_0^T ell] over sampled configurations.
MCEstimate martingale_residual(const HawkesParams& params, std::size_t n_paths, std::uint64_t seed);

/// E[X_T] over the same stream family as martingale_residual.
MCEstimate branching_mean(const HawkesParams& params, std::size_t n_paths, std::uint64_t seed);

/// One-step conditional check: fix the atoms on [0, T/2] (drawn from
/// `prefix_seed`), resample (T/2, T] and estimate
/// E[(X_T - X_{T/2}) - int_{T/2}^T ell | prefix].
MCEstimate conditional_martingale_residual(const HawkesParams& params, std::uint64_t prefix_seed,
                                           std::size_t n_paths, std::uint64_t seed);

struct JumpHistogram {
    std::map<std::uint64_t, std::uint64_t> counts;  // jump size -> number of jumps
    std::uint64_t jumps{0};
    std::uint64_t atoms{0};
    std::uint64_t ignored_atoms{0};  // theta > max(mu, sup Phi)

    double fraction_at_least(std::uint64_t size) const noexcept;
    double ignored_fraction() const noexcept;
};

JumpHistogram jump_size_histogram(const HawkesParams& params, const Configuration& source);
JumpHistogram jump_size_histogram(const HawkesParams& params, std::size_t n_paths, std::uint64_t seed);

/// Per-path mass of chains longer than p, i.e. X_T - sum_{n <= p} X_T^(n).
MCEstimate chain_length_tail(const HawkesParams& params, std::size_t p, std::size_t n_paths,
                             std::uint64_t seed);

/// mu T ||Phi||^p / (1 - ||Phi||).
double chain_length_tail_bound(const HawkesParams& params, std::size_t p);

}  // namespace pchaos
