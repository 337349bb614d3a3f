// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "pchaos/configuration.hpp"
#include "pchaos/kernel.hpp"
#include "pchaos/rng.hpp"

namespace pchaos {

/// Linear Hawkes parameters on a finite imbedding window.
struct HawkesParams {
    double mu{1.0};
    Kernel kernel{Kernel::zero()};
    Window window{};

    /// Checks mu > 0, ||Phi||_1 < 1 and M >= mu.
    static HawkesParams make(double mu, Kernel kernel, Window window);
};

/// H and lambda solved along one configuration of the imbedding measure.
struct HawkesPath {
    HawkesParams params;
    Configuration source{Window{}};
    std::vector<std::uint8_t> accepted;     // per source atom
    std::vector<double> intensity_at_atoms; // lambda_{t_i} per source atom
    std::vector<Point> events;              // accepted atoms, increasing t
    bool overflow{false};                   // lambda exceeded M at some atom

    std::size_t count() const noexcept { return events.size(); }
    /// H_t: number of events with time <= t.
    std::size_t count_until(double t) const noexcept;
};

enum class SimulationMode {
    Imbedding,      // thin a Poisson sample of the whole window; may overflow
    ExactThinning,  // local-bound thinning for nonincreasing kernels; never overflows
};

/// lambda_t on the fixed configuration: the triangular system
/// a_j = mu + sum_{i<j} Phi(s_j - s_i) 1{theta_i <= a_i}, then
/// lambda_t = mu + sum_{s_i < t} Phi(t - s_i) 1{theta_i <= a_i}.
double intensity_on_configuration(const HawkesParams& params, const Configuration& fixed, double t);

/// Single ascending sweep; an atom is accepted iff theta <= lambda at its time.
HawkesPath solve_path(const HawkesParams& params, const Configuration& source);

/// Number of accepted atoms of `source` without building a HawkesPath.
std::size_t count_events(const HawkesParams& params, std::span<const Point> sorted_atoms);

/// Generative simulation. ExactThinning throws InvariantError unless the
/// kernel is nonincreasing; its path lives on the window [0,T] x [0,M'] with
/// M' = max(M, largest local bound used).
HawkesPath simulate(const HawkesParams& params, RngKey key,
                    SimulationMode mode = SimulationMode::Imbedding);

/// `path_id,t,theta,accepted,intensity` rows (no header).
void write_path_rows(std::ostream& out, std::uint64_t path_id, const HawkesPath& path);

}  // namespace pchaos
