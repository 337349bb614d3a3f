// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace pchaos {

/// Nonnegative causal excitation kernel.
///
/// Two families: an exponential `alpha * exp(-beta t)` and a table sampled on
/// a uniform grid starting at 0, linearly interpolated between nodes and
/// identically zero past the last node. The L1 and sup norms are cached at
/// construction. A kernel itself may have any L1 norm; stability (< 1) is
/// enforced by the consumers that need it.
class Kernel {
public:
    enum class Family { Exponential, Table };

    static Kernel exponential(double alpha, double beta);
    static Kernel table(double step, std::vector<double> values);
    /// Identically zero kernel (Poisson reduction).
    static Kernel zero();
    /// Loads a `t,value` CSV; t must start at 0 and be equally spaced.
    static Kernel load_table_csv(const std::filesystem::path& path);

    Family family() const noexcept { return family_; }
    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double table_step() const noexcept { return step_; }
    std::span<const double> table_values() const noexcept { return values_; }
    /// Time past which the kernel is zero (infinite for exponential kernels).
    double support() const noexcept;

    double operator()(double t) const;
    double eval(double t) const { return (*this)(t); }

    /// Integral of the kernel over [0, s].
    double partial_integral(double s) const;

    double l1_norm() const noexcept { return l1_norm_; }
    double sup_norm() const noexcept { return sup_norm_; }
    bool is_zero() const noexcept { return sup_norm_ == 0.0; }
    /// True when t -> kernel(t) is nonincreasing; enables exact local-bound thinning.
    bool nonincreasing() const noexcept { return nonincreasing_; }

    std::string describe() const;

private:
    Kernel() = default;

    Family family_{Family::Exponential};
    double alpha_{0.0};
    double beta_{1.0};
    double step_{0.0};
    std::vector<double> values_;
    double l1_norm_{0.0};
    double sup_norm_{0.0};
    bool nonincreasing_{true};
};

/// Iterated convolutions Phi_1 = Phi, Phi_n = Phi * Phi_{n-1} and the
/// truncated resolvent Psi = sum_{n <= n_max} Phi_n, sampled on a uniform grid
/// [0, horizon] by the trapezoid rule. Immutable once built.
class ConvolutionLadder {
public:
    static constexpr std::size_t kDefaultLevels = 40;

    const Kernel& kernel() const noexcept { return kernel_; }
    double step() const noexcept { return step_; }
    double horizon() const noexcept { return step_ * static_cast<double>(nodes() - 1); }
    std::size_t nodes() const noexcept { return psi_.size(); }
    std::size_t n_max() const noexcept { return levels_.size(); }

    /// Samples of Phi_n, n in [1, n_max].
    std::span<const double> level(std::size_t n) const;
    std::span<const double> psi() const noexcept { return psi_; }

    /// Linear interpolation of the sampled Phi_n / Psi; zero past the horizon.
    double level_at(std::size_t n, double t) const;
    double psi_at(double t) const;

    /// Bound on the L1 mass of Psi dropped by stopping at n_max:
    /// ||Phi||^{n_max+1} / (1 - ||Phi||).
    double tail_bound() const noexcept { return tail_bound_; }

private:
    friend ConvolutionLadder build_ladder(const Kernel&, double, double, std::size_t);
    ConvolutionLadder(Kernel kernel, double step) : kernel_(std::move(kernel)), step_(step) {}

    Kernel kernel_;
    double step_;
    std::vector<std::vector<double>> levels_;
    std::vector<double> psi_;
    double tail_bound_{0.0};
};

/// Throws StabilityError when ||Phi||_1 >= 1 and DomainError on bad grid arguments.
ConvolutionLadder build_ladder(const Kernel& kernel, double step, double horizon,
                               std::size_t n_max = ConvolutionLadder::kDefaultLevels);

/// Trapezoid integral of the sampled resolvent over the ladder horizon.
double psi_l1(const ConvolutionLadder& ladder);

/// Trapezoid integral of uniformly spaced samples over [0, step * (n - 1)].
double trapezoid(std::span<const double> samples, double step);

/// int_s^t int_s^u g(u - r) dr du for g sampled on the grid, computed as the
/// single integral int_0^{t-s} (t - s - v) g(v) dv.
double nested_double_integral(std::span<const double> samples, double step, double s, double t);

}  // namespace pchaos
