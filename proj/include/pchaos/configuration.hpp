// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pchaos/rng.hpp"

namespace pchaos {

/// One atom (t, theta) of the planar Poisson measure.
struct Point {
    double t{0.0};
    double theta{0.0};

    friend bool operator==(const Point&, const Point&) = default;
};

/// The rectangle [0, T] x [0, M].
struct Window {
    double T{1.0};
    double M{1.0};

    /// Throws InvariantError unless T > 0 and M > 0 (both finite).
    static Window make(double T, double M);

    double area() const noexcept { return T * M; }
    bool contains(const Point& p) const noexcept {
        return p.t >= 0.0 && p.t <= T && p.theta >= 0.0 && p.theta <= M;
    }

    friend bool operator==(const Window&, const Window&) = default;
};

inline constexpr std::size_t kDefaultAtomBudget = 22;

/// A finite point configuration on a window, sorted by strictly increasing t.
class Configuration {
public:
    explicit Configuration(Window window) : window_(window) {}

    /// Validates and sorts. Throws DomainError for atoms outside the window
    /// and DegenerateInputError for repeated times.
    static Configuration from_points(Window window, std::vector<Point> points);

    const Window& window() const noexcept { return window_; }
    std::span<const Point> atoms() const noexcept { return atoms_; }
    std::size_t size() const noexcept { return atoms_.size(); }
    bool empty() const noexcept { return atoms_.empty(); }
    const Point& operator[](std::size_t i) const { return atoms_[i]; }

    /// Same atoms on another window (must contain them all).
    Configuration with_window(Window window) const;

    friend bool operator==(const Configuration&, const Configuration&) = default;

private:
    Window window_;
    std::vector<Point> atoms_;
};

/// Unit-rate Poisson sample on the window, deterministic in `key`.
Configuration sample_poisson(Window window, RngKey key);
Configuration sample_poisson(Window window, Engine& engine);

/// omega + sum of Dirac masses at `extra`. Points already present are not
/// added twice; a time shared with a different mark is a DegenerateInputError.
Configuration add_points(const Configuration& config, std::span<const Point> extra);

/// Nonempty sub-configurations of size <= max_size, in increasing bitmask order.
class SubsetStream {
public:
    SubsetStream(const Configuration& config, std::size_t max_size,
                 std::size_t budget = kDefaultAtomBudget);

    std::optional<Configuration> next();

    /// Bitmask (over atom indices) of the configuration last returned.
    std::uint64_t current_mask() const noexcept { return mask_; }

private:
    const Configuration* config_;
    std::size_t max_size_;
    std::uint64_t mask_{0};
    std::uint64_t end_;
};

SubsetStream subsets(const Configuration& config, std::size_t max_size,
                     std::size_t budget = kDefaultAtomBudget);

/// Sub-configuration selecting atoms whose bit is set in `mask`.
Configuration select(const Configuration& config, std::uint64_t mask);

/// `t,theta` CSV, one sorted atom per row.
void write_configuration_csv(std::ostream& out, const Configuration& config);
Configuration read_configuration_csv(const std::filesystem::path& path, Window window);
Configuration read_configuration_csv(std::istream& in, const std::string& source, Window window);

}  // namespace pchaos
