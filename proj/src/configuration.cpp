// Apache License, Version 2.0, refer to LICENSE.txt
#include "pchaos/configuration.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <ostream>

#include "pchaos/csv_io.hpp"
#include "pchaos/errors.hpp"

namespace pchaos {

namespace {

std::string describe(const Point& p) {
    return "(" + format_double(p.t) + ", " + format_double(p.theta) + ")";
}

void validate_sorted(const Window& window, std::span<const Point> atoms) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const Point& p = atoms[i];
        if (!std::isfinite(p.t) || !std::isfinite(p.theta) || !window.contains(p)) {
            throw DomainError("atom " + describe(p) + " lies outside [0," + format_double(window.T) +
                              "]x[0," + format_double(window.M) + "]");
        }
        if (i > 0 && !(atoms[i - 1].t < p.t)) {
            throw DegenerateInputError("atoms " + describe(atoms[i - 1]) + " and " + describe(p) +
                                       " share a time");
        }
    }
}

}  // namespace

Window Window::make(double T, double M) {
    if (!(T > 0.0) || !std::isfinite(T)) throw InvariantError("window: T must be finite and > 0");
    if (!(M > 0.0) || !std::isfinite(M)) throw InvariantError("window: M must be finite and > 0");
    return Window{T, M};
}

Configuration Configuration::from_points(Window window, std::vector<Point> points) {
    std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
        return a.t < b.t || (a.t == b.t && a.theta < b.theta);
    });
    validate_sorted(window, points);
    Configuration c(window);
    c.atoms_ = std::move(points);
    return c;
}

Configuration Configuration::with_window(Window window) const {
    validate_sorted(window, atoms_);
    Configuration c(window);
    c.atoms_ = atoms_;
    return c;
}

Configuration sample_poisson(Window window, RngKey key) {
    Engine engine = make_engine(key);
    return sample_poisson(window, engine);
}

Configuration sample_poisson(Window window, Engine& engine) {
    std::poisson_distribution<long> count_dist(window.area());
    std::uniform_real_distribution<double> time_dist(0.0, window.T);
    std::uniform_real_distribution<double> mark_dist(0.0, window.M);
    const auto n = static_cast<std::size_t>(count_dist(engine));
    std::vector<Point> points;
    points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = time_dist(engine);
        const double theta = mark_dist(engine);
        points.push_back({t, theta});
    }
    std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) { return a.t < b.t; });
    // Resample colliding times until the configuration lies on the simplex.
    bool collided = true;
    while (collided) {
        collided = false;
        for (std::size_t i = 1; i < points.size(); ++i) {
            if (points[i].t == points[i - 1].t) {
                points[i].t = time_dist(engine);
                collided = true;
            }
        }
        if (collided) {
            std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) { return a.t < b.t; });
        }
    }
    return Configuration::from_points(window, std::move(points));
}

Configuration add_points(const Configuration& config, std::span<const Point> extra) {
    std::vector<Point> merged(config.atoms().begin(), config.atoms().end());
    for (const Point& p : extra) {
        if (!config.window().contains(p)) {
            throw DomainError("add_points: point " + describe(p) + " lies outside the window");
        }
        const auto same_time = std::find_if(merged.begin(), merged.end(),
                                            [&](const Point& q) { return q.t == p.t; });
        if (same_time != merged.end()) {
            if (same_time->theta == p.theta) continue;
            throw DegenerateInputError("add_points: " + describe(p) + " collides in time with " +
                                       describe(*same_time));
        }
        merged.push_back(p);
    }
    return Configuration::from_points(config.window(), std::move(merged));
}

Configuration select(const Configuration& config, std::uint64_t mask) {
    std::vector<Point> points;
    points.reserve(static_cast<std::size_t>(std::popcount(mask)));
    for (std::size_t i = 0; i < config.size(); ++i) {
        if (mask >> i & 1U) points.push_back(config[i]);
    }
    // Already sorted and validated through the parent.
    return Configuration::from_points(config.window(), std::move(points));
}

SubsetStream::SubsetStream(const Configuration& config, std::size_t max_size, std::size_t budget)
    : config_(&config), max_size_(max_size) {
    if (config.size() > budget || config.size() >= 64) throw AtomBudgetExceeded(config.size(), budget);
    end_ = std::uint64_t{1} << config.size();
}

std::optional<Configuration> SubsetStream::next() {
    while (++mask_ < end_) {
        if (static_cast<std::size_t>(std::popcount(mask_)) <= max_size_) return select(*config_, mask_);
    }
    mask_ = end_;
    return std::nullopt;
}

SubsetStream subsets(const Configuration& config, std::size_t max_size, std::size_t budget) {
    return SubsetStream(config, max_size, budget);
}

void write_configuration_csv(std::ostream& out, const Configuration& config) {
    out << "t,theta\n";
    for (const Point& p : config.atoms()) out << format_double(p.t) << ',' << format_double(p.theta) << '\n';
}

Configuration read_configuration_csv(std::istream& in, const std::string& source, Window window) {
    const CsvTable csv = read_csv(in, source);
    const std::size_t t_col = csv.column("t");
    const std::size_t theta_col = csv.column("theta");
    std::vector<Point> points;
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        points.push_back({parse_double(csv.rows[i][t_col], source, i + 2),
                          parse_double(csv.rows[i][theta_col], source, i + 2)});
    }
    return Configuration::from_points(window, std::move(points));
}

Configuration read_configuration_csv(const std::filesystem::path& path, Window window) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_configuration_csv(in, path.string(), window);
}

}  // namespace pchaos
