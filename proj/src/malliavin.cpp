// Apache License, Version 2.0, refer to LICENSE.txt
#include "pchaos/malliavin.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "pchaos/csv_io.hpp"
#include "pchaos/errors.hpp"

namespace pchaos {

namespace {

std::vector<Point> atoms_inside(const Configuration& omega, const Window& window) {
    std::vector<Point> inside;
    inside.reserve(omega.size());
    for (const Point& p : omega.atoms()) {
        if (window.contains(p)) inside.push_back(p);
    }
    return inside;
}

}  // namespace

Functional counting_functional(const HawkesParams& params) {
    return Functional{[params](const Configuration& omega) {
                          if (omega.window() == params.window) {
                              return static_cast<double>(count_events(params, omega.atoms()));
                          }
                          const auto inside = atoms_inside(omega, params.window);
                          return static_cast<double>(count_events(params, inside));
                      },
                      params.window, "H_T"};
}

Functional rectangle_count(Window window) {
    return Functional{[window](const Configuration& omega) {
                          if (omega.window() == window) return static_cast<double>(omega.size());
                          return static_cast<double>(atoms_inside(omega, window).size());
                      },
                      window, "N(rect)"};
}

Functional constant_functional(Window window, double value) {
    return Functional{[value](const Configuration&) { return value; }, window,
                      "const(" + format_double(value) + ")"};
}

double derivative_n(const Functional& F, const Configuration& base, std::span<const Point> points,
                    std::size_t budget) {
    const std::size_t n = points.size();
    if (n == 0) throw DomainError("derivative_n: need at least one point");
    if (n > budget || n >= 63) throw AtomBudgetExceeded(n, budget);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (points[i].t == points[j].t) {
                throw DegenerateInputError("derivative_n: points share time " + format_double(points[i].t));
            }
        }
        for (const Point& b : base.atoms()) {
            if (b.t == points[i].t) {
                throw DegenerateInputError("derivative_n: point time " + format_double(points[i].t) +
                                           " collides with a base atom");
            }
        }
    }
    // F ignores atoms outside its window: pairing J with J + {x} cancels.
    for (const Point& p : points) {
        if (!F.window.contains(p)) return 0.0;
    }

    // One sorted merge of base and points; each subset filters it.
    struct Tagged {
        Point p;
        int point_index;  // -1 for base atoms
    };
    std::vector<Tagged> merged;
    merged.reserve(base.size() + n);
    for (const Point& b : base.atoms()) merged.push_back({b, -1});
    for (std::size_t i = 0; i < n; ++i) merged.push_back({points[i], static_cast<int>(i)});
    std::sort(merged.begin(), merged.end(), [](const Tagged& a, const Tagged& b) { return a.p.t < b.p.t; });

    Window window = base.window();
    for (const Point& p : points) window.T = std::max(window.T, p.t), window.M = std::max(window.M, p.theta);

    double acc = 0.0;
    const std::uint64_t end = std::uint64_t{1} << n;
    std::vector<Point> atoms;
    atoms.reserve(merged.size());
    for (std::uint64_t mask = 0; mask < end; ++mask) {
        atoms.clear();
        for (const Tagged& m : merged) {
            if (m.point_index < 0 || (mask >> m.point_index & 1U)) atoms.push_back(m.p);
        }
        const double value = F(Configuration::from_points(window, atoms));
        const bool negative = (n - static_cast<std::size_t>(std::popcount(mask))) % 2 == 1;
        acc += negative ? -value : value;
    }
    return acc;
}

double vanishing_expectation(const Functional& F, Window window) { return F(Configuration(window)); }

double VanishingWeight::operator()(const Configuration& omega) const {
    for (const Point& p : omega.atoms()) {
        if (window.contains(p)) return 0.0;
    }
    return std::exp(window.area());
}

IppCheck ipp_check_order1(const Functional& F, Window window, std::size_t n_paths, std::uint64_t seed) {
    const double area = window.area();
    struct Sample {
        double lhs;
        double rhs;
    };
    const auto samples = parallel_map(n_paths, [&](std::size_t i) {
        Engine engine = make_engine({seed, i});
        const Configuration omega = sample_poisson(window, engine);
        std::uniform_real_distribution<double> time_dist(0.0, window.T);
        std::uniform_real_distribution<double> mark_dist(0.0, window.M);
        Point x{time_dist(engine), mark_dist(engine)};
        auto collides = [&](const Point& p) {
            return std::any_of(omega.atoms().begin(), omega.atoms().end(),
                               [&](const Point& q) { return q.t == p.t; });
        };
        while (collides(x)) x.t = time_dist(engine);
        const double f = F(omega);
        const double lhs = area * derivative_n(F, omega, std::span(&x, 1));
        const double rhs = f * (static_cast<double>(omega.size()) - area);
        return Sample{lhs, rhs};
    });
    std::vector<double> lhs(n_paths), rhs(n_paths);
    for (std::size_t i = 0; i < n_paths; ++i) {
        lhs[i] = samples[i].lhs;
        rhs[i] = samples[i].rhs;
    }
    return IppCheck{summarize(lhs, seed), summarize(rhs, seed)};
}

}  // namespace pchaos
