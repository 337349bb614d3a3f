// Apache License, Version 2.0, refer to LICENSE.txt
#include "pchaos/hawkes.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "pchaos/csv_io.hpp"
#include "pchaos/errors.hpp"

namespace pchaos {

HawkesParams HawkesParams::make(double mu, Kernel kernel, Window window) {
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw InvariantError("hawkes: baseline mu must be finite and > 0, got " + format_double(mu));
    }
    if (!(kernel.l1_norm() < 1.0)) {
        throw StabilityError("hawkes: kernel " + kernel.describe() + " has L1 norm " +
                             format_double(kernel.l1_norm()) + " >= 1");
    }
    window = Window::make(window.T, window.M);
    if (window.M < mu) {
        throw InvariantError("hawkes: mark ceiling M=" + format_double(window.M) +
                             " is below mu=" + format_double(mu));
    }
    return HawkesParams{mu, std::move(kernel), window};
}

std::size_t HawkesPath::count_until(double t) const noexcept {
    return static_cast<std::size_t>(
        std::upper_bound(events.begin(), events.end(), t,
                         [](double v, const Point& p) { return v < p.t; }) -
        events.begin());
}

namespace {

// mu + sum over accepted atoms strictly before t, ascending in time. Every
// intensity in the library goes through this accumulation order.
double accumulate_intensity(const HawkesParams& params, std::span<const Point> atoms,
                            std::span<const std::uint8_t> accepted, double t) {
    double lam = params.mu;
    for (std::size_t i = 0; i < atoms.size() && atoms[i].t < t; ++i) {
        if (accepted[i]) lam += params.kernel(t - atoms[i].t);
    }
    return lam;
}

}  // namespace

double intensity_on_configuration(const HawkesParams& params, const Configuration& fixed, double t) {
    if (!(t >= 0.0)) throw DomainError("intensity_on_configuration: t must be >= 0");
    const auto atoms = fixed.atoms();
    std::vector<std::uint8_t> accepted(atoms.size(), 0);
    for (std::size_t j = 0; j < atoms.size() && atoms[j].t < t; ++j) {
        const double a = accumulate_intensity(params, atoms.first(j), accepted, atoms[j].t);
        accepted[j] = atoms[j].theta <= a ? 1 : 0;
    }
    return accumulate_intensity(params, atoms, accepted, t);
}

HawkesPath solve_path(const HawkesParams& params, const Configuration& source) {
    HawkesPath path{params, source, {}, {}, {}, false};
    const auto atoms = source.atoms();
    path.accepted.assign(atoms.size(), 0);
    path.intensity_at_atoms.resize(atoms.size());
    for (std::size_t j = 0; j < atoms.size(); ++j) {
        const double a = accumulate_intensity(params, atoms.first(j), path.accepted, atoms[j].t);
        path.intensity_at_atoms[j] = a;
        if (a > params.window.M) path.overflow = true;
        if (atoms[j].theta <= a) {
            path.accepted[j] = 1;
            path.events.push_back(atoms[j]);
        }
    }
    return path;
}

std::size_t count_events(const HawkesParams& params, std::span<const Point> sorted_atoms) {
    // Only accepted atoms feed the intensity; keep their times compactly.
    std::vector<double> times;
    times.reserve(sorted_atoms.size());
    for (const Point& p : sorted_atoms) {
        double lam = params.mu;
        for (double s : times) lam += params.kernel(p.t - s);
        if (p.theta <= lam) times.push_back(p.t);
    }
    return times.size();
}

HawkesPath simulate(const HawkesParams& params, RngKey key, SimulationMode mode) {
    if (mode == SimulationMode::Imbedding) return solve_path(params, sample_poisson(params.window, key));

    if (!params.kernel.nonincreasing()) {
        throw InvariantError("simulate: exact thinning needs a nonincreasing kernel, got " +
                             params.kernel.describe());
    }
    Engine engine = make_engine(key);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Point> proposals;
    std::vector<std::uint8_t> accepted;
    double max_bound = params.mu;
    double s = 0.0;
    while (true) {
        // Right limit of the intensity at s bounds it until the next acceptance.
        double bound = params.mu;
        for (std::size_t i = 0; i < proposals.size(); ++i) {
            if (accepted[i]) bound += params.kernel(s - proposals[i].t);
        }
        std::exponential_distribution<double> gap(bound);
        const double next = s + gap(engine);
        if (next > params.window.T) break;
        if (next == s) continue;
        s = next;
        const double theta = unit(engine) * bound;
        max_bound = std::max(max_bound, bound);
        const double lam = accumulate_intensity(params, proposals, accepted, s);
        proposals.push_back({s, theta});
        accepted.push_back(theta <= lam ? 1 : 0);
    }
    HawkesParams widened = params;
    widened.window.M = std::max(params.window.M, max_bound);
    return solve_path(widened, Configuration::from_points(widened.window, std::move(proposals)));
}

void write_path_rows(std::ostream& out, std::uint64_t path_id, const HawkesPath& path) {
    const auto atoms = path.source.atoms();
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        out << path_id << ',' << format_double(atoms[i].t) << ',' << format_double(atoms[i].theta) << ','
            << static_cast<int>(path.accepted[i]) << ',' << format_double(path.intensity_at_atoms[i]) << '\n';
    }
}

}  // namespace pchaos
