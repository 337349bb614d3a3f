// Apache License, Version 2.0, refer to LICENSE.txt
#include "pchaos/pseudo_chaos.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "pchaos/csv_io.hpp"
#include "pchaos/errors.hpp"
#include "pchaos/simd/kernels.hpp"

namespace pchaos {

namespace {

std::vector<Point> sorted_query_points(const HawkesParams& params, std::span<const Point> points) {
    if (points.empty()) throw DomainError("coefficient query needs at least one point");
    std::vector<Point> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end(), [](const Point& a, const Point& b) { return a.t < b.t; });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (!params.window.contains(sorted[i])) {
            throw DomainError("coefficient query point (" + format_double(sorted[i].t) + ", " +
                              format_double(sorted[i].theta) + ") lies outside the window");
        }
        if (i > 0 && sorted[i - 1].t == sorted[i].t) {
            throw DegenerateInputError("coefficient query points share time " + format_double(sorted[i].t));
        }
    }
    return sorted;
}

// Uniform point on the rectangle whose time avoids every atom of `omega` and
// of `taken`.
Point draw_free_point(Engine& engine, const Window& window, const Configuration& omega,
                      std::span<const Point> taken) {
    std::uniform_real_distribution<double> time_dist(0.0, window.T);
    std::uniform_real_distribution<double> mark_dist(0.0, window.M);
    Point x{time_dist(engine), mark_dist(engine)};
    auto collides = [&](double t) {
        return std::any_of(omega.atoms().begin(), omega.atoms().end(), [&](const Point& q) { return q.t == t; }) ||
               std::any_of(taken.begin(), taken.end(), [&](const Point& q) { return q.t == t; });
    };
    while (collides(x.t)) x.t = time_dist(engine);
    return x;
}

}  // namespace

double coeff_hawkes(const CoefficientQuery& query, std::size_t budget) {
    const std::vector<Point> sorted = sorted_query_points(query.params, query.points);
    const std::size_t k = sorted.size();
    if (k - 1 > budget || k - 1 >= 63) throw AtomBudgetExceeded(k - 1, budget);
    const Point& last = sorted.back();
    const Configuration earlier =
        Configuration::from_points(query.params.window, std::vector<Point>(sorted.begin(), sorted.end() - 1));

    long long acc = 0;
    const std::uint64_t end = std::uint64_t{1} << (k - 1);
    for (std::uint64_t mask = 0; mask < end; ++mask) {
        const double lam = intensity_on_configuration(query.params, select(earlier, mask), last.t);
        if (!(last.theta <= lam)) continue;
        const bool negative = (k - 1 - static_cast<std::size_t>(std::popcount(mask))) % 2 == 1;
        acc += negative ? -1 : 1;
    }
    return static_cast<double>(acc);
}

double coeff_oracle(const Functional& F, Window window, std::span<const Point> points, std::size_t budget) {
    return derivative_n(F, Configuration(window), points, budget);
}

ReconstructionReport reconstruct(const HawkesParams& params, const Configuration& source,
                                 ReconstructionMethod method, std::size_t budget) {
    const std::size_t n = source.size();
    if (n > budget || n >= 31) throw AtomBudgetExceeded(n, budget);

    ReconstructionReport report;
    report.source = source;
    report.partial_sums.assign(n, 0);
    const auto atoms = source.atoms();

    if (method == ReconstructionMethod::PerSubset) {
        SubsetStream stream(source, n, budget);
        while (auto subset = stream.next()) {
            CoefficientQuery q{params, std::vector<Point>(subset->atoms().begin(), subset->atoms().end())};
            report.partial_sums[subset->size() - 1] += std::llround(coeff_hawkes(q, budget));
        }
    } else {
        // accepted[j][U]: 1{theta_j <= lambda_{t_j}(U)} for U a subset of atoms < j.
        std::vector<std::vector<std::uint8_t>> accepted(n);
        std::vector<double> lam;
        std::vector<std::int32_t> coeffs;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t size = std::size_t{1} << j;
            lam.assign(size, params.mu);
            for (std::size_t b = 0; b < j; ++b) {
                const std::size_t half = std::size_t{1} << b;
                const double w = params.kernel(atoms[j].t - atoms[b].t);
                simd::masked_add(std::span(lam).subspan(half, half), std::span<const double>(lam).first(half),
                                 accepted[b], w);
            }
            accepted[j].resize(size);
            simd::threshold_le(accepted[j], lam, atoms[j].theta);

            coeffs.assign(accepted[j].begin(), accepted[j].end());
            simd::mobius_alternating(coeffs);
            for (std::size_t mask = 0; mask < size; ++mask) {
                report.partial_sums[static_cast<std::size_t>(std::popcount(mask))] += coeffs[mask];
            }
        }
    }

    for (long long s : report.partial_sums) report.total += s;
    report.h_T = static_cast<long long>(solve_path(params, source).count());
    report.exact_match = report.total == report.h_T;
    return report;
}

CharacterizationReport characterization_check(const Functional& F, Window window, std::size_t j_max,
                                              std::size_t n_paths, std::uint64_t seed) {
    if (j_max < 1) throw DomainError("characterization_check: j_max must be >= 1");
    CharacterizationReport report;
    report.j_max = j_max;

    const std::uint64_t f_seed = derive_seed(seed, 0);
    const auto f_samples = parallel_map(n_paths, [&](std::size_t i) {
        return F(sample_poisson(window, RngKey{f_seed, i}));
    });
    report.expectation = summarize(f_samples, f_seed);

    auto term = [&](std::size_t j) {
        const std::uint64_t term_seed = derive_seed(seed, j);
        const double scale = std::pow(window.area(), static_cast<double>(j)) / std::tgamma(static_cast<double>(j) + 1.0) *
                             (j % 2 == 1 ? 1.0 : -1.0);
        const auto samples = parallel_map(n_paths, [&](std::size_t i) {
            Engine engine = make_engine({term_seed, i});
            const Configuration omega = sample_poisson(window, engine);
            std::vector<Point> points;
            points.reserve(j);
            for (std::size_t p = 0; p < j; ++p) points.push_back(draw_free_point(engine, window, omega, points));
            return scale * derivative_n(F, omega, points);
        });
        return summarize(samples, term_seed);
    };

    double mean = 0.0;
    double var = 0.0;
    for (std::size_t j = 1; j <= j_max; ++j) {
        MCEstimate t = term(j);
        mean += t.mean;
        var += t.se_or_zero() * t.se_or_zero();
        MCEstimate cum{t.n, mean, std::sqrt(var), seed};
        report.terms.push_back(t);
        report.cumulative.push_back(cum);
    }
    report.next_term = term(j_max + 1);
    report.truncation_budget = std::abs(report.next_term.mean) + 3.0 * report.next_term.se_or_zero();
    return report;
}

MCEstimate chaotic_coeff_mc(const HawkesParams& params, std::span<const Point> points, std::size_t n_paths,
                            std::uint64_t seed) {
    if (points.empty()) throw DomainError("chaotic_coeff_mc: need at least one point");
    const Functional F = counting_functional(params);
    const auto samples = parallel_map(n_paths, [&](std::size_t i) {
        Engine engine = make_engine({seed, i});
        while (true) {
            const Configuration omega = sample_poisson(params.window, engine);
            const bool clash = std::any_of(points.begin(), points.end(), [&](const Point& x) {
                return std::any_of(omega.atoms().begin(), omega.atoms().end(),
                                   [&](const Point& q) { return q.t == x.t; });
            });
            if (!clash) return derivative_n(F, omega, points);
        }
    });
    return summarize(samples, seed);
}

}  // namespace pchaos
