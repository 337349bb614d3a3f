// Apache License, Version 2.0, refer to LICENSE.txt
#include <gtest/gtest.h>

#include <random>

#include "pchaos/errors.hpp"
#include "pchaos/hawkes.hpp"
#include "pchaos/stats.hpp"

using namespace pchaos;

namespace {

HawkesParams exp_params(double T = 3.0, double M = 2.0) {
    return HawkesParams::make(1.0, Kernel::exponential(0.5, 1.0), Window{T, M});
}

Configuration config(Window w, std::vector<Point> pts) { return Configuration::from_points(w, std::move(pts)); }

std::vector<double> event_counts(const HawkesParams& p, std::size_t n, std::uint64_t seed, SimulationMode mode) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<double>(simulate(p, RngKey{seed, i}, mode).count());
    return out;
}

}  // namespace

TEST(HawkesParams, Invariants) {
    EXPECT_THROW(HawkesParams::make(0.0, Kernel::zero(), Window{1.0, 1.0}), InvariantError);
    EXPECT_THROW(HawkesParams::make(-1.0, Kernel::zero(), Window{1.0, 1.0}), InvariantError);
    EXPECT_THROW(HawkesParams::make(1.0, Kernel::exponential(1.5, 1.0), Window{1.0, 2.0}), StabilityError);
    EXPECT_THROW(HawkesParams::make(2.0, Kernel::zero(), Window{1.0, 1.0}), InvariantError);
}

TEST(Intensity, Examples) {
    const HawkesParams p = exp_params();
    EXPECT_EQ(intensity_on_configuration(p, Configuration(p.window), 0.0), 1.0);
    EXPECT_EQ(intensity_on_configuration(p, Configuration(p.window), 2.7), 1.0);
    EXPECT_NEAR(intensity_on_configuration(p, config(p.window, {{1.0, 0.5}}), 2.0), 1.1839397205857212, 1e-15);
    EXPECT_EQ(intensity_on_configuration(p, config(p.window, {{1.0, 1.5}}), 2.0), 1.0);
}

TEST(Intensity, AtomAtEvaluationTimeDoesNotCount) {
    const HawkesParams p = exp_params();
    EXPECT_EQ(intensity_on_configuration(p, config(p.window, {{1.0, 0.5}}), 1.0), 1.0);
}

TEST(SolvePath, Examples) {
    const HawkesParams p = exp_params();
    EXPECT_EQ(solve_path(p, Configuration(p.window)).count(), 0u);

    const HawkesPath path = solve_path(p, config(p.window, {{1.0, 0.5}, {2.0, 1.1}}));
    EXPECT_EQ(path.count(), 2u);
    ASSERT_EQ(path.intensity_at_atoms.size(), 2u);
    EXPECT_EQ(path.intensity_at_atoms[0], 1.0);
    EXPECT_NEAR(path.intensity_at_atoms[1], 1.1839397205857212, 1e-15);
    EXPECT_FALSE(path.overflow);

    EXPECT_EQ(solve_path(p, config(p.window, {{1.0, 1.5}})).count(), 0u);
}

TEST(SolvePath, BoundaryAccepts) {
    const HawkesParams p = exp_params();
    EXPECT_EQ(solve_path(p, config(p.window, {{1.0, 1.0}})).count(), 1u);
}

TEST(SolvePath, OverflowFlag) {
    // Intensity at t = 1.01 is 1 + 0.5 e^{-0.01} > M = 1.2 after one acceptance.
    const HawkesParams p = HawkesParams::make(1.0, Kernel::exponential(0.5, 1.0), Window{2.0, 1.2});
    EXPECT_TRUE(solve_path(p, config(p.window, {{1.0, 0.5}, {1.01, 1.19}})).overflow);
    EXPECT_FALSE(solve_path(p, config(p.window, {{1.0, 1.1}, {1.01, 1.19}})).overflow);
}

TEST(SolvePath, Properties) {
    const HawkesParams p = exp_params(4.0, 3.0);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> t_dist(0.0, p.window.T);
    std::uniform_real_distribution<double> th_dist(0.0, p.window.M);
    for (std::uint64_t i = 0; i < 300; ++i) {
        const Configuration src = sample_poisson(p.window, RngKey{31, i});
        const HawkesPath path = solve_path(p, src);
        const auto atoms = src.atoms();

        EXPECT_EQ(count_events(p, atoms), path.count());

        std::vector<Point> before;
        std::size_t e = 0;
        for (std::size_t j = 0; j < atoms.size(); ++j) {
            // Accepted iff theta <= intensity; the intensity is recomputed
            // bit-for-bit from the accepted atoms before it.
            EXPECT_EQ(path.accepted[j] == 1, atoms[j].theta <= path.intensity_at_atoms[j]);
            EXPECT_EQ(intensity_on_configuration(p, Configuration::from_points(p.window, before), atoms[j].t),
                      path.intensity_at_atoms[j]);
            // Only atoms strictly before s_j matter.
            std::vector<Point> prefix(atoms.begin(), atoms.begin() + static_cast<std::ptrdiff_t>(j));
            EXPECT_EQ(intensity_on_configuration(p, src, atoms[j].t),
                      intensity_on_configuration(p, Configuration::from_points(p.window, prefix), atoms[j].t));
            if (path.accepted[j]) {
                before.push_back(atoms[j]);
                ASSERT_LT(e, path.events.size());
                EXPECT_EQ(path.events[e], atoms[j]);
                ++e;
                // Unit jumps: H steps by exactly one at each event.
                EXPECT_EQ(path.count_until(atoms[j].t), e);
            }
        }
        EXPECT_EQ(e, path.count());

        // Adding an atom never lowers H_T.
        Point extra{t_dist(rng), th_dist(rng)};
        const std::vector<Point> one{extra};
        bool clash = false;
        for (const Point& a : atoms) clash = clash || a.t == extra.t;
        if (!clash) {
            EXPECT_GE(solve_path(p, add_points(src, one)).count(), path.count());
        }
    }
}

TEST(Simulate, PoissonReduction) {
    const HawkesParams p = HawkesParams::make(1.0, Kernel::zero(), Window{5.0, 4.0});
    for (SimulationMode mode : {SimulationMode::Imbedding, SimulationMode::ExactThinning}) {
        const MCEstimate est = summarize(event_counts(p, 10000, 41, mode), 41);
        EXPECT_TRUE(within(est, 5.0, 3.0)) << est.mean << " +- " << est.se_or_zero();
    }
}

TEST(Simulate, ExponentialMean) {
    // 10 - 2 (1 - e^{-2.5}), from Psi(t) = 0.5 e^{-t/2}.
    const HawkesParams p = exp_params(5.0, 4.0);
    const MCEstimate est = summarize(event_counts(p, 10000, 43, SimulationMode::ExactThinning), 43);
    EXPECT_TRUE(within(est, 8.164169997247798, 3.0)) << est.mean << " +- " << est.se_or_zero();
}

TEST(Simulate, ExactThinningNeverOverflows) {
    const HawkesParams p = exp_params(5.0, 1.0);
    for (std::uint64_t i = 0; i < 500; ++i) {
        const HawkesPath path = simulate(p, RngKey{47, i}, SimulationMode::ExactThinning);
        EXPECT_FALSE(path.overflow);
        EXPECT_GE(path.source.window().M, p.window.M);
        EXPECT_EQ(path.params.window, path.source.window());
    }
}

TEST(Simulate, Deterministic) {
    const HawkesParams p = exp_params(5.0, 4.0);
    for (SimulationMode mode : {SimulationMode::Imbedding, SimulationMode::ExactThinning}) {
        const HawkesPath a = simulate(p, RngKey{3, 7}, mode);
        const HawkesPath b = simulate(p, RngKey{3, 7}, mode);
        EXPECT_EQ(a.events, b.events);
        EXPECT_EQ(a.source, b.source);
    }
}

TEST(Simulate, ExactThinningNeedsMonotoneKernel) {
    const HawkesParams p = HawkesParams::make(1.0, Kernel::table(0.5, {0.1, 0.3, 0.0}), Window{2.0, 2.0});
    EXPECT_THROW(simulate(p, RngKey{1, 1}, SimulationMode::ExactThinning), InvariantError);
    EXPECT_NO_THROW(simulate(p, RngKey{1, 1}, SimulationMode::Imbedding));
}
