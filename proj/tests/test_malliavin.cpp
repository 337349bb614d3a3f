// Apache License, Version 2.0, refer to LICENSE.txt
#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <random>

#include "pchaos/errors.hpp"
#include "pchaos/malliavin.hpp"

using namespace pchaos;

namespace {

HawkesParams h3() { return HawkesParams::make(1.0, Kernel::exponential(0.5, 1.0), Window{3.0, 2.0}); }

std::vector<Point> random_points(std::size_t n, Window w, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> t(0.0, w.T), th(0.0, w.M);
    std::vector<Point> out;
    while (out.size() < n) {
        const Point p{t(rng), th(rng)};
        if (std::none_of(out.begin(), out.end(), [&](const Point& q) { return q.t == p.t; })) out.push_back(p);
    }
    return out;
}

}  // namespace

TEST(Derivative, Examples) {
    const HawkesParams p = h3();
    const Functional H = counting_functional(p);
    const Configuration empty(p.window);
    const std::vector<Point> one{{1.0, 0.5}};
    const std::vector<Point> two{{1.0, 0.5}, {2.0, 1.1}};
    EXPECT_EQ(derivative_n(H, empty, one), 1.0);
    EXPECT_EQ(derivative_n(H, empty, two), 1.0);

    const Functional c = constant_functional(p.window, 3.25);
    std::mt19937_64 rng(1);
    for (std::size_t n = 1; n <= 5; ++n) {
        const auto pts = random_points(n, p.window, rng);
        EXPECT_EQ(derivative_n(c, sample_poisson(p.window, RngKey{2, n}), pts), 0.0);
    }
}

TEST(Derivative, Errors) {
    const HawkesParams p = h3();
    const Functional H = counting_functional(p);
    const Configuration base = Configuration::from_points(p.window, {{1.0, 0.5}});
    EXPECT_THROW(derivative_n(H, base, std::vector<Point>{}), DomainError);
    EXPECT_THROW(derivative_n(H, base, std::vector<Point>{{1.0, 0.7}}), DegenerateInputError);
    EXPECT_THROW(derivative_n(H, base, std::vector<Point>{{2.0, 0.7}, {2.0, 0.1}}), DegenerateInputError);
    // Past the horizon H_T cannot see the point.
    EXPECT_EQ(derivative_n(H, base, std::vector<Point>{{3.5, 0.1}}), 0.0);
    EXPECT_EQ(derivative_n(H, base, std::vector<Point>{{2.0, 0.1}, {3.5, 0.1}}), 0.0);
}

TEST(Derivative, SymmetricUnderPermutation) {
    const HawkesParams p = h3();
    const Functional H = counting_functional(p);
    std::mt19937_64 rng(5);
    for (std::uint64_t i = 0; i < 200; ++i) {
        const Configuration base = sample_poisson(p.window, RngKey{6, i});
        auto pts = random_points(1 + i % 4, p.window, rng);
        const double d = derivative_n(H, base, pts);
        std::shuffle(pts.begin(), pts.end(), rng);
        EXPECT_EQ(derivative_n(H, base, pts), d);
    }
}

TEST(Derivative, IteratesFirstOrder) {
    const HawkesParams p = h3();
    const Functional H = counting_functional(p);
    std::mt19937_64 rng(7);
    for (std::uint64_t i = 0; i < 200; ++i) {
        const Configuration base = sample_poisson(p.window, RngKey{8, i});
        const auto pts = random_points(2 + i % 3, p.window, rng);
        const std::span<const Point> head(pts.data(), pts.size() - 1);
        const std::span<const Point> last(&pts.back(), 1);
        // D^n F = D_{x_n} (D^{n-1} F).
        const Functional inner{[&](const Configuration& omega) { return derivative_n(H, omega, head); }, p.window,
                               "D^{n-1}H"};
        EXPECT_EQ(derivative_n(H, base, pts), derivative_n(inner, base, last));
    }
}

TEST(Derivative, EmptyBaseIsSubsetSum) {
    const HawkesParams p = h3();
    const Functional H = counting_functional(p);
    std::mt19937_64 rng(9);
    for (std::size_t trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 5;
        const auto pts = random_points(n, p.window, rng);
        double expect = 0.0;
        for (std::uint64_t mask = 0; mask < (1u << n); ++mask) {
            std::vector<Point> sub;
            for (std::size_t j = 0; j < n; ++j) {
                if (mask >> j & 1U) sub.push_back(pts[j]);
            }
            const double f = H(Configuration::from_points(p.window, sub));
            expect += (n - static_cast<std::size_t>(std::popcount(mask))) % 2 ? -f : f;
        }
        EXPECT_EQ(derivative_n(H, Configuration(p.window), pts), expect);
    }
}

TEST(Derivative, PoissonSecondOrderVanishes) {
    const HawkesParams p = HawkesParams::make(1.0, Kernel::zero(), Window{5.0, 4.0});
    const Functional H = counting_functional(p);
    std::mt19937_64 rng(10);
    for (std::uint64_t i = 0; i < 100; ++i) {
        EXPECT_EQ(derivative_n(H, sample_poisson(p.window, RngKey{11, i}), random_points(2, p.window, rng)), 0.0);
    }
}

TEST(Vanishing, Examples) {
    const HawkesParams p = h3();
    EXPECT_EQ(vanishing_expectation(counting_functional(p), p.window), 0.0);
    EXPECT_EQ(vanishing_expectation(constant_functional(p.window, 7.0), p.window), 7.0);
    EXPECT_EQ(vanishing_expectation(rectangle_count(p.window), p.window), 0.0);
}

TEST(Vanishing, WeightHasUnitMean) {
    const Window w{1.0, 1.0};
    const VanishingWeight weight{w};
    const Functional N = rectangle_count(w);
    std::vector<double> ws(20000);
    for (std::size_t i = 0; i < ws.size(); ++i) {
        const Configuration omega = sample_poisson(w, RngKey{12, i});
        ws[i] = weight(omega);
        EXPECT_EQ(ws[i] * N(omega), 0.0);
    }
    const MCEstimate est = summarize(ws, 12);
    EXPECT_TRUE(within(est, 1.0, 3.0)) << est.mean << " +- " << est.se_or_zero();
}

TEST(Ipp, PoissonCount) {
    const HawkesParams p = HawkesParams::make(1.0, Kernel::zero(), Window{2.0, 2.0});
    const IppCheck c = ipp_check_order1(counting_functional(p), p.window, 20000, 13);
    EXPECT_TRUE(within(c.lhs, 2.0, 3.0)) << c.lhs.mean;
    EXPECT_TRUE(within(c.rhs, 2.0, 3.0)) << c.rhs.mean;
}

TEST(Ipp, Constant) {
    const Window w{2.0, 2.0};
    const IppCheck c = ipp_check_order1(constant_functional(w, 5.0), w, 20000, 14);
    EXPECT_EQ(c.lhs.mean, 0.0);
    EXPECT_TRUE(within(c.rhs, 0.0, 3.0)) << c.rhs.mean;
}

TEST(Ipp, RectangleCount) {
    const Window w{2.0, 2.0};
    const IppCheck c = ipp_check_order1(rectangle_count(w), w, 20000, 15);
    EXPECT_EQ(c.lhs.mean, 4.0);
    EXPECT_TRUE(within(c.rhs, 4.0, 3.0)) << c.rhs.mean;
}

TEST(Ipp, HawkesSidesAgree) {
    const HawkesParams p = HawkesParams::make(1.0, Kernel::exponential(0.5, 1.0), Window{2.0, 4.0});
    const IppCheck c = ipp_check_order1(counting_functional(p), p.window, 20000, 16);
    EXPECT_LE(std::abs(c.lhs.mean - c.rhs.mean), 3.0 * combined_se(c.lhs, c.rhs));
}
