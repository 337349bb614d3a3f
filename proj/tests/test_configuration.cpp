// Apache License, Version 2.0, refer to LICENSE.txt
#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "pchaos/configuration.hpp"
#include "pchaos/errors.hpp"
#include "pchaos/stats.hpp"

using namespace pchaos;

namespace {
const Window kWin{3.0, 2.0};
}

TEST(Window, Make) {
    EXPECT_NO_THROW(Window::make(1.0, 1.0));
    EXPECT_THROW(Window::make(0.0, 1.0), InvariantError);
    EXPECT_THROW(Window::make(1.0, -1.0), InvariantError);
    EXPECT_DOUBLE_EQ(kWin.area(), 6.0);
}

TEST(FromPoints, SortsAndValidates) {
    const Configuration c = Configuration::from_points(kWin, {{2.0, 1.1}, {1.0, 0.5}});
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0], (Point{1.0, 0.5}));
    EXPECT_EQ(c[1], (Point{2.0, 1.1}));
    EXPECT_THROW(Configuration::from_points(kWin, {{4.0, 0.5}}), DomainError);
    EXPECT_THROW(Configuration::from_points(kWin, {{1.0, 2.5}}), DomainError);
    EXPECT_THROW(Configuration::from_points(kWin, {{1.0, 0.5}, {1.0, 0.7}}), DegenerateInputError);
}

TEST(SamplePoisson, ShortWindowIsEmpty) {
    for (std::uint64_t i = 0; i < 50; ++i) {
        EXPECT_TRUE(sample_poisson(Window{1e-12, 1.0}, RngKey{11, i}).empty());
    }
}

TEST(SamplePoisson, DeterministicInKey) {
    EXPECT_EQ(sample_poisson(kWin, RngKey{5, 9}), sample_poisson(kWin, RngKey{5, 9}));
    EXPECT_NE(sample_poisson(kWin, RngKey{5, 9}), sample_poisson(kWin, RngKey{5, 10}));
}

TEST(SamplePoisson, MeanCountIsArea) {
    const Window w{5.0, 1.0};
    std::vector<double> counts(10000);
    for (std::size_t i = 0; i < counts.size(); ++i) {
        counts[i] = static_cast<double>(sample_poisson(w, RngKey{21, i}).size());
    }
    const MCEstimate est = summarize(counts, 21);
    EXPECT_TRUE(within(est, 5.0, 3.0)) << est.mean << " +- " << est.se_or_zero();
}

TEST(SamplePoisson, AtomsInsideSortedDistinct) {
    for (std::uint64_t i = 0; i < 500; ++i) {
        const Configuration c = sample_poisson(kWin, RngKey{3, i});
        std::set<double> times;
        for (std::size_t j = 0; j < c.size(); ++j) {
            EXPECT_TRUE(kWin.contains(c[j]));
            if (j > 0) {
                EXPECT_LT(c[j - 1].t, c[j].t);
            }
            times.insert(c[j].t);
        }
        EXPECT_EQ(times.size(), c.size());
    }
}

TEST(AddPoints, Examples) {
    const Configuration empty(kWin);
    const std::vector<Point> a{{1.0, 0.5}};
    const Configuration one = add_points(empty, a);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], (Point{1.0, 0.5}));

    EXPECT_EQ(add_points(one, a), one);

    const Configuration b = Configuration::from_points(kWin, {{2.0, 1.1}});
    const Configuration merged = add_points(b, a);
    ASSERT_EQ(merged.size(), 2u);
    EXPECT_EQ(merged[0], (Point{1.0, 0.5}));
    EXPECT_EQ(merged[1], (Point{2.0, 1.1}));
}

TEST(AddPoints, RejectsCollisionsAndOutside) {
    const Configuration one = Configuration::from_points(kWin, {{1.0, 0.5}});
    const std::vector<Point> clash{{1.0, 0.6}};
    EXPECT_THROW(add_points(one, clash), DegenerateInputError);
    const std::vector<Point> outside{{3.5, 0.6}};
    EXPECT_THROW(add_points(one, outside), DomainError);
}

TEST(AddPoints, ComposesForDisjointSets) {
    for (std::uint64_t i = 0; i < 200; ++i) {
        const Configuration base = sample_poisson(kWin, RngKey{8, i});
        const Configuration a = sample_poisson(kWin, RngKey{9, i});
        const Configuration b = sample_poisson(kWin, RngKey{10, i});
        std::vector<Point> both(a.atoms().begin(), a.atoms().end());
        both.insert(both.end(), b.atoms().begin(), b.atoms().end());
        EXPECT_EQ(add_points(add_points(base, a.atoms()), b.atoms()), add_points(base, both));
    }
}

TEST(Subsets, Counts) {
    const auto count = [](const Configuration& c, std::size_t max_size) {
        SubsetStream s = subsets(c, max_size);
        std::size_t n = 0;
        while (s.next()) ++n;
        return n;
    };
    const Configuration two = Configuration::from_points(kWin, {{1.0, 0.5}, {2.0, 1.1}});
    EXPECT_EQ(count(two, 2), 3u);
    EXPECT_EQ(count(two, 1), 2u);
    EXPECT_EQ(count(Configuration(kWin), 3), 0u);

    std::vector<Point> ten;
    for (int i = 0; i < 10; ++i) ten.push_back({0.25 * (i + 1), 0.1 * i});
    EXPECT_EQ(count(Configuration::from_points(kWin, ten), 10), 1023u);
    EXPECT_EQ(count(Configuration::from_points(kWin, ten), 2), 10u + 45u);
}

TEST(Subsets, MaskMatchesSelect) {
    const Configuration c = Configuration::from_points(kWin, {{0.5, 0.1}, {1.0, 0.5}, {2.0, 1.1}});
    SubsetStream s = subsets(c, 3);
    while (auto sub = s.next()) EXPECT_EQ(*sub, select(c, s.current_mask()));
}

TEST(Subsets, BudgetEnforced) {
    std::vector<Point> many;
    for (int i = 0; i < 23; ++i) many.push_back({0.1 * (i + 1), 0.5});
    const Configuration c = Configuration::from_points(kWin, many);
    try {
        subsets(c, 2);
        FAIL() << "budget not enforced";
    } catch (const AtomBudgetExceeded& e) {
        EXPECT_EQ(e.atoms(), 23u);
        EXPECT_EQ(e.budget(), kDefaultAtomBudget);
    }
}

TEST(ConfigurationCsv, RoundTrip) {
    const Configuration c = sample_poisson(kWin, RngKey{4, 4});
    std::stringstream buf;
    write_configuration_csv(buf, c);
    EXPECT_EQ(read_configuration_csv(buf, "mem", kWin), c);

    std::stringstream dup("t,theta\n1.0,0.5\n1.0,0.7\n");
    EXPECT_THROW(read_configuration_csv(dup, "mem", kWin), DegenerateInputError);
}
