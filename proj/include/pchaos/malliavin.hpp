// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>

#include "pchaos/configuration.hpp"
#include "pchaos/hawkes.hpp"
#include "pchaos/rng.hpp"
#include "pchaos/stats.hpp"

namespace pchaos {

/// A real functional of the configuration, measurable with respect to the
/// atoms inside `window`. Evaluation must be pure.
struct Functional {
    std::function<double(const Configuration&)> eval;
    Window window;
    std::string name;

    double operator()(const Configuration& omega) const { return eval(omega); }
};

/// H_T under the imbedding on the params window.
Functional counting_functional(const HawkesParams& params);
/// N([0,T] x [0,M]).
Functional rectangle_count(Window window);
Functional constant_functional(Window window, double value);

/// D^n F(base; points) = sum_{J subset points} (-1)^{n-|J|} F(base + delta_J).
///
/// Points outside F's window contribute nothing to F, so the alternating sum
/// vanishes and 0 is returned. Points sharing a time with each other or with a
/// base atom are rejected (DegenerateInputError).
double derivative_n(const Functional& F, const Configuration& base, std::span<const Point> points,
                    std::size_t budget = kDefaultAtomBudget);

/// Expectation under the vanishing measure: the rectangle carries no atom, so
/// the expectation is F at the empty configuration.
double vanishing_expectation(const Functional& F, Window window);

/// Weight e^{MT} 1{N(rect) = 0} of the vanishing measure against P.
struct VanishingWeight {
    Window window;
    double operator()(const Configuration& omega) const;
};

struct IppCheck {
    MCEstimate lhs;  // T M E[D_X F], X uniform on the rectangle
    MCEstimate rhs;  // E[F (N(rect) - T M)]
};

/// First-order integration by parts with g = 1 on the rectangle, both sides
/// estimated on the same sampled configurations.
IppCheck ipp_check_order1(const Functional& F, Window window, std::size_t n_paths, std::uint64_t seed);

}  // namespace pchaos
