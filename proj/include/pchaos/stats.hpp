// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pchaos {

/// Monte Carlo mean with its standard error. `se` is empty for n < 2.
struct MCEstimate {
    std::size_t n{0};
    double mean{0.0};
    std::optional<double> se;
    std::uint64_t seed{0};

    double se_or_zero() const noexcept { return se.value_or(0.0); }
};

/// Pairwise (tree) summation; result is independent of thread scheduling.
double pairwise_sum(std::span<const double> values);

/// Mean and sample-sd / sqrt(n) of per-path samples.
MCEstimate summarize(std::span<const double> samples, std::uint64_t seed);

/// sqrt(se_a^2 + se_b^2).
double combined_se(const MCEstimate& a, const MCEstimate& b);

/// |estimate - target| <= k * se + slack.
bool within(const MCEstimate& estimate, double target, double k, double slack = 0.0);

/// Runs fn(i) for i in [0, n) on the OpenMP pool and stores results by index.
template <class Fn>
auto parallel_map(std::size_t n, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
    std::vector<decltype(fn(std::size_t{}))> out(n);
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 64)
    for (long long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    return out;
}

}  // namespace pchaos
