// Apache License, Version 2.0, refer to LICENSE.txt
#include "pchaos/stats.hpp"

#include <cmath>

namespace pchaos {

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double acc = 0.0;
        for (double v : values) acc += v;
        return acc;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

MCEstimate summarize(std::span<const double> samples, std::uint64_t seed) {
    MCEstimate est;
    est.n = samples.size();
    est.seed = seed;
    if (samples.empty()) return est;
    est.mean = pairwise_sum(samples) / static_cast<double>(samples.size());
    if (samples.size() < 2) return est;
    std::vector<double> sq(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double d = samples[i] - est.mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / static_cast<double>(samples.size() - 1);
    est.se = std::sqrt(var / static_cast<double>(samples.size()));
    return est;
}

double combined_se(const MCEstimate& a, const MCEstimate& b) {
    return std::hypot(a.se_or_zero(), b.se_or_zero());
}

bool within(const MCEstimate& estimate, double target, double k, double slack) {
    return std::abs(estimate.mean - target) <= k * estimate.se_or_zero() + slack;
}

}  // namespace pchaos
