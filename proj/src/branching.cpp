// Apache License, Version 2.0, refer to LICENSE.txt
#include "pchaos/branching.hpp"

#include <algorithm>
#include <cmath>

#include "pchaos/csv_io.hpp"
#include "pchaos/errors.hpp"

namespace pchaos {

namespace {

void check_window(const HawkesParams& params, const Configuration& source) {
    const double needed = std::max(params.mu, params.kernel.sup_norm());
    if (params.window.M < needed) {
        throw InvariantError("branching: mark ceiling M=" + format_double(params.window.M) +
                             " is below max(mu, sup Phi)=" + format_double(needed));
    }
    for (const Point& p : source.atoms()) {
        if (!params.window.contains(p)) {
            throw DomainError("branching: atom (" + format_double(p.t) + ", " + format_double(p.theta) +
                              ") lies outside the params window");
        }
    }
}

}  // namespace

std::vector<std::uint64_t> chain_counts(const HawkesParams& params, const Configuration& source) {
    check_window(params, source);
    const auto atoms = source.atoms();
    std::vector<std::uint64_t> counts(atoms.size(), 0);
    for (std::size_t x = 0; x < atoms.size(); ++x) {
        std::uint64_t c = atoms[x].theta <= params.mu ? 1 : 0;
        for (std::size_t y = 0; y < x; ++y) {
            if (counts[y] != 0 && atoms[x].theta <= params.kernel(atoms[x].t - atoms[y].t)) c += counts[y];
        }
        counts[x] = c;
    }
    return counts;
}

std::vector<std::vector<std::uint64_t>> chain_counts_by_length(const HawkesParams& params,
                                                               const Configuration& source,
                                                               std::size_t max_length) {
    check_window(params, source);
    const auto atoms = source.atoms();
    const std::size_t n = atoms.size();
    std::vector<std::vector<std::uint64_t>> counts(max_length, std::vector<std::uint64_t>(n, 0));
    if (max_length == 0) return counts;
    // Link matrix is shared by every length.
    std::vector<std::uint8_t> link(n * n, 0);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < x; ++y) link[x * n + y] = atoms[x].theta <= params.kernel(atoms[x].t - atoms[y].t);
        counts[0][x] = atoms[x].theta <= params.mu ? 1 : 0;
    }
    for (std::size_t len = 1; len < max_length; ++len) {
        for (std::size_t x = 0; x < n; ++x) {
            std::uint64_t c = 0;
            for (std::size_t y = 0; y < x; ++y) {
                if (link[x * n + y]) c += counts[len - 1][y];
            }
            counts[len][x] = c;
        }
    }
    return counts;
}

BranchingPath::BranchingPath(HawkesParams params, Configuration source)
    : params_(std::move(params)), source_(std::move(source)) {
    counts_ = pchaos::chain_counts(params_, source_);
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (counts_[i] == 0) continue;
        jump_times_.push_back(source_[i].t);
        jump_sizes_.push_back(counts_[i]);
    }
}

std::uint64_t BranchingPath::value_at(double t) const noexcept {
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < jump_times_.size() && jump_times_[i] <= t; ++i) x += jump_sizes_[i];
    return x;
}

double BranchingPath::ell(double t) const {
    double value = params_.mu;
    for (std::size_t i = 0; i < jump_times_.size() && jump_times_[i] < t; ++i) {
        value += params_.kernel(t - jump_times_[i]) * static_cast<double>(jump_sizes_[i]);
    }
    return value;
}

double BranchingPath::ell_integral(double t) const {
    double value = params_.mu * t;
    for (std::size_t i = 0; i < jump_times_.size() && jump_times_[i] < t; ++i) {
        value += static_cast<double>(jump_sizes_[i]) * params_.kernel.partial_integral(t - jump_times_[i]);
    }
    return value;
}

BranchingPath branching_path(const HawkesParams& params, const Configuration& source) {
    return BranchingPath(params, source);
}

MCEstimate martingale_residual(const HawkesParams& params, std::size_t n_paths, std::uint64_t seed) {
    const double T = params.window.T;
    const auto samples = parallel_map(n_paths, [&](std::size_t i) {
        const BranchingPath path(params, sample_poisson(params.window, RngKey{seed, i}));
        return static_cast<double>(path.value_at(T)) - path.ell_integral(T);
    });
    return summarize(samples, seed);
}

MCEstimate branching_mean(const HawkesParams& params, std::size_t n_paths, std::uint64_t seed) {
    const double T = params.window.T;
    const auto samples = parallel_map(n_paths, [&](std::size_t i) {
        const BranchingPath path(params, sample_poisson(params.window, RngKey{seed, i}));
        return static_cast<double>(path.value_at(T));
    });
    return summarize(samples, seed);
}

MCEstimate conditional_martingale_residual(const HawkesParams& params, std::uint64_t prefix_seed,
                                           std::size_t n_paths, std::uint64_t seed) {
    const double T = params.window.T;
    const double s = 0.5 * T;
    const Window half{s, params.window.M};
    const Configuration prefix = sample_poisson(half, RngKey{prefix_seed, 0});
    const auto samples = parallel_map(n_paths, [&](std::size_t i) {
        Engine engine = make_engine({seed, i});
        while (true) {
            const Configuration suffix = sample_poisson(half, engine);
            std::vector<Point> points(prefix.atoms().begin(), prefix.atoms().end());
            bool clash = false;
            for (const Point& p : suffix.atoms()) {
                const Point shifted{p.t + s, p.theta};
                // (T/2, T]: the left end belongs to the prefix.
                if (shifted.t <= s || shifted.t > T) {
                    clash = true;
                    break;
                }
                points.push_back(shifted);
            }
            if (clash) continue;
            const BranchingPath path(params, Configuration::from_points(params.window, std::move(points)));
            const double dx = static_cast<double>(path.value_at(T)) - static_cast<double>(path.value_at(s));
            return dx - (path.ell_integral(T) - path.ell_integral(s));
        }
    });
    return summarize(samples, seed);
}

double JumpHistogram::fraction_at_least(std::uint64_t size) const noexcept {
    if (jumps == 0) return 0.0;
    std::uint64_t hits = 0;
    for (auto it = counts.lower_bound(size); it != counts.end(); ++it) hits += it->second;
    return static_cast<double>(hits) / static_cast<double>(jumps);
}

double JumpHistogram::ignored_fraction() const noexcept {
    return atoms == 0 ? 0.0 : static_cast<double>(ignored_atoms) / static_cast<double>(atoms);
}

JumpHistogram jump_size_histogram(const HawkesParams& params, const Configuration& source) {
    JumpHistogram hist;
    const auto counts = chain_counts(params, source);
    const double reach = std::max(params.mu, params.kernel.sup_norm());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        ++hist.atoms;
        if (source[i].theta > reach) ++hist.ignored_atoms;
        if (counts[i] == 0) continue;
        ++hist.counts[counts[i]];
        ++hist.jumps;
    }
    return hist;
}

JumpHistogram jump_size_histogram(const HawkesParams& params, std::size_t n_paths, std::uint64_t seed) {
    const auto per_path = parallel_map(n_paths, [&](std::size_t i) {
        return jump_size_histogram(params, sample_poisson(params.window, RngKey{seed, i}));
    });
    JumpHistogram total;
    for (const JumpHistogram& h : per_path) {
        for (const auto& [size, count] : h.counts) total.counts[size] += count;
        total.jumps += h.jumps;
        total.atoms += h.atoms;
        total.ignored_atoms += h.ignored_atoms;
    }
    return total;
}

MCEstimate chain_length_tail(const HawkesParams& params, std::size_t p, std::size_t n_paths, std::uint64_t seed) {
    const auto samples = parallel_map(n_paths, [&](std::size_t i) {
        const Configuration source = sample_poisson(params.window, RngKey{seed, i});
        const auto all = chain_counts(params, source);
        const auto by_length = chain_counts_by_length(params, source, p);
        std::uint64_t total = 0;
        std::uint64_t short_chains = 0;
        for (std::size_t x = 0; x < all.size(); ++x) {
            total += all[x];
            for (const auto& level : by_length) short_chains += level[x];
        }
        return static_cast<double>(total - short_chains);
    });
    return summarize(samples, seed);
}

double chain_length_tail_bound(const HawkesParams& params, std::size_t p) {
    const double norm = params.kernel.l1_norm();
    return params.mu * params.window.T * std::pow(norm, static_cast<double>(p)) / (1.0 - norm);
}

}  // namespace pchaos
