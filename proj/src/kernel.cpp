// Apache License, Version 2.0, refer to LICENSE.txt
#include "pchaos/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "pchaos/csv_io.hpp"
#include "pchaos/errors.hpp"
#include "pchaos/simd/kernels.hpp"

namespace pchaos {

namespace {

void require_nonnegative_time(double t, const char* what) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError(std::string(what) + ": time must be finite and >= 0, got " +
                          std::to_string(t));
    }
}

// Linear interpolation of uniform samples; zero past the last node.
double interpolate(std::span<const double> samples, double step, double t) {
    if (samples.empty()) return 0.0;
    const double x = t / step;
    const auto last = static_cast<double>(samples.size() - 1);
    if (x > last) return 0.0;
    const auto i = static_cast<std::size_t>(x);
    if (i + 1 >= samples.size()) return samples.back();
    const double frac = x - static_cast<double>(i);
    return samples[i] + frac * (samples[i + 1] - samples[i]);
}

}  // namespace

Kernel Kernel::exponential(double alpha, double beta) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw DomainError("exponential kernel: alpha must be finite and >= 0");
    }
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw DomainError("exponential kernel: beta must be finite and > 0");
    }
    Kernel k;
    k.family_ = Family::Exponential;
    k.alpha_ = alpha;
    k.beta_ = beta;
    k.l1_norm_ = alpha / beta;
    k.sup_norm_ = alpha;
    k.nonincreasing_ = true;
    return k;
}

Kernel Kernel::zero() { return exponential(0.0, 1.0); }

Kernel Kernel::table(double step, std::vector<double> values) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw DomainError("table kernel: grid step must be finite and > 0");
    }
    if (values.empty()) throw DomainError("table kernel: no values");
    for (double v : values) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw DomainError("table kernel: values must be finite and >= 0");
        }
    }
    Kernel k;
    k.family_ = Family::Table;
    k.step_ = step;
    k.values_ = std::move(values);
    k.l1_norm_ = trapezoid(k.values_, step);
    k.sup_norm_ = *std::max_element(k.values_.begin(), k.values_.end());
    k.nonincreasing_ = std::is_sorted(k.values_.rbegin(), k.values_.rend());
    return k;
}

Kernel Kernel::load_table_csv(const std::filesystem::path& path) {
    const CsvTable csv = read_csv(path);
    const std::size_t t_col = csv.column("t");
    const std::size_t v_col = csv.column("value");
    if (csv.rows.size() < 2) throw DomainError(path.string() + ": need at least two rows");
    std::vector<double> values;
    values.reserve(csv.rows.size());
    double step = 0.0;
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        const double t = parse_double(csv.rows[i].at(t_col), path.string(), i + 2);
        values.push_back(parse_double(csv.rows[i].at(v_col), path.string(), i + 2));
        if (i == 0) {
            if (t != 0.0) throw DomainError(path.string() + ": t must start at 0");
            continue;
        }
        if (i == 1) step = t;
        const double expected = step * static_cast<double>(i);
        if (!(step > 0.0) || std::abs(t - expected) > 1e-9 * std::max(1.0, expected)) {
            throw DomainError(path.string() + ": t must be strictly increasing and equally spaced (row " +
                              std::to_string(i + 2) + ")");
        }
    }
    return table(step, std::move(values));
}

double Kernel::support() const noexcept {
    if (family_ == Family::Exponential) return std::numeric_limits<double>::infinity();
    return step_ * static_cast<double>(values_.size() - 1);
}

double Kernel::operator()(double t) const {
    require_nonnegative_time(t, "kernel eval");
    if (family_ == Family::Exponential) return alpha_ * std::exp(-beta_ * t);
    return interpolate(values_, step_, t);
}

double Kernel::partial_integral(double s) const {
    if (std::isinf(s) && s > 0.0) return l1_norm_;
    require_nonnegative_time(s, "partial_integral");
    if (family_ == Family::Exponential) return alpha_ / beta_ * -std::expm1(-beta_ * s);
    const double x = s / step_;
    const auto last = values_.size() - 1;
    if (x >= static_cast<double>(last)) return l1_norm_;
    const auto full = static_cast<std::size_t>(x);
    double acc = full > 0 ? trapezoid(std::span(values_).first(full + 1), step_) : 0.0;
    const double rem = s - static_cast<double>(full) * step_;
    if (rem > 0.0) acc += 0.5 * rem * (values_[full] + interpolate(values_, step_, s));
    return acc;
}

std::string Kernel::describe() const {
    std::ostringstream out;
    out.precision(17);
    if (family_ == Family::Exponential) {
        out << "exp(alpha=" << alpha_ << ",beta=" << beta_ << ")";
    } else {
        out << "table(step=" << step_ << ",nodes=" << values_.size() << ")";
    }
    return out.str();
}

double trapezoid(std::span<const double> samples, double step) {
    if (samples.size() < 2) return 0.0;
    double acc = 0.0;
    for (double v : samples) acc += v;
    acc -= 0.5 * (samples.front() + samples.back());
    return acc * step;
}

double nested_double_integral(std::span<const double> samples, double step, double s, double t) {
    if (!(t >= s)) throw DomainError("nested_double_integral: need s <= t");
    if (samples.empty() || t == s) return 0.0;
    const double length = t - s;
    const double covered = step * static_cast<double>(samples.size() - 1);
    if (length > covered * (1.0 + 1e-12)) {
        throw DomainError("nested_double_integral: interval longer than the sampled horizon");
    }
    // int_0^L (L - v) g(v) dv by trapezoid; the weight vanishes at v = L so
    // the trailing partial cell only contributes its left end.
    const auto full = std::min(static_cast<std::size_t>(length / step), samples.size() - 1);
    double acc = 0.0;
    for (std::size_t i = 0; i < full; ++i) {
        const double v0 = step * static_cast<double>(i);
        const double v1 = step * static_cast<double>(i + 1);
        acc += 0.5 * step * ((length - v0) * samples[i] + (length - v1) * samples[i + 1]);
    }
    const double rem = length - step * static_cast<double>(full);
    if (rem > 0.0) acc += 0.5 * rem * rem * samples[full];
    return acc;
}

ConvolutionLadder build_ladder(const Kernel& kernel, double step, double horizon, std::size_t n_max) {
    if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("build_ladder: step must be > 0");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("build_ladder: horizon must be > 0");
    if (n_max < 1) throw DomainError("build_ladder: n_max must be >= 1");
    const double norm = kernel.l1_norm();
    if (!(norm < 1.0)) {
        throw StabilityError("build_ladder: kernel L1 norm " + std::to_string(norm) + " is not < 1");
    }

    const auto cells = static_cast<std::size_t>(std::ceil(horizon / step - 1e-9));
    const std::size_t nodes = cells + 1;

    ConvolutionLadder ladder(kernel, step);
    std::vector<double> phi(nodes);
    for (std::size_t m = 0; m < nodes; ++m) phi[m] = kernel(step * static_cast<double>(m));
    // reversed[j] = phi[nodes - 1 - j], so phi[m - i] for i = 0..m is the
    // contiguous run reversed[nodes - 1 - m .. nodes - 1].
    std::vector<double> reversed(phi.rbegin(), phi.rend());

    ladder.levels_.reserve(n_max);
    ladder.levels_.push_back(phi);
    for (std::size_t n = 2; n <= n_max; ++n) {
        const std::vector<double>& prev = ladder.levels_.back();
        std::vector<double> next(nodes, 0.0);
        for (std::size_t m = 1; m < nodes; ++m) {
            const std::span<const double> a(reversed.data() + (nodes - 1 - m), m + 1);
            const std::span<const double> b(prev.data(), m + 1);
            const double full = simd::dot(a, b);
            const double ends = 0.5 * (phi[m] * prev[0] + phi[0] * prev[m]);
            next[m] = step * (full - ends);
        }
        ladder.levels_.push_back(std::move(next));
    }

    ladder.psi_.assign(nodes, 0.0);
    for (const auto& lvl : ladder.levels_) {
        for (std::size_t m = 0; m < nodes; ++m) ladder.psi_[m] += lvl[m];
    }
    ladder.tail_bound_ = norm == 0.0 ? 0.0
                                     : std::pow(norm, static_cast<double>(n_max + 1)) / (1.0 - norm);
    return ladder;
}

std::span<const double> ConvolutionLadder::level(std::size_t n) const {
    if (n < 1 || n > levels_.size()) {
        throw DomainError("ConvolutionLadder::level: n out of range [1, " +
                          std::to_string(levels_.size()) + "]");
    }
    return levels_[n - 1];
}

double ConvolutionLadder::level_at(std::size_t n, double t) const {
    require_nonnegative_time(t, "ConvolutionLadder::level_at");
    return interpolate(level(n), step_, t);
}

double ConvolutionLadder::psi_at(double t) const {
    require_nonnegative_time(t, "ConvolutionLadder::psi_at");
    return interpolate(psi_, step_, t);
}

double psi_l1(const ConvolutionLadder& ladder) { return trapezoid(ladder.psi(), ladder.step()); }

}  // namespace pchaos
