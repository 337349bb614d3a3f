// Apache License, Version 2.0, refer to LICENSE.txt
#include "pchaos/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <ostream>

#include "pchaos/branching.hpp"
#include "pchaos/harness.hpp"
#include "pchaos/kernel.hpp"
#include "pchaos/malliavin.hpp"
#include "pchaos/pseudo_chaos.hpp"

namespace pchaos {

namespace {

constexpr double kSigmas = 3.0;

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

std::size_t scaled(const AcceptanceOptions& o, std::size_t n) {
    return std::max<std::size_t>(100, static_cast<std::size_t>(std::llround(static_cast<double>(n) * o.scale)));
}

HawkesParams default_params(double T = 5.0, double M = 4.0) {
    return HawkesParams::make(1.0, Kernel::exponential(0.5, 1.0), Window{T, M});
}

HawkesParams poisson_params(double T, double M) { return HawkesParams::make(1.0, Kernel::zero(), Window{T, M}); }

double analytic_mean(const HawkesParams& params) {
    const ConvolutionLadder ladder = build_ladder(params.kernel, 0.01, params.window.T);
    return expected_count_analytic(params, ladder).value;
}

// Difference of two independent estimates within k combined standard errors.
bool agree(const MCEstimate& a, const MCEstimate& b, double slack = 0.0) {
    return std::abs(a.mean - b.mean) <= kSigmas * combined_se(a, b) + slack;
}

CriterionResult exact_reconstruction(const AcceptanceOptions& o) {
    const HawkesParams params = default_params(3.0, 2.0);
    const std::size_t n = scaled(o, 1000);
    const AuditResult audit = reconstruction_audit(params, n, o.seed + 1);
    const bool ok = audit.exact == audit.checked &&
                    static_cast<double>(audit.checked) >= 0.95 * static_cast<double>(n);
    return {1, "exact pathwise reconstruction", ok,
            fmt("paths=%zu checked=%zu exact=%zu skipped=%zu", n, audit.checked, audit.exact, audit.skipped_budget)};
}

CriterionResult oracle_equivalence(const AcceptanceOptions& o) {
    const HawkesParams params = default_params(3.0, 2.0);
    const Functional F = counting_functional(params);
    Engine engine = make_engine({o.seed + 2, 0});
    std::uniform_int_distribution<int> k_dist(1, 6);
    std::uniform_real_distribution<double> t_dist(0.0, params.window.T);
    std::uniform_real_distribution<double> theta_dist(0.0, params.window.M);
    const std::size_t queries = std::max<std::size_t>(500, scaled(o, 500));
    std::size_t equal = 0;
    std::size_t nonzero_high_order = 0;
    for (std::size_t q = 0; q < queries; ++q) {
        const int k = k_dist(engine);
        std::vector<Point> points;
        while (static_cast<int>(points.size()) < k) {
            const Point p{t_dist(engine), theta_dist(engine)};
            if (std::none_of(points.begin(), points.end(), [&](const Point& x) { return x.t == p.t; })) {
                points.push_back(p);
            }
        }
        const double closed = coeff_hawkes({params, points});
        const double oracle = coeff_oracle(F, params.window, points);
        if (closed == oracle) ++equal;
        if (k >= 2 && closed != 0.0) ++nonzero_high_order;
    }
    return {2, "coefficient oracle equivalence", equal == queries,
            fmt("queries=%zu equal=%zu nonzero(k>=2)=%zu", queries, equal, nonzero_high_order)};
}

CriterionResult hawkes_mean(const AcceptanceOptions& o) {
    const HawkesParams params = default_params();
    const ConvolutionLadder ladder = build_ladder(params.kernel, 0.01, params.window.T);
    const AnalyticExpectation analytic = expected_count_analytic(params, ladder);
    ExperimentSpec spec{params, scaled(o, 10000), o.seed + 3, Statistic::HawkesMean, SimulationMode::ExactThinning};
    const MCEstimate mc = run_experiment(spec).headline;
    const bool ok = within(mc, analytic.value, kSigmas, analytic.budget);
    return {3, "hawkes mean vs resolvent", ok,
            fmt("mc=%.5f se=%.5f analytic=%.5f budget=%.2e", mc.mean, mc.se_or_zero(), analytic.value,
                analytic.budget)};
}

CriterionResult poisson_reductions(const AcceptanceOptions& o) {
    const HawkesParams params = poisson_params(5.0, 4.0);
    ExperimentSpec spec{params, scaled(o, 10000), o.seed + 4, Statistic::HawkesMean, SimulationMode::Imbedding};
    const MCEstimate mc = run_experiment(spec).headline;
    const bool mean_ok = within(mc, params.mu * params.window.T, kSigmas);

    const Functional F = counting_functional(params);
    std::size_t zero = 0;
    const std::size_t pairs = 100;
    for (std::size_t i = 0; i < pairs; ++i) {
        Engine engine = make_engine({o.seed + 40, i});
        const Configuration base = sample_poisson(params.window, engine);
        std::uniform_real_distribution<double> t_dist(0.0, params.window.T);
        std::uniform_real_distribution<double> theta_dist(0.0, params.window.M);
        const std::vector<Point> pts{{t_dist(engine), theta_dist(engine)}, {t_dist(engine), theta_dist(engine)}};
        if (derivative_n(F, base, pts) == 0.0) ++zero;
    }
    return {4, "poisson reductions", mean_ok && zero == pairs,
            fmt("mean=%.4f se=%.4f target=%.1f D2_zero=%zu/%zu", mc.mean, mc.se_or_zero(),
                params.mu * params.window.T, zero, pairs)};
}

CriterionResult characterization(const AcceptanceOptions& o) {
    const std::size_t n = scaled(o, 40000);
    std::string detail;
    bool ok = true;

    auto check_exact_series = [&](const char* label, const Functional& F, Window w, std::uint64_t seed) {
        const auto r = characterization_check(F, w, 2, n, seed);
        const bool cum_ok = agree(r.cumulative.back(), r.expectation);
        const bool j2_ok = within(r.terms[1], 0.0, kSigmas);
        ok = ok && cum_ok && j2_ok;
        detail += fmt("%s: cum=%.4f(%.4f) E=%.4f(%.4f) j2=%.4f(%.4f); ", label, r.cumulative.back().mean,
                      r.cumulative.back().se_or_zero(), r.expectation.mean, r.expectation.se_or_zero(),
                      r.terms[1].mean, r.terms[1].se_or_zero());
    };
    check_exact_series("N(rect)", rectangle_count(Window{2.0, 1.0}), Window{2.0, 1.0}, o.seed + 50);
    const HawkesParams poisson = poisson_params(2.0, 2.0);
    check_exact_series("H_T|Phi=0", counting_functional(poisson), poisson.window, o.seed + 51);

    const HawkesParams hawkes = default_params(2.0, 4.0);
    // Term j carries (TM)^j / j! = 8^j / j!, so the j = 5 term that sets the
    // truncation budget is noise dominated; four times the paths keeps it below 1.
    const auto r = characterization_check(counting_functional(hawkes), hawkes.window, 4, 4 * n, o.seed + 52);
    const bool hawkes_ok = agree(r.cumulative.back(), r.expectation, r.truncation_budget);
    ok = ok && hawkes_ok;
    detail += fmt("H_T|exp: cum=%.4f(%.4f) E=%.4f(%.4f) budget=%.4f", r.cumulative.back().mean,
                  r.cumulative.back().se_or_zero(), r.expectation.mean, r.expectation.se_or_zero(),
                  r.truncation_budget);
    return {5, "characterization identity", ok, detail};
}

CriterionResult integration_by_parts(const AcceptanceOptions& o) {
    const std::size_t n = scaled(o, 20000);
    std::string detail;
    bool ok = true;
    auto check = [&](const char* label, const Functional& F, Window w, std::uint64_t seed) {
        const IppCheck c = ipp_check_order1(F, w, n, seed);
        const bool pass = agree(c.lhs, c.rhs);
        ok = ok && pass;
        detail += fmt("%s: lhs=%.4f(%.4f) rhs=%.4f(%.4f); ", label, c.lhs.mean, c.lhs.se_or_zero(), c.rhs.mean,
                      c.rhs.se_or_zero());
        return c;
    };
    const HawkesParams poisson = poisson_params(2.0, 2.0);
    check("H_T|Phi=0", counting_functional(poisson), poisson.window, o.seed + 60);
    const HawkesParams hawkes = default_params(2.0, 4.0);
    check("H_T|exp", counting_functional(hawkes), hawkes.window, o.seed + 61);
    check("N(rect)", rectangle_count(Window{2.0, 2.0}), Window{2.0, 2.0}, o.seed + 62);
    const IppCheck c = check("const", constant_functional(Window{2.0, 2.0}, 3.0), Window{2.0, 2.0}, o.seed + 63);
    const bool lhs_zero = c.lhs.mean == 0.0;
    ok = ok && lhs_zero;
    detail += lhs_zero ? "const lhs exactly 0" : "const lhs NOT exactly 0";
    return {6, "integration by parts (order 1)", ok, detail};
}

CriterionResult branching_martingale(const AcceptanceOptions& o) {
    const HawkesParams params = default_params();
    const std::size_t n = scaled(o, 10000);
    const MCEstimate residual = martingale_residual(params, n, o.seed + 7);
    const MCEstimate mean = branching_mean(params, n, o.seed + 7);
    const double target = analytic_mean(params);
    const bool ok = within(residual, 0.0, kSigmas) && within(mean, target, kSigmas);
    return {7, "branching martingale", ok,
            fmt("residual=%.4f se=%.4f E[X_T]=%.4f se=%.4f target=%.5f", residual.mean, residual.se_or_zero(),
                mean.mean, mean.se_or_zero(), target)};
}

CriterionResult not_counting(const AcceptanceOptions& o) {
    const HawkesParams params = default_params();
    const std::size_t n = scaled(o, 10000);
    const JumpHistogram hist = jump_size_histogram(params, n, o.seed + 8);
    const double frac = hist.fraction_at_least(2);
    bool ok = frac > 0.0 && frac > 0.01;
    // The regression pin only applies to the full-scale, default-seed run that produced it.
    const bool pinned = o.scale == 1.0 && o.seed == AcceptanceOptions{}.seed;
    if (pinned) ok = ok && std::abs(frac - kPinnedJumpFractionGe2) <= kPinnedJumpFractionTolerance;

    // Hawkes paths on the same windows jump by exactly one.
    std::size_t unit_jumps = 0;
    std::size_t events = 0;
    for (std::size_t i = 0; i < std::min<std::size_t>(n, 2000); ++i) {
        const HawkesPath path = simulate(params, RngKey{o.seed + 80, i}, SimulationMode::Imbedding);
        for (std::size_t e = 0; e < path.events.size(); ++e) {
            ++events;
            const double t = path.events[e].t;
            const double before = e == 0 ? -1.0 : path.events[e - 1].t;
            if (before < t && path.count_until(t) == e + 1) ++unit_jumps;
        }
    }
    ok = ok && unit_jumps == events;
    return {8, "branching process is not a counting process", ok,
            fmt("jumps=%llu frac(size>=2)=%.6f%s max_size=%llu ignored=%.4f hawkes_unit_jumps=%zu/%zu",
                static_cast<unsigned long long>(hist.jumps), frac, pinned ? " (pinned)" : "",
                static_cast<unsigned long long>(hist.counts.empty() ? 0 : hist.counts.rbegin()->first),
                hist.ignored_fraction(), unit_jumps, events)};
}

CriterionResult kernel_ladder(const AcceptanceOptions&) {
    // Trapezoid error at h = 0.01 measured at 4.2e-6 (norms) and 3.8e-7 (Psi).
    constexpr double kTol = 1e-4;
    const Kernel kernel = Kernel::exponential(0.5, 1.0);
    const ConvolutionLadder ladder = build_ladder(kernel, 0.01, 60.0);
    double worst_norm = 0.0;
    for (std::size_t n = 1; n <= 10; ++n) {
        worst_norm = std::max(worst_norm, std::abs(trapezoid(ladder.level(n), ladder.step()) - std::pow(0.5, n)));
    }
    double worst_psi = 0.0;
    for (std::size_t m = 0; m < ladder.nodes(); ++m) {
        const double t = ladder.step() * static_cast<double>(m);
        worst_psi = std::max(worst_psi, std::abs(ladder.psi()[m] - 0.5 * std::exp(-0.5 * t)));
    }
    const double l1 = psi_l1(ladder);
    const double l1_err = std::abs(l1 - 1.0);
    const bool ok = worst_norm <= kTol && worst_psi <= kTol && l1_err <= kTol + ladder.tail_bound();
    return {9, "kernel ladder", ok,
            fmt("max|L1(Phi_n)-0.5^n|=%.2e max|Psi-closed|=%.2e |Psi|_1=%.6f tol=%.0e", worst_norm, worst_psi, l1,
                kTol)};
}

CriterionResult chain_tail(const AcceptanceOptions& o) {
    const HawkesParams params = default_params();
    const std::size_t p = 8;
    const MCEstimate tail = chain_length_tail(params, p, scaled(o, 10000), o.seed + 10);
    const double bound = chain_length_tail_bound(params, p);
    const bool ok = tail.mean <= bound + kSigmas * tail.se_or_zero();
    return {10, "chain-length tail bound", ok,
            fmt("tail=%.5f se=%.5f bound=%.5f", tail.mean, tail.se_or_zero(), bound)};
}

}  // namespace

std::vector<std::function<CriterionResult(const AcceptanceOptions&)>> acceptance_criteria() {
    return {exact_reconstruction, oracle_equivalence, hawkes_mean, poisson_reductions, characterization,
            integration_by_parts, branching_martingale, not_counting, kernel_ladder, chain_tail};
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::ostream& out) {
    std::vector<CriterionResult> results;
    for (const auto& criterion : acceptance_criteria()) {
        CriterionResult r = criterion(options);
        out << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": " << r.detail << std::endl;
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace pchaos
