#include "iesim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace iesim {

namespace {

void require_time(const OperatingPoint& pt) {
    if (!(pt.t_bar >= 0.0)) throw std::domain_error("operating point: t_bar must be >= 0");
}

// Integrates f over [lo, hi] split at the branch centers (0 and -t_bar) and
// their midpoint, so the adaptive rule always sees the Gaussian features.
double integrate_segmented(const std::function<double(double)>& f, double lo, double hi,
                           const OperatingPoint& pt, const QuadratureSpec& spec) {
    double knots[5] = {lo, -pt.t_bar, -0.5 * pt.t_bar, 0.0, hi};
    std::sort(knots, knots + 5);
    QuadratureSpec seg = spec;
    seg.abs_tol = spec.abs_tol / 4.0;
    double total = 0.0;
    for (int k = 0; k + 1 < 5; ++k) {
        const double a = std::clamp(knots[k], lo, hi);
        const double b = std::clamp(knots[k + 1], lo, hi);
        if (b > a) total += adaptive_integrate(f, a, b, seg);
    }
    return total;
}

}  // namespace

double initial_entropy(const EngineParams& params) {
    return -(xlogx(params.pop_a) + xlogx(params.pop_b));
}

double conditional_entropy(const OperatingPoint& pt, const EngineParams& params,
                           const QuadratureSpec& spec) {
    require_time(pt);
    // No evolution, no correlations: the conditionals equal the priors.
    if (pt.t_bar == 0.0) return initial_entropy(params);
    if (params.pop_a == 0.0 || params.pop_b == 0.0) return 0.0;
    auto integrand = [&](double u) {
        const double q = meter_marginal(u, pt, params);
        if (q == 0.0) return 0.0;
        const double p1 = conditional_prob(1, u, pt, params);
        return q * -(xlogx(p1) + xlogx(1.0 - p1));
    };
    const double lo = -spec.domain_halfwidth - pt.t_bar;
    const double hi = spec.domain_halfwidth;
    return integrate_segmented(integrand, lo, hi, pt, spec);
}

double info_gain(const OperatingPoint& pt, const EngineParams& params, const QuadratureSpec& spec) {
    return initial_entropy(params) - conditional_entropy(pt, params, spec);
}

double event_gain(double u, const OperatingPoint& pt, const EngineParams& params) {
    require_time(pt);
    // G = dE (P_1(t|u) - b) = dE a b (E1 - E0) / (a E0 + b E1) with the shared
    // exponent shifted out, making the sign change at u = -t_bar/2 exact.
    const double s = u + pt.t_bar;
    const double e0 = -2.0 * u * u;
    const double e1 = -2.0 * s * s;
    const double m = e0 > e1 ? e0 : e1;
    const double r0 = std::exp(e0 - m);
    const double r1 = std::exp(e1 - m);
    return params.delta_e * params.pop_a * params.pop_b * (r1 - r0) /
           (params.pop_a * r0 + params.pop_b * r1);
}

double work_out(const OperatingPoint& pt, const EngineParams& params) {
    require_time(pt);
    return params.delta_e * params.pop_a * params.pop_b *
           (std_normal_cdf(2.0 * (pt.u_prime + pt.t_bar)) - std_normal_cdf(2.0 * pt.u_prime));
}

double work_out_quadrature(const OperatingPoint& pt, const EngineParams& params,
                           const QuadratureSpec& spec) {
    require_time(pt);
    const double lo = -spec.domain_halfwidth - pt.t_bar;
    const double hi = std::min(pt.u_prime, spec.domain_halfwidth);
    if (!(hi > lo)) return 0.0;
    auto integrand = [&](double u) { return meter_marginal(u, pt, params) * event_gain(u, pt, params); };
    return integrate_segmented(integrand, lo, hi, pt, spec);
}

double attempt_fraction(const OperatingPoint& pt, const EngineParams& params) {
    require_time(pt);
    return params.pop_a * std_normal_cdf(2.0 * pt.u_prime) +
           params.pop_b * std_normal_cdf(2.0 * (pt.u_prime + pt.t_bar));
}

double work_meas(const OperatingPoint& pt, const EngineParams& params) {
    require_time(pt);
    return 0.5 * params.pop_b * params.hbar2B * pt.t_bar * pt.t_bar;
}

double work_prep(const EngineParams& params) { return 0.25 * params.hbar2B; }

double work_in(const OperatingPoint& pt, const EngineParams& params) {
    return work_meas(pt, params) + work_prep(params);
}

double efficiency(const OperatingPoint& pt, const EngineParams& params) {
    const double wout = work_out(pt, params);
    if (!(wout > 0.0)) return 0.0;
    return 1.0 / (1.0 + work_in(pt, params) / wout);
}

double power(const OperatingPoint& pt, const EngineParams& params) {
    require_time(pt);
    if (pt.t_bar == 0.0) {
        const double tail = std::exp(-2.0 * pt.u_prime * pt.u_prime);  // 0 at u' = +-inf
        return params.delta_e * params.pop_a * params.pop_b * kSqrt2OverPi * tail;
    }
    return work_out(pt, params) / pt.t_bar;
}

double performance_product(const OperatingPoint& pt, const EngineParams& params) {
    return efficiency(pt, params) * power(pt, params);
}

double carnot_efficiency(double t_sys, double t_meter) {
    if (!(t_sys > 0.0) || !(t_meter >= 0.0) || t_meter > t_sys)
        throw std::domain_error("carnot_efficiency: requires 0 <= t_meter <= t_sys, t_sys > 0");
    return 1.0 - t_meter / t_sys;
}

bool heat_engine_advantage(const CycleReport& report) { return report.efficiency > 0.5; }

CycleReport cycle_report(const OperatingPoint& pt, const EngineParams& params,
                         const QuadratureSpec& spec) {
    CycleReport r{};
    r.s_cond = conditional_entropy(pt, params, spec);
    r.info_gain = initial_entropy(params) - r.s_cond;
    r.w_meas = work_meas(pt, params);
    r.w_prep = work_prep(params);
    r.w_in = r.w_meas + r.w_prep;
    r.w_out = work_out(pt, params);
    r.attempt_fraction = attempt_fraction(pt, params);
    r.t_eff_ratio = r.attempt_fraction > 0.0 ? 1.0 / r.attempt_fraction
                                             : std::numeric_limits<double>::infinity();
    r.efficiency = r.w_out > 0.0 ? 1.0 / (1.0 + r.w_in / r.w_out) : 0.0;
    if (pt.t_bar == 0.0) {
        r.power = params.delta_e * params.pop_a * params.pop_b * kSqrt2OverPi *
                  std::exp(-2.0 * pt.u_prime * pt.u_prime);
    } else {
        r.power = r.w_out / pt.t_bar;
    }
    r.product = r.efficiency * r.power;
    return r;
}

}  // namespace iesim
