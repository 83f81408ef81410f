#include "iesim/model.hpp"

#include <cmath>
#include <stdexcept>

namespace iesim {

std::pair<double, double> derive_populations(double delta_e, double t_sys) {
    if (!std::isfinite(delta_e) || !std::isfinite(t_sys) || delta_e <= 0.0 || t_sys <= 0.0)
        throw std::domain_error("derive_populations: delta_e and t_sys must be positive and finite");
    const double x = delta_e / (k_boltzmann * t_sys);
    // Evaluate the small population first: 1/(1+e^x) keeps full relative
    // precision in b, and the 1 - a round trip below reproduces it exactly,
    // so both a + b == 1 and b/a == e^-x hold to working precision.
    const double b0 = 1.0 / (1.0 + std::exp(x));
    const double a = 1.0 - b0;
    const double b = 1.0 - a;
    return {a, b};
}

EngineParams make_params(double delta_e, double t_sys, double hbar2B, double t_meter) {
    if (!std::isfinite(hbar2B) || hbar2B <= 0.0)
        throw std::domain_error("make_params: hbar2B must be positive and finite");
    if (!std::isfinite(t_meter) || t_meter < 0.0)
        throw std::domain_error("make_params: t_meter must be non-negative and finite");
    EngineParams params{delta_e, t_sys, hbar2B, t_meter, 0.0, 0.0};
    const auto [a, b] = derive_populations(delta_e, t_sys);
    params.pop_a = a;
    params.pop_b = b;
    return params;
}

double joint_density(int i, double u, const OperatingPoint& pt, const EngineParams& params) {
    if (i != 0 && i != 1) throw std::domain_error("joint_density: state index must be 0 or 1");
    if (i == 0) return params.pop_a * kSqrt2OverPi * std::exp(-2.0 * u * u);
    const double s = u + pt.t_bar;
    return params.pop_b * kSqrt2OverPi * std::exp(-2.0 * s * s);
}

double meter_marginal(double u, const OperatingPoint& pt, const EngineParams& params) {
    return joint_density(0, u, pt, params) + joint_density(1, u, pt, params);
}

double conditional_prob(int i, double u, const OperatingPoint& pt, const EngineParams& params) {
    if (i != 0 && i != 1) throw std::domain_error("conditional_prob: state index must be 0 or 1");
    // Shift both Gaussian exponents by their maximum before exponentiating;
    // the ratio is then exact where the exponents coincide (t_bar = 0 and
    // u = -t_bar/2 give the prior b bit-for-bit) and never underflows to 0/0.
    const double s = u + pt.t_bar;
    const double e0 = -2.0 * u * u;
    const double e1 = -2.0 * s * s;
    const double m = e0 > e1 ? e0 : e1;
    const double r0 = std::exp(e0 - m);
    const double r1 = std::exp(e1 - m);
    const double p1 = params.pop_b * r1 / (params.pop_a * r0 + params.pop_b * r1);
    return i == 1 ? p1 : 1.0 - p1;
}

}  // namespace iesim
