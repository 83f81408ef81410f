#pragma once

#include <utility>

namespace iesim {

// Boltzmann constant in meV/K. Energies are meV and temperatures K throughout.
inline constexpr double k_boltzmann = 0.0861733;

// sqrt(2/pi), the peak of the normalized meter momentum density.
inline constexpr double kSqrt2OverPi = 0.79788456080286536;

// Physical inputs plus the derived thermal populations of the two-level system.
// pop_b is stored as 1 - pop_a so that pop_a + pop_b == 1 holds exactly.
struct EngineParams {
    double delta_e;       // level splitting (meV)
    double t_sys;         // system bath temperature (K)
    double hbar2B;        // meter wavepacket width parameter hbar^2*B (meV)
    double t_meter = 0.0; // meter bath temperature (K)
    double pop_a = 0.0;   // ground-state population a
    double pop_b = 0.0;   // excited-state population b = 1 - a
};

// Dimensionless operating point. t_bar = t_m / tau* with tau* = sqrt(hbar^2 B)/g,
// u_prime = p'/(hbar sqrt(B)). The coupling g never appears on its own: the
// analytic layer depends only on these reduced combinations. u_prime may be
// +-infinity, in which case the CDF limits are exact.
struct OperatingPoint {
    double t_bar;
    double u_prime;
};

// Thermal populations (a, b) of the two-level system:
// a = 1/(1 + exp(-dE/kT)), b = 1 - a, with a + b == 1 exact.
std::pair<double, double> derive_populations(double delta_e, double t_sys);

// Validates inputs and fills the populations.
EngineParams make_params(double delta_e, double t_sys, double hbar2B, double t_meter = 0.0);

// Joint probability density q_i(u, t_bar) for system state i and reduced meter
// momentum u (density per unit u):
//   q_0 = a sqrt(2/pi) e^{-2u^2},  q_1 = b sqrt(2/pi) e^{-2(u+t_bar)^2}.
double joint_density(int i, double u, const OperatingPoint& pt, const EngineParams& params);

// Meter outcome density q(u, t_bar) = q_0 + q_1; integrates to 1.
double meter_marginal(double u, const OperatingPoint& pt, const EngineParams& params);

// P(i | meter outcome u). Evaluated with a shared-exponent (log-sum-exp)
// form, so it stays finite and in [0,1] arbitrarily deep in the tails and
// P_0 + P_1 == 1 exactly.
double conditional_prob(int i, double u, const OperatingPoint& pt, const EngineParams& params);

}  // namespace iesim
