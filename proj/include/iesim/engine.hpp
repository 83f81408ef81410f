#pragma once

#include "iesim/model.hpp"
#include "iesim/numerics.hpp"

namespace iesim {

// Everything the engine reports for one operating point. Entropies are in
// units of k_B, energies in meV, power in meV per reduced time.
struct CycleReport {
    double info_gain;
    double s_cond;
    double w_meas;
    double w_prep;
    double w_in;
    double w_out;
    double attempt_fraction;
    double t_eff_ratio;  // t_eff/t_m = 1/attempt_fraction; inf when no cycle attempts extraction
    double efficiency;
    double power;
    double product;      // efficiency * power
};

// S(0)/k_B = -(a ln a + b ln b), the entropy of the initial thermal state.
double initial_entropy(const EngineParams& params);

// S(t_bar)/k_B: the meter-outcome average of the binary entropy of the
// conditional state, by adaptive quadrature. Equals S(0) at t_bar = 0.
double conditional_entropy(const OperatingPoint& pt, const EngineParams& params,
                           const QuadratureSpec& spec = {});

// I(t_bar) = S(0) - S(t_bar); zero at t_bar = 0, saturates at S(0).
double info_gain(const OperatingPoint& pt, const EngineParams& params,
                 const QuadratureSpec& spec = {});

// Excess extractable energy for meter outcome u:
// G(u, t_bar) = dE (P_1(t_bar|u) - b). Positive iff u < -t_bar/2.
double event_gain(double u, const OperatingPoint& pt, const EngineParams& params);

// Average useful energy extracted per cycle, closed form:
// W_out = dE a b [Phi(2(u' + t_bar)) - Phi(2u')].
double work_out(const OperatingPoint& pt, const EngineParams& params);

// Independent route: adaptive quadrature of q(u) G(u) up to u'. Must agree
// with the closed form; kept as a permanent cross-check.
double work_out_quadrature(const OperatingPoint& pt, const EngineParams& params,
                           const QuadratureSpec& spec = {});

// Probability that a cycle ends in an extraction attempt:
// F = a Phi(2u') + b Phi(2(u' + t_bar)).
double attempt_fraction(const OperatingPoint& pt, const EngineParams& params);

// Switching work for the measurement window, closed form
// W_meas = (b/2) hbar^2B t_bar^2. Derived from the constant branch force
// (<x>_1 = -g t^2/2) and verified against the grid-propagation oracle.
double work_meas(const OperatingPoint& pt, const EngineParams& params);

// Meter preparation cost, the zero-point energy hbar^2 B / 4.
double work_prep(const EngineParams& params);

// Total input energy W_in = W_meas + W_prep.
double work_in(const OperatingPoint& pt, const EngineParams& params);

// eta = 1/(1 + W_in/W_out) for W_out > 0, else 0.
double efficiency(const OperatingPoint& pt, const EngineParams& params);

// Pi = W_out / t_bar (meV per reduced time). At t_bar = 0 returns the
// analytic limit dE a b sqrt(2/pi) e^{-2 u'^2}.
double power(const OperatingPoint& pt, const EngineParams& params);

// eta * Pi, the balanced performance quantifier.
double performance_product(const OperatingPoint& pt, const EngineParams& params);

// eta_C = 1 - T_M/T_S. Requires 0 <= t_meter <= t_sys.
double carnot_efficiency(double t_sys, double t_meter);

// True when the cycle returns more work than it consumes (eta > 1/2).
bool heat_engine_advantage(const CycleReport& report);

// Full report at one operating point.
CycleReport cycle_report(const OperatingPoint& pt, const EngineParams& params,
                         const QuadratureSpec& spec = {});

}  // namespace iesim
