#pragma once

#include <functional>
#include <stdexcept>

namespace iesim {

// Tolerances and limits for the adaptive quadrature. The default halfwidth
// truncates Gaussian-tailed integrands where the discarded mass is < e^-128.
struct QuadratureSpec {
    double abs_tol = 1e-11;
    double rel_tol = 1e-10;
    int max_depth = 60;
    double domain_halfwidth = 8.0;
};

// Raised when the bisection depth runs out before the tolerance is met.
// Carries the best available estimate and its error bound.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(double estimate_, double error_bound_);
    double estimate;
    double error_bound;
};

// Phi(z), the standard normal CDF. Exact 0/1 at -inf/+inf; NaN is rejected.
double std_normal_cdf(double z);

// x*ln(x) with the continuity convention xlogx(0) = 0. Negative x is rejected.
double xlogx(double x);

// Adaptive Gauss-Kronrod (G7,K15) with deterministic left-to-right bisection,
// so repeated runs are bit-identical. Meets abs_tol or rel_tol, whichever is
// looser; throws QuadratureError if max_depth is exhausted first.
double adaptive_integrate(const std::function<double(double)>& f, double lo, double hi,
                          const QuadratureSpec& spec = {});

}  // namespace iesim
