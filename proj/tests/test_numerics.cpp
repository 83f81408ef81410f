#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iesim/numerics.hpp"
#include "iesim/rng.hpp"

#include <cmath>

using iesim::adaptive_integrate;
using iesim::QuadratureSpec;
using iesim::std_normal_cdf;
using iesim::xlogx;

namespace {

// Independent oracle for the normal CDF: composite Simpson on the density.
double simpson_normal_mass(double lo, double hi, int panels) {
    const double h = (hi - lo) / (2 * panels);
    auto pdf = [](double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * 3.14159265358979323846); };
    double s = pdf(lo) + pdf(hi);
    for (int k = 1; k < 2 * panels; ++k) s += pdf(lo + k * h) * (k % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

}  // namespace

TEST_CASE("standard normal cdf values") {
    CHECK(std_normal_cdf(0.0) == 0.5);
    CHECK(std_normal_cdf(std::numeric_limits<double>::infinity()) == 1.0);
    CHECK(std_normal_cdf(-std::numeric_limits<double>::infinity()) == 0.0);
    // frozen reference 0.97724986805182079; Simpson oracle agrees below
    CHECK(std_normal_cdf(2.0) == doctest::Approx(0.97724986805182079).epsilon(1e-13));
    CHECK(std::abs(std_normal_cdf(2.0) - (0.5 + simpson_normal_mass(0.0, 2.0, 4000))) < 1e-10);
    CHECK_THROWS_AS(std_normal_cdf(std::nan("")), std::domain_error);
}

TEST_CASE("cdf symmetry over random arguments") {
    iesim::Xoshiro256pp rng(12345);
    for (int i = 0; i < 10000; ++i) {
        const double z = -10.0 + 20.0 * rng.uniform01();
        CHECK(std::abs(std_normal_cdf(z) + std_normal_cdf(-z) - 1.0) <= 2e-13);
    }
}

TEST_CASE("xlogx") {
    CHECK(xlogx(0.0) == 0.0);
    CHECK(xlogx(1.0) == 0.0);
    CHECK(xlogx(2.718281828459045) == doctest::Approx(2.718281828459045).epsilon(1e-15));
    CHECK_THROWS_AS(xlogx(-1e-9), std::domain_error);
}

TEST_CASE("quadrature on polynomials up to the embedded rule degree") {
    for (int k = 0; k <= 13; ++k) {
        auto f = [k](double x) { return std::pow(x, k); };
        CHECK(std::abs(adaptive_integrate(f, 0.0, 1.0, {}) - 1.0 / (k + 1)) <= 1e-13);
    }
}

TEST_CASE("quadrature on gaussians") {
    auto density = [](double u) { return 0.79788456080286536 * std::exp(-2.0 * u * u); };
    CHECK(std::abs(adaptive_integrate(density, -8.0, 8.0, {}) - 1.0) <= 1e-10);
    auto odd = [&](double u) { return u * density(u); };
    CHECK(std::abs(adaptive_integrate(odd, -8.0, 8.0, {})) <= 1e-12);
}

TEST_CASE("quadrature is deterministic") {
    auto f = [](double x) { return std::sin(3.0 * x) * std::exp(-x * x); };
    const double a = adaptive_integrate(f, -5.0, 5.0, {});
    const double b = adaptive_integrate(f, -5.0, 5.0, {});
    CHECK(a == b);
}

TEST_CASE("depth exhaustion raises a convergence error with the best estimate") {
    auto nasty = [](double x) { return std::sin(1.0 / (x + 1e-6)); };
    QuadratureSpec spec;
    spec.abs_tol = 1e-14;
    spec.rel_tol = 1e-14;
    spec.max_depth = 10;
    CHECK_THROWS_AS(adaptive_integrate(nasty, 0.0, 1.0, spec), iesim::QuadratureError);
    try {
        adaptive_integrate(nasty, 0.0, 1.0, spec);
    } catch (const iesim::QuadratureError& e) {
        CHECK(std::isfinite(e.estimate));
        CHECK(e.error_bound > 0.0);
    }
}

TEST_CASE("invalid quadrature spec and interval are rejected") {
    auto f = [](double x) { return x; };
    QuadratureSpec bad_depth;
    bad_depth.max_depth = 5;
    CHECK_THROWS_AS(adaptive_integrate(f, 0.0, 1.0, bad_depth), std::invalid_argument);
    QuadratureSpec bad_tol;
    bad_tol.abs_tol = 0.0;
    CHECK_THROWS_AS(adaptive_integrate(f, 0.0, 1.0, bad_tol), std::invalid_argument);
    CHECK_THROWS_AS(adaptive_integrate(f, 1.0, 0.0, {}), std::invalid_argument);
}
