#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iesim/engine.hpp"

#include <cmath>
#include <limits>
#include <vector>

using namespace iesim;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

EngineParams ratio_one_params() { return make_params(k_boltzmann * 300.0, 300.0, 25.85); }
EngineParams default_params() { return make_params(25.85, 300.0, 25.85); }
EngineParams ratio_params(double x) {
    return make_params(25.85, 25.85 / (k_boltzmann * x), 25.85);
}

}  // namespace

TEST_CASE("initial entropy") {
    EngineParams half = default_params();
    half.pop_a = 0.5;
    half.pop_b = 0.5;
    CHECK(initial_entropy(half) == doctest::Approx(0.6931471805599453).epsilon(1e-15));
    EngineParams pure = default_params();
    pure.pop_a = 1.0;
    pure.pop_b = 0.0;
    CHECK(initial_entropy(pure) == 0.0);
    CHECK(initial_entropy(ratio_one_params()) ==
          doctest::Approx(0.58220310888821795).epsilon(1e-14));
}

TEST_CASE("conditional entropy: start, golden midpoint, saturation") {
    const auto params = ratio_one_params();
    CHECK(conditional_entropy({0.0, 0.0}, params) == initial_entropy(params));
    // frozen golden from 30-digit quadrature of the entropy integrand
    CHECK(conditional_entropy({1.0, 0.0}, params) ==
          doctest::Approx(0.30585252289640423).epsilon(1e-9));
    CHECK(conditional_entropy({50.0, 0.0}, params) <= 1e-3);
    CHECK_THROWS_AS(conditional_entropy({-0.5, 0.0}, params), std::domain_error);
}

TEST_CASE("information gain limits and monotonicity") {
    const auto params = ratio_one_params();
    CHECK(info_gain({0.0, 0.0}, params) == 0.0);
    CHECK(std::abs(info_gain({50.0, 0.0}, params) - 0.58220310888821795) <= 1e-3);
    CHECK(info_gain({1.0, 0.0}, params) ==
          doctest::Approx(0.27635058599181372).epsilon(1e-9));

    double prev = -1.0;
    for (int k = 0; k <= 20; ++k) {
        const double gain = info_gain({0.25 * k, 0.0}, params);
        CHECK(gain > prev);  // strict on [0, 5]
        prev = gain;
    }
    for (double x : {0.5, 1.0, 2.0}) {
        const auto p = ratio_params(x);
        const double s0 = initial_entropy(p);
        prev = -1.0;
        for (int k = 0; k <= 40; ++k) {
            const double gain = info_gain({0.25 * k, 0.0}, p);
            CHECK(gain >= prev);
            CHECK(gain <= s0 + 1e-12);
            prev = gain;
        }
    }
}

TEST_CASE("event gain zeros and the null average") {
    const auto params = ratio_one_params();
    for (double u : {-2.0, 0.0, 3.3}) CHECK(event_gain(u, {0.0, 0.0}, params) == 0.0);
    for (double t : {0.3, 1.0, 4.0}) CHECK(event_gain(-0.5 * t, {t, 0.0}, params) == 0.0);

    const OperatingPoint pt{1.0, 0.0};
    auto integrand = [&](double u) {
        return meter_marginal(u, pt, params) * event_gain(u, pt, params);
    };
    const double avg = adaptive_integrate(integrand, -9.0, -0.5, {}) +
                       adaptive_integrate(integrand, -0.5, 8.0, {});
    CHECK(std::abs(avg) <= 1e-10);
}

TEST_CASE("extracted work: closed form, spot values, limits") {
    const auto ratio1 = ratio_one_params();
    const auto defaults = default_params();
    for (double up : {-2.0, 0.0, 1.0, kInf, -kInf}) CHECK(work_out({0.0, up}, ratio1) == 0.0);
    for (double t : {0.5, 1.0, 2.0, 5.0}) CHECK(work_out({t, kInf}, ratio1) == 0.0);
    for (double t : {0.5, 1.0, 2.0}) CHECK(work_out({t, -kInf}, ratio1) == 0.0);
    // frozen goldens (independent 30-digit quadrature of q*G)
    CHECK(work_out({1.0, 0.0}, ratio1) == doctest::Approx(2.4257702739483412).epsilon(1e-12));
    CHECK(work_out({1.0, 0.0}, defaults) == doctest::Approx(2.4256698283842256).epsilon(1e-12));
}

TEST_CASE("closed form agrees with quadrature over the operating grid") {
    const auto params = default_params();
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        for (int j = 0; j < 20; ++j) {
            const OperatingPoint pt{5.0 * i / 19.0, -3.0 + 4.0 * j / 19.0};
            const double closed = work_out(pt, params);
            const double quad = work_out_quadrature(pt, params);
            worst = std::max(worst, std::abs(closed - quad));
            if (pt.t_bar > 0.0) CHECK(closed > 0.0);
        }
    }
    CHECK(worst <= 1e-9 * params.delta_e);
}

TEST_CASE("threshold at half the shift maximizes the extracted work") {
    const auto params = default_params();
    for (double t : {0.5, 1.0, 2.0}) {
        const double at_mid = work_out({t, -0.5 * t}, params);
        CHECK(at_mid > work_out({t, -0.5 * t - 0.1}, params));
        CHECK(at_mid > work_out({t, -0.5 * t + 0.1}, params));
    }
}

TEST_CASE("attempt fraction") {
    const auto ratio1 = ratio_one_params();
    CHECK(attempt_fraction({1.0, kInf}, ratio1) == 1.0);
    CHECK(attempt_fraction({1.0, -kInf}, ratio1) == 0.0);
    CHECK(attempt_fraction({1.0, 0.0}, ratio1) ==
          doctest::Approx(0.62835225786249931).epsilon(1e-13));
    CHECK(attempt_fraction({1.0, 0.0}, default_params()) ==
          doctest::Approx(0.62835948094394603).epsilon(1e-13));
    // independent quadrature of the marginal mass below the threshold
    const OperatingPoint pt{1.0, 0.0};
    auto q = [&](double u) { return meter_marginal(u, pt, ratio1); };
    const double mass = adaptive_integrate(q, -9.0, 0.0, {});
    CHECK(std::abs(mass - attempt_fraction(pt, ratio1)) <= 1e-10);
}

TEST_CASE("switching work closed form") {
    const auto ratio1 = ratio_one_params();
    CHECK(work_meas({0.0, 0.0}, ratio1) == 0.0);
    CHECK(work_meas({1.0, 0.0}, ratio1) == doctest::Approx(3.4760678712071869).epsilon(1e-14));
    for (double t : {0.5, 1.0, 3.0})
        CHECK(work_meas({2.0 * t, 0.0}, ratio1) / work_meas({t, 0.0}, ratio1) ==
              doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("input energy") {
    const auto defaults = default_params();
    CHECK(work_prep(defaults) == 6.4625);
    CHECK(work_in({0.0, 0.0}, defaults) == work_prep(defaults));
    CHECK(work_in({1.0, 0.0}, defaults) == doctest::Approx(9.9387634885010796).epsilon(1e-13));
}

TEST_CASE("efficiency shape") {
    const auto params = default_params();
    CHECK(efficiency({0.0, 0.0}, params) == 0.0);
    CHECK(efficiency({100.0, -0.5}, params) < 0.01);
    CHECK(efficiency({1.0, 0.0}, params) == doctest::Approx(0.19618123744269343).epsilon(1e-12));
    for (double up : {-1.5, -1.0, -0.5}) {
        double best = 0.0;
        for (int k = 1; k <= 80; ++k) best = std::max(best, efficiency({0.25 * k, up}, params));
        CHECK(best > efficiency({0.05, up}, params));
        CHECK(best > efficiency({20.0, up}, params));
    }
    for (double t : {0.0, 0.3, 1.0, 5.0, 50.0})
        for (double up : {-2.0, 0.0, 1.0, kInf}) {
            const double eta = efficiency({t, up}, params);
            CHECK(eta >= 0.0);
            CHECK(eta < 1.0);
        }
}

TEST_CASE("power limit and shape") {
    const auto params = default_params();
    CHECK(power({0.0, 0.0}, params) == doctest::Approx(4.055327481961628).epsilon(1e-13));
    CHECK(power({1e-4, 0.0}, params) ==
          doctest::Approx(4.055327481961628).epsilon(1e-3));
    CHECK(power({0.0, kInf}, params) == 0.0);
    CHECK(power({0.0, -kInf}, params) == 0.0);
    double prev = kInf;
    for (int k = 1; k <= 40; ++k) {
        const double p = power({0.25 * k, 0.0}, params);
        CHECK(p < prev);
        prev = p;
    }
    // interior peak for a negative threshold
    std::vector<double> grid;
    for (int k = 1; k <= 80; ++k) grid.push_back(power({0.25 * k, -1.0}, params));
    std::size_t arg = 0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid[i] > grid[arg]) arg = i;
    CHECK(arg > 0);
    CHECK(arg < grid.size() - 1);
}

TEST_CASE("performance product") {
    const auto params = default_params();
    CHECK(performance_product({0.0, 0.0}, params) == 0.0);
    CHECK(performance_product({100.0, -0.5}, params) < 1e-2);
    CHECK(performance_product({1.0, 0.0}, params) ==
          doctest::Approx(0.4758709085598232).epsilon(1e-12));
}

// The (0.3, 2) window is our operationalization of "fastest gain near one
// reduced time unit"; there is no sharper stated bound.
TEST_CASE("information rate peak lies in the operationalized window (0.3, 2)") {
    for (double x : {0.5, 1.0, 2.0}) {
        const auto params = ratio_params(x);
        double best_slope = -1.0, best_t = 0.0;
        for (double t = 0.05; t <= 3.0; t += 0.05) {
            const double slope =
                (info_gain({t + 0.01, 0.0}, params) - info_gain({t - 0.01, 0.0}, params)) / 0.02;
            if (slope > best_slope) {
                best_slope = slope;
                best_t = t;
            }
        }
        CHECK(best_t > 0.3);
        CHECK(best_t < 2.0);
    }
}

TEST_CASE("joint energy-temperature scaling raises efficiency pointwise") {
    const auto base = default_params();
    for (double lambda : {2.0, 4.0}) {
        const auto scaled = make_params(lambda * 25.85, lambda * 300.0, 25.85);
        for (double t : {0.5, 1.0, 2.0})
            for (double up : {-1.0, -0.5, 0.0})
                CHECK(efficiency({t, up}, scaled) > efficiency({t, up}, base));
    }
}

TEST_CASE("carnot benchmark and the work-advantage criterion") {
    CHECK(carnot_efficiency(300.0, 0.0) == 1.0);
    CHECK(carnot_efficiency(300.0, 300.0) == 0.0);
    CHECK(carnot_efficiency(300.0, 150.0) == 0.5);
    CHECK_THROWS_AS(carnot_efficiency(300.0, 301.0), std::domain_error);
    CHECK_THROWS_AS(carnot_efficiency(0.0, 0.0), std::domain_error);
    CycleReport r{};
    r.efficiency = 0.6;
    CHECK(heat_engine_advantage(r));
    r.efficiency = 0.5;
    CHECK(!heat_engine_advantage(r));
}

TEST_CASE("cycle report is consistent with the scalar operations") {
    const auto params = default_params();
    const OperatingPoint pt{1.0, 0.0};
    const CycleReport r = cycle_report(pt, params);
    CHECK(r.w_in == r.w_meas + r.w_prep);
    CHECK(r.w_prep == work_prep(params));
    CHECK(r.w_out == work_out(pt, params));
    CHECK(r.efficiency == efficiency(pt, params));
    CHECK(r.power == power(pt, params));
    CHECK(r.product == r.efficiency * r.power);
    CHECK(r.t_eff_ratio * r.attempt_fraction == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.info_gain >= 0.0);
    CHECK(r.info_gain <= initial_entropy(params));
    CHECK(r.s_cond == conditional_entropy(pt, params));

    const CycleReport none = cycle_report({1.0, -kInf}, params);
    CHECK(none.attempt_fraction == 0.0);
    CHECK(std::isinf(none.t_eff_ratio));
    CHECK(none.w_out == 0.0);
    CHECK(none.efficiency == 0.0);
}

TEST_CASE("degenerate cold system extracts nothing") {
    const auto params = make_params(25.85, 1e-6, 25.85);
    CHECK(params.pop_b == 0.0);
    CHECK(work_out({1.0, 0.0}, params) == 0.0);
    CHECK(work_meas({1.0, 0.0}, params) == 0.0);
    CHECK(conditional_entropy({1.0, 0.0}, params) == 0.0);
    CHECK(info_gain({1.0, 0.0}, params) == 0.0);
    CHECK(efficiency({1.0, 0.0}, params) == 0.0);
    CHECK(performance_product({1.0, 0.0}, params) == 0.0);
}
