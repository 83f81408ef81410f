#include "iesim/optimize.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iesim {

namespace {

std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 1 || !std::isfinite(lo) || !std::isfinite(hi) || hi < lo)
        throw std::invalid_argument("linspace: invalid range");
    std::vector<double> axis(static_cast<std::size_t>(count));
    if (count == 1) {
        axis[0] = lo;
        return axis;
    }
    const double step = (hi - lo) / (count - 1);
    for (int i = 0; i < count; ++i) axis[static_cast<std::size_t>(i)] = lo + i * step;
    axis.back() = hi;
    return axis;
}

void evaluate_cell(SweepTable& table, std::size_t i, std::size_t j, const EngineParams& params,
                   const QuadratureSpec& spec) {
    const std::size_t idx = i * table.u_prime_axis.size() + j;
    const OperatingPoint pt{table.t_bar_axis[i], table.u_prime_axis[j]};
    try {
        table.cells[idx] = cycle_report(pt, params, spec);
        table.cell_ok[idx] = 1;
    } catch (const QuadratureError&) {
        table.cells[idx] = CycleReport{};
        table.cell_ok[idx] = 0;
    }
}

// Golden-section maximization; deterministic, tolerance on the coordinate.
double golden_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
    constexpr double kInvPhi = 0.6180339887498949;
    double c = hi - kInvPhi * (hi - lo);
    double d = lo + kInvPhi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    while (hi - lo > tol) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - kInvPhi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + kInvPhi * (hi - lo);
            fd = f(d);
        }
    }
    return 0.5 * (lo + hi);
}

struct Vertex {
    double t;
    double u;
    double value;
};

}  // namespace

double objective_value(Objective objective, const OperatingPoint& pt, const EngineParams& params) {
    switch (objective) {
        case Objective::efficiency: return efficiency(pt, params);
        case Objective::power: return power(pt, params);
        case Objective::product: return performance_product(pt, params);
    }
    throw std::invalid_argument("objective_value: unknown objective");
}

SweepTable sweep(const EngineParams& params, SweepRange t_bar, SweepRange u_prime,
                 const QuadratureSpec& spec, Exec exec) {
    SweepTable table;
    table.t_bar_axis = linspace(t_bar.lo, t_bar.hi, t_bar.count);
    table.u_prime_axis = linspace(u_prime.lo, u_prime.hi, u_prime.count);
    table.params_echo = params;
    const std::size_t nt = table.t_bar_axis.size();
    const std::size_t nu = table.u_prime_axis.size();
    table.cells.resize(nt * nu);
    table.cell_ok.assign(nt * nu, 0);

    const long long total = static_cast<long long>(nt * nu);
    if (exec == Exec::parallel) {
        // Cell cost grows with t_bar (wider entropy integrals); dynamic
        // scheduling balances it. Values are per-cell pure functions, so the
        // schedule cannot change the table.
#pragma omp parallel for schedule(dynamic, 4)
        for (long long idx = 0; idx < total; ++idx)
            evaluate_cell(table, static_cast<std::size_t>(idx) / nu,
                          static_cast<std::size_t>(idx) % nu, params, spec);
    } else {
        for (long long idx = 0; idx < total; ++idx)
            evaluate_cell(table, static_cast<std::size_t>(idx) / nu,
                          static_cast<std::size_t>(idx) % nu, params, spec);
    }
    return table;
}

Optimum maximize(const EngineParams& params, Objective objective, SearchBox box, int coarse_n) {
    if (!(box.t_lo > 0.0) || !(box.t_hi <= 50.0) || !(box.t_lo <= box.t_hi) ||
        !(box.u_lo >= -10.0) || !(box.u_hi <= 10.0) || !(box.u_lo <= box.u_hi))
        throw std::domain_error("maximize: search box must lie in t_bar (0,50], u_prime [-10,10]");
    if (coarse_n < 2) throw std::invalid_argument("maximize: coarse grid needs >= 2 points");

    auto value_at = [&](double t, double u) {
        return objective_value(objective, OperatingPoint{t, u}, params);
    };

    const bool t_fixed = box.t_lo == box.t_hi;
    const bool u_fixed = box.u_lo == box.u_hi;
    const auto t_axis = linspace(box.t_lo, box.t_hi, t_fixed ? 1 : coarse_n);
    const auto u_axis = linspace(box.u_lo, box.u_hi, u_fixed ? 1 : coarse_n);

    // Strictly-better scan keeps the first best cell: ascending axes give the
    // smaller-t_bar (then smaller-u_prime) tie break.
    double best_t = t_axis.front();
    double best_u = u_axis.front();
    double best_v = value_at(best_t, best_u);
    for (const double t : t_axis)
        for (const double u : u_axis) {
            const double v = value_at(t, u);
            if (v > best_v) {
                best_v = v;
                best_t = t;
                best_u = u;
            }
        }

    constexpr double kCoordTol = 1e-7;
    const double t_step = t_fixed ? 0.0 : t_axis[1] - t_axis[0];
    const double u_step = u_fixed ? 0.0 : u_axis[1] - u_axis[0];
    bool converged = true;
    double ref_t = best_t;
    double ref_u = best_u;

    if (t_fixed && u_fixed) {
        // single point, nothing to refine
    } else if (u_fixed) {
        ref_t = golden_max([&](double t) { return value_at(t, best_u); },
                           std::max(box.t_lo, best_t - t_step), std::min(box.t_hi, best_t + t_step),
                           kCoordTol);
    } else if (t_fixed) {
        ref_u = golden_max([&](double u) { return value_at(best_t, u); },
                           std::max(box.u_lo, best_u - u_step), std::min(box.u_hi, best_u + u_step),
                           kCoordTol);
    } else {
        // Nelder-Mead on the clamped objective; the best vertex never worsens.
        auto clamp_t = [&](double t) { return std::clamp(t, box.t_lo, box.t_hi); };
        auto clamp_u = [&](double u) { return std::clamp(u, box.u_lo, box.u_hi); };
        auto make_vertex = [&](double t, double u) {
            t = clamp_t(t);
            u = clamp_u(u);
            return Vertex{t, u, value_at(t, u)};
        };
        // Offset away from the nearer box edge so the simplex never collapses.
        const double dt0 = best_t + 0.5 * t_step <= box.t_hi ? 0.5 * t_step : -0.5 * t_step;
        const double du0 = best_u + 0.5 * u_step <= box.u_hi ? 0.5 * u_step : -0.5 * u_step;
        Vertex simplex[3] = {make_vertex(best_t, best_u), make_vertex(best_t + dt0, best_u),
                             make_vertex(best_t, best_u + du0)};
        const int max_iter = 500;
        int iter = 0;
        for (; iter < max_iter; ++iter) {
            std::sort(simplex, simplex + 3,
                      [](const Vertex& a, const Vertex& b) { return a.value > b.value; });
            const double spread_t =
                std::max({simplex[0].t, simplex[1].t, simplex[2].t}) -
                std::min({simplex[0].t, simplex[1].t, simplex[2].t});
            const double spread_u =
                std::max({simplex[0].u, simplex[1].u, simplex[2].u}) -
                std::min({simplex[0].u, simplex[1].u, simplex[2].u});
            if (spread_t < kCoordTol && spread_u < kCoordTol) break;

            const double ct = 0.5 * (simplex[0].t + simplex[1].t);
            const double cu = 0.5 * (simplex[0].u + simplex[1].u);
            const Vertex reflect = make_vertex(2.0 * ct - simplex[2].t, 2.0 * cu - simplex[2].u);
            if (reflect.value > simplex[0].value) {
                const Vertex expand = make_vertex(ct + 2.0 * (reflect.t - ct),
                                                  cu + 2.0 * (reflect.u - cu));
                simplex[2] = expand.value > reflect.value ? expand : reflect;
            } else if (reflect.value > simplex[1].value) {
                simplex[2] = reflect;
            } else {
                const bool outside = reflect.value > simplex[2].value;
                const Vertex base = outside ? reflect : simplex[2];
                const Vertex contract = make_vertex(ct + 0.5 * (base.t - ct), cu + 0.5 * (base.u - cu));
                if (contract.value > base.value) {
                    simplex[2] = contract;
                } else {
                    for (int k = 1; k < 3; ++k)
                        simplex[k] = make_vertex(simplex[0].t + 0.5 * (simplex[k].t - simplex[0].t),
                                                 simplex[0].u + 0.5 * (simplex[k].u - simplex[0].u));
                }
            }
        }
        converged = iter < max_iter;
        std::sort(simplex, simplex + 3,
                  [](const Vertex& a, const Vertex& b) { return a.value > b.value; });
        ref_t = simplex[0].t;
        ref_u = simplex[0].u;
    }

    // Never fall below the best coarse cell.
    double final_t = ref_t;
    double final_u = ref_u;
    if (value_at(ref_t, ref_u) < best_v) {
        final_t = best_t;
        final_u = best_u;
    }

    constexpr double kEdgeTol = 50.0 * kCoordTol;
    const bool on_boundary =
        (!t_fixed && (final_t - box.t_lo <= kEdgeTol || box.t_hi - final_t <= kEdgeTol)) ||
        (!u_fixed && (final_u - box.u_lo <= kEdgeTol || box.u_hi - final_u <= kEdgeTol));

    return Optimum{final_t, final_u, value_at(final_t, final_u), objective, on_boundary, converged};
}

}  // namespace iesim
