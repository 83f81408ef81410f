#pragma once

#include "iesim/engine.hpp"
#include "iesim/exec.hpp"

#include <cstdint>
#include <vector>

namespace iesim {

struct SweepRange {
    double lo;
    double hi;
    int count;  // >= 1; count == 1 pins the axis at lo
};

// Rectangular grid of cycle reports over (t_bar, u_prime). Cells are stored
// row-major with the t_bar index outermost. cell_ok flags cells whose
// evaluation failed (quadrature non-convergence); the sweep itself continues.
struct SweepTable {
    std::vector<double> t_bar_axis;
    std::vector<double> u_prime_axis;
    std::vector<CycleReport> cells;
    std::vector<std::uint8_t> cell_ok;
    EngineParams params_echo;

    const CycleReport& at(int i, int j) const {
        return cells[static_cast<std::size_t>(i) * u_prime_axis.size() + static_cast<std::size_t>(j)];
    }
    bool ok(int i, int j) const {
        return cell_ok[static_cast<std::size_t>(i) * u_prime_axis.size() + static_cast<std::size_t>(j)] != 0;
    }
};

enum class Objective { efficiency, power, product };

struct SearchBox {
    double t_lo = 0.01;
    double t_hi = 20.0;
    double u_lo = -4.0;
    double u_hi = 2.0;
};

struct Optimum {
    double t_bar_star;
    double u_prime_star;
    double value;
    Objective objective;
    bool on_boundary;
    bool converged;
};

// Evaluates one objective from the closed forms (no quadrature involved).
double objective_value(Objective objective, const OperatingPoint& pt, const EngineParams& params);

// Full cycle report at every grid cell. Cells are independent, so the
// parallel kernel writes each slot once and matches the serial reference
// bit for bit.
SweepTable sweep(const EngineParams& params, SweepRange t_bar, SweepRange u_prime,
                 const QuadratureSpec& spec = {}, Exec exec = Exec::parallel);

// Coarse grid scan (coarse_n x coarse_n) followed by derivative-free local
// refinement (golden section on a degenerate axis, Nelder-Mead otherwise) to
// 1e-6 in both coordinates. Ties break toward smaller t_bar. The refined
// value never falls below the best coarse cell; an optimum pinned to the box
// edge sets on_boundary instead of failing.
Optimum maximize(const EngineParams& params, Objective objective, SearchBox box = {},
                 int coarse_n = 64);

}  // namespace iesim
