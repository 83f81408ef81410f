#pragma once

#include "iesim/exec.hpp"
#include "iesim/model.hpp"

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace iesim {

// Momentum grid for the split-operator propagation. Internal units fix
// hbar = 1, B = 1, g = 1, so tau* = 1 and reduced momentum u equals p;
// conversions to meV happen only at the boundary via hbar^2 B.
struct GridSpec {
    int n_points = 4096;  // power of two, >= 256
    double p_max = 0.0;   // grid half-width; 0 selects 8*(1 + t_bar)
    double dt = 1e-3;     // reduced time step, <= 1e-2
};

// Raised when the momentum grid cannot hold the state (half-width below the
// 4*(1 + t_bar) margin, or probability mass at the boundary above 1e-8).
class ResolutionError : public std::runtime_error {
public:
    explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

// One system-conditioned meter branch on the momentum grid. The Hamiltonian
// is block-diagonal in the system basis, so the branches never mix.
// Amplitudes are normalized per branch; the thermal weight rides separately.
struct BranchState {
    std::vector<std::complex<double>> amplitudes;
    double branch_weight;
    double p_max;

    double dp() const { return 2.0 * p_max / static_cast<double>(amplitudes.size()); }
    double momentum(std::size_t j) const { return -p_max + static_cast<double>(j) * dp(); }
    double norm() const;  // sum |amp|^2 dp
};

// Split-operator propagation (Strang: half kinetic, full potential, half
// kinetic; FFTs between momentum and position) of both meter branches from
// the initial Gaussian wavepacket to reduced time t_bar.
// Branch 0 is free; branch 1 sees the linear potential x + dE.
std::pair<BranchState, BranchState> propagate(const EngineParams& params, double t_bar,
                                              GridSpec grid = {});

// |amplitude|^2 on the momentum grid (per-branch normalized density).
std::vector<double> momentum_density(const BranchState& branch);

// <x> of one branch, from the position-space density obtained by FFT.
double position_mean(const BranchState& branch);

// Grid-propagation value of the switching work, -b <x>_1(t_bar) in internal
// units rescaled to meV. The t = 0 term vanishes because <x>(0) = 0.
double oracle_work_meas(const EngineParams& params, double t_bar, GridSpec grid = {});

// Chooses between the closed form and the grid oracle at call time.
enum class WorkMeasPath { closed_form, grid_oracle };
double work_meas_path(WorkMeasPath path, const EngineParams& params, double t_bar,
                      const GridSpec& grid = {});

struct McEstimate {
    double mean;
    double std_error;  // sample std / sqrt(n)
    long long n_samples;
    std::uint64_t seed;
};

struct McResult {
    McEstimate w_out;             // meV
    McEstimate info_gain;         // k_B
    McEstimate attempt_fraction;  // probability
};

// Seeded Monte Carlo over engine cycles: sample the system state from (a, b),
// the meter outcome from the matching Gaussian branch, extract when u <= u'.
// The sample stream is split into fixed-size blocks with sub-seeds derived
// from the master seed, and block sums merge in block order, so the result is
// bit-identical for any worker count (and for the serial reference).
McResult mc_cycles(const EngineParams& params, const OperatingPoint& pt, long long n,
                   std::uint64_t seed, Exec exec = Exec::parallel, int n_workers = 0);

// Debug dump of both branch marginals, columns u, density_0, density_1
// (weighted by the branch populations, directly comparable to q_i).
void write_marginals_csv(const std::string& path, const BranchState& branch0,
                         const BranchState& branch1, int precision = 12);

}  // namespace iesim
