#include "iesim/oracle.hpp"

#include "iesim/engine.hpp"
#include "iesim/numerics.hpp"
#include "iesim/rng.hpp"

#include <fftw3.h>
#include <omp.h>

#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace iesim {

namespace {

constexpr double kPi = 3.14159265358979323846;

// FFTW planning is not thread-safe; executing distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// In-place complex transform pair on one buffer. BACKWARD maps the momentum
// amplitudes to the position grid (x_k = k dx for k < n/2, (k-n) dx above,
// dx = 2 pi / (n dp)); FORWARD with a 1/n rescale maps back.
class FftWorkspace {
public:
    explicit FftWorkspace(int n) : buf_(static_cast<std::size_t>(n)) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        auto* d = reinterpret_cast<fftw_complex*>(buf_.data());
        to_position_ = fftw_plan_dft_1d(n, d, d, FFTW_BACKWARD, FFTW_ESTIMATE);
        to_momentum_ = fftw_plan_dft_1d(n, d, d, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    ~FftWorkspace() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(to_position_);
        fftw_destroy_plan(to_momentum_);
    }
    FftWorkspace(const FftWorkspace&) = delete;
    FftWorkspace& operator=(const FftWorkspace&) = delete;

    std::vector<std::complex<double>>& buffer() { return buf_; }
    void to_position() { fftw_execute(to_position_); }
    void to_momentum() { fftw_execute(to_momentum_); }

private:
    std::vector<std::complex<double>> buf_;
    fftw_plan to_position_;
    fftw_plan to_momentum_;
};

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void check_boundary_mass(const BranchState& branch) {
    const double edge = (std::norm(branch.amplitudes.front()) + std::norm(branch.amplitudes.back())) *
                        branch.dp();
    if (edge > 1e-8)
        throw ResolutionError("propagate: probability mass at the momentum grid boundary");
}

}  // namespace

double BranchState::norm() const {
    double s = 0.0;
    for (const auto& amp : amplitudes) s += std::norm(amp);
    return s * dp();
}

std::pair<BranchState, BranchState> propagate(const EngineParams& params, double t_bar,
                                              GridSpec grid) {
    if (!(t_bar >= 0.0)) throw std::domain_error("propagate: t_bar must be >= 0");
    if (!is_power_of_two(grid.n_points) || grid.n_points < 256)
        throw std::invalid_argument("propagate: n_points must be a power of two >= 256");
    if (!(grid.dt > 0.0) || grid.dt > 1e-2)
        throw std::invalid_argument("propagate: dt must be in (0, 1e-2]");
    const double p_max = grid.p_max > 0.0 ? grid.p_max : 8.0 * (1.0 + t_bar);
    if (!(p_max > 4.0 * (1.0 + t_bar)))
        throw ResolutionError("propagate: momentum grid half-width below 4*(1 + t_bar)");

    const int n = grid.n_points;
    const double dp = 2.0 * p_max / n;
    const double dx = 2.0 * kPi / (n * dp);

    // Initial wavepacket (2/pi)^(1/4) e^{-p^2} in internal units, renormalized
    // on the grid so the norm-conservation checks start from exactly 1.
    std::vector<std::complex<double>> psi0(n);
    double nrm = 0.0;
    for (int j = 0; j < n; ++j) {
        const double p = -p_max + j * dp;
        const double amp = std::pow(2.0 / kPi, 0.25) * std::exp(-p * p);
        psi0[j] = amp;
        nrm += amp * amp;
    }
    nrm = std::sqrt(nrm * dp);
    for (auto& amp : psi0) amp /= nrm;

    BranchState branch0{psi0, params.pop_a, p_max};
    BranchState branch1{std::move(psi0), params.pop_b, p_max};

    if (t_bar > 0.0) {
        const long long steps = std::max(1LL, static_cast<long long>(std::ceil(t_bar / grid.dt)));
        const double dt = t_bar / static_cast<double>(steps);

        std::vector<std::complex<double>> half_kinetic(n);
        for (int j = 0; j < n; ++j) {
            const double p = -p_max + j * dp;
            half_kinetic[j] = std::polar(1.0, -0.25 * p * p * dt);
        }
        // Branch 0 is free: the kinetic phases compose exactly, no transform.
        for (int j = 0; j < n; ++j)
            branch0.amplitudes[j] *= std::polar(1.0, -0.5 * branch0.momentum(j) *
                                                         branch0.momentum(j) * t_bar);

        // Branch 1 sees V = x + dE; dE only contributes a global phase.
        const double de_internal = params.delta_e / params.hbar2B;
        FftWorkspace fft(n);
        std::vector<std::complex<double>> potential(n);
        for (int k = 0; k < n; ++k) {
            const double x = (k < n / 2 ? k : k - n) * dx;
            potential[k] = std::polar(1.0, -(x + de_internal) * dt);
        }
        auto& buf = fft.buffer();
        buf = branch1.amplitudes;
        const double inv_n = 1.0 / n;
        for (long long s = 0; s < steps; ++s) {
            for (int j = 0; j < n; ++j) buf[j] *= half_kinetic[j];
            fft.to_position();
            for (int k = 0; k < n; ++k) buf[k] *= potential[k];
            fft.to_momentum();
            for (int j = 0; j < n; ++j) buf[j] *= half_kinetic[j] * inv_n;
        }
        branch1.amplitudes = buf;
    }

    check_boundary_mass(branch0);
    check_boundary_mass(branch1);
    return {std::move(branch0), std::move(branch1)};
}

std::vector<double> momentum_density(const BranchState& branch) {
    std::vector<double> density(branch.amplitudes.size());
    for (std::size_t j = 0; j < density.size(); ++j) density[j] = std::norm(branch.amplitudes[j]);
    return density;
}

double position_mean(const BranchState& branch) {
    const int n = static_cast<int>(branch.amplitudes.size());
    const double dp = branch.dp();
    const double dx = 2.0 * kPi / (n * dp);
    FftWorkspace fft(n);
    fft.buffer() = branch.amplitudes;
    fft.to_position();
    const auto& buf = fft.buffer();
    double mean = 0.0;
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
        const double w = std::norm(buf[k]);
        mean += ((k < n / 2 ? k : k - n) * dx) * w;
        total += w;
    }
    return mean / total;
}

double oracle_work_meas(const EngineParams& params, double t_bar, GridSpec grid) {
    if (t_bar == 0.0) return 0.0;
    auto [branch0, branch1] = propagate(params, t_bar, grid);
    return -params.pop_b * position_mean(branch1) * params.hbar2B;
}

double work_meas_path(WorkMeasPath path, const EngineParams& params, double t_bar,
                      const GridSpec& grid) {
    if (path == WorkMeasPath::closed_form) return work_meas({t_bar, 0.0}, params);
    return oracle_work_meas(params, t_bar, grid);
}

namespace {

// The sample stream is partitioned into fixed blocks. Block b draws from
// xoshiro256++ seeded with splitmix64(seed xor (b+1)*golden), so the stream
// is a pure function of (seed, b) and merging in block order is independent
// of how blocks were distributed over workers.
constexpr long long kMcBlock = 1LL << 16;

struct BlockSums {
    double w = 0.0;
    double w2 = 0.0;
    double h = 0.0;
    double h2 = 0.0;
    long long attempts = 0;
};

std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) {
    SplitMix64 sm{seed ^ ((block + 1) * 0x9e3779b97f4a7c15ull)};
    return sm.next();
}

BlockSums mc_block(const EngineParams& params, const OperatingPoint& pt, std::uint64_t seed,
                   long long block, long long count) {
    Xoshiro256pp rng(block_seed(seed, static_cast<std::uint64_t>(block)));
    NormalSampler normal(rng);
    BlockSums sums;
    for (long long k = 0; k < count; ++k) {
        const bool excited = rng.uniform01() < params.pop_b;
        double u = 0.5 * normal.next();  // branch density has sigma = 1/2
        if (excited) u -= pt.t_bar;
        if (u <= pt.u_prime) {
            ++sums.attempts;
            const double w = params.delta_e * ((excited ? 1.0 : 0.0) - params.pop_b);
            sums.w += w;
            sums.w2 += w * w;
        }
        const double p1 = conditional_prob(1, u, pt, params);
        const double h = -(xlogx(p1) + xlogx(1.0 - p1));
        sums.h += h;
        sums.h2 += h * h;
    }
    return sums;
}

McEstimate finish(double sum, double sum_sq, long long n, std::uint64_t seed) {
    const double mean = sum / static_cast<double>(n);
    const double var = std::max(0.0, (sum_sq - static_cast<double>(n) * mean * mean) /
                                         static_cast<double>(n - 1));
    return {mean, std::sqrt(var / static_cast<double>(n)), n, seed};
}

}  // namespace

McResult mc_cycles(const EngineParams& params, const OperatingPoint& pt, long long n,
                   std::uint64_t seed, Exec exec, int n_workers) {
    if (n < 1000) throw std::domain_error("mc_cycles: n must be >= 1000");
    if (!(pt.t_bar >= 0.0)) throw std::domain_error("mc_cycles: t_bar must be >= 0");
    const long long nblocks = (n + kMcBlock - 1) / kMcBlock;
    std::vector<BlockSums> partial(static_cast<std::size_t>(nblocks));

    if (exec == Exec::parallel) {
        const int workers = n_workers > 0 ? n_workers : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(workers)
        for (long long b = 0; b < nblocks; ++b) {
            const long long count = std::min(kMcBlock, n - b * kMcBlock);
            partial[static_cast<std::size_t>(b)] = mc_block(params, pt, seed, b, count);
        }
    } else {
        for (long long b = 0; b < nblocks; ++b) {
            const long long count = std::min(kMcBlock, n - b * kMcBlock);
            partial[static_cast<std::size_t>(b)] = mc_block(params, pt, seed, b, count);
        }
    }

    BlockSums total;
    for (const auto& p : partial) {  // fixed merge order
        total.w += p.w;
        total.w2 += p.w2;
        total.h += p.h;
        total.h2 += p.h2;
        total.attempts += p.attempts;
    }

    McResult result;
    result.w_out = finish(total.w, total.w2, n, seed);
    // Attempt indicator: the sum of squares equals the count of successes.
    result.attempt_fraction =
        finish(static_cast<double>(total.attempts), static_cast<double>(total.attempts), n, seed);
    // Plug-in information estimate: S(0) minus the sampled conditional entropy.
    const McEstimate h_est = finish(total.h, total.h2, n, seed);
    result.info_gain = {initial_entropy(params) - h_est.mean, h_est.std_error, n, seed};
    return result;
}

void write_marginals_csv(const std::string& path, const BranchState& branch0,
                         const BranchState& branch1, int precision) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("write_marginals_csv: cannot open " + path);
    std::fprintf(f, "u,density_0,density_1\n");
    const std::size_t n = branch0.amplitudes.size();
    for (std::size_t j = 0; j < n; ++j) {
        std::fprintf(f, "%.*g,%.*g,%.*g\n", precision, branch0.momentum(j), precision,
                     branch0.branch_weight * std::norm(branch0.amplitudes[j]), precision,
                     branch1.branch_weight * std::norm(branch1.amplitudes[j]));
    }
    std::fclose(f);
}

}  // namespace iesim
