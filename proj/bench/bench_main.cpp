// Wall-clock comparison of the serial reference kernels against the
// OpenMP-parallel ones, with a bitwise equality check on the results.

#include "iesim/model.hpp"
#include "iesim/optimize.hpp"
#include "iesim/oracle.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstring>

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

bool reports_equal(const iesim::CycleReport& a, const iesim::CycleReport& b) {
    return std::memcmp(&a, &b, sizeof a) == 0;
}

}  // namespace

int main() {
    const auto params = iesim::make_params(25.85, 300.0, 25.85);
    std::printf("threads available: %d\n\n", omp_get_max_threads());

    {
        const iesim::SweepRange t{0.05, 5.0, 160};
        const iesim::SweepRange u{-3.0, 1.0, 160};
        auto t0 = std::chrono::steady_clock::now();
        const auto serial = iesim::sweep(params, t, u, {}, iesim::Exec::serial);
        const double serial_ms = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        const auto parallel = iesim::sweep(params, t, u, {}, iesim::Exec::parallel);
        const double parallel_ms = ms_since(t0);
        bool identical = serial.cells.size() == parallel.cells.size();
        for (std::size_t i = 0; identical && i < serial.cells.size(); ++i)
            identical = reports_equal(serial.cells[i], parallel.cells[i]);
        std::printf("sweep %dx%d cycle reports\n", t.count, u.count);
        std::printf("  serial   %9.1f ms\n", serial_ms);
        std::printf("  parallel %9.1f ms   speedup %.2fx   identical: %s\n\n", parallel_ms,
                    serial_ms / parallel_ms, identical ? "yes" : "NO");
    }

    {
        const iesim::OperatingPoint pt{1.0, 0.0};
        const long long n = 8'000'000;
        auto t0 = std::chrono::steady_clock::now();
        const auto serial = iesim::mc_cycles(params, pt, n, 42, iesim::Exec::serial);
        const double serial_ms = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        const auto parallel = iesim::mc_cycles(params, pt, n, 42, iesim::Exec::parallel);
        const double parallel_ms = ms_since(t0);
        const bool identical = serial.w_out.mean == parallel.w_out.mean &&
                               serial.w_out.std_error == parallel.w_out.std_error &&
                               serial.info_gain.mean == parallel.info_gain.mean &&
                               serial.attempt_fraction.mean == parallel.attempt_fraction.mean;
        std::printf("monte carlo %lld cycles\n", n);
        std::printf("  serial   %9.1f ms\n", serial_ms);
        std::printf("  parallel %9.1f ms   speedup %.2fx   identical: %s\n\n", parallel_ms,
                    serial_ms / parallel_ms, identical ? "yes" : "NO");
    }

    {
        auto t0 = std::chrono::steady_clock::now();
        const auto w = iesim::oracle_work_meas(params, 1.0);
        std::printf("split-operator propagation to t_bar = 1: %.1f ms (W_meas %.6f meV)\n",
                    ms_since(t0), w);
    }
    return 0;
}
