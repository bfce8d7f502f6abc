// Compares the OpenMP joint-spectrum solve against the serial reference and
// reports timings plus an equality check.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cbottle/quantum.hpp"

int main(int argc, char** argv) {
    cbottle::quantum::QuantumConfig cfg;
    if (argc > 1) cfg.grid_n = std::atoi(argv[1]);
    if (argc > 2) cfg.h = std::atof(argv[2]);

    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    const auto serial = cbottle::quantum::joint_spectrum_serial(cfg);
    const auto t1 = clock::now();
    const auto parallel = cbottle::quantum::joint_spectrum(cfg);
    const auto t2 = clock::now();

    const double serial_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    const double parallel_ms =
        std::chrono::duration<double, std::milli>(t2 - t1).count();

    bool identical = serial.size() == parallel.size();
    if (identical) {
        for (std::size_t i = 0; i < serial.size(); ++i) {
            if (serial[i].m != parallel[i].m || serial[i].n != parallel[i].n ||
                serial[i].energy != parallel[i].energy) {
                identical = false;
                break;
            }
        }
    }

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("grid_n=%d h=%g points=%zu\n", cfg.grid_n, cfg.h,
                serial.size());
    std::printf("serial   %.1f ms\n", serial_ms);
    std::printf("parallel %.1f ms (%d threads), speedup %.2fx\n", parallel_ms,
                threads, serial_ms / parallel_ms);
    std::printf("outputs identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
