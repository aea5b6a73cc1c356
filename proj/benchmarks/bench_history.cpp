// Timing harness for the two history hotspots: the convolution load
// (weighted snapshot sum) and the quadratic history functional. Each is
// measured in its serial reference form and its parallel form, plus the
// O(1) exponential recurrence for the load. Build and run:
//   cmake --build build --target bench_history && ./build/bench_history
#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bresse/fem.hpp"
#include "bresse/history.hpp"
#include "bresse/model.hpp"

namespace {

using bresse::Vec;

double checksum = 0.0;  // defeats dead-code elimination

template <typename F>
double best_of_ms(F&& fn, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void bench_case(std::size_t s, std::size_t steps) {
    const double dt = 1e-3;
    const bresse::Mesh mesh = bresse::build_mesh(s, 1.0);
    const bresse::FemMatrices fem = bresse::assemble(mesh);
    const bresse::Kernel g = bresse::Kernel::exponential(1.0, 3.0);

    bresse::History hist(g, dt, /*include_initial=*/false);
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Vec psi(mesh.n_nodes());
    for (std::size_t n = 0; n < steps; ++n) {
        for (double& v : psi) v = uni(rng);
        hist.append(psi);
    }
    const std::size_t n = hist.snapshots() - 1;

    const int reps = 5;
    const double load_serial = best_of_ms(
        [&] { checksum += bresse::convolution_load_serial(hist, fem.K, n, n)[1]; }, reps);
    const double load_parallel =
        best_of_ms([&] { checksum += bresse::convolution_load(hist, fem.K, n, n)[1]; }, reps);
    const double load_fast =
        best_of_ms([&] { checksum += hist.weighted_sum_fast(n, n)[1]; }, reps);
    const double func_serial = best_of_ms(
        [&] { checksum += bresse::history_functional_serial(hist, fem.K, psi, n); }, reps);
    const double func_parallel =
        best_of_ms([&] { checksum += bresse::history_functional(hist, fem.K, psi, n); }, reps);

    std::printf("s=%4zu steps=%6zu | load %9.3f ms serial %9.3f ms parallel (x%.2f) %9.5f ms "
                "recurrence | functional %9.3f ms serial %9.3f ms parallel (x%.2f)\n",
                s, steps, load_serial, load_parallel,
                load_parallel > 0 ? load_serial / load_parallel : 0.0, load_fast, func_serial,
                func_parallel, func_parallel > 0 ? func_serial / func_parallel : 0.0);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled (serial build)\n");
#endif
    bench_case(64, 2000);
    bench_case(64, 8000);
    bench_case(256, 8000);
    bench_case(512, 16000);
    std::printf("checksum %.6g\n", checksum);
    return 0;
}
