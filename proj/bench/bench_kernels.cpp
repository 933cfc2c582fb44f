// Serial vs OpenMP kernel comparison: the nodewise plastic relaxation sweep
// (one scalar root-find per node) and the elastic stencil update. Results of
// both paths are checked to be bitwise identical before timing.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "plastiflow/kernels.hpp"
#include "plastiflow/potential.hpp"

using namespace plastiflow;
using clock_type = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    // Warm up once, then report the best of `reps`.
    fn();
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = clock_type::now();
        fn();
        const auto t1 = clock_type::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled (serial build)\n");
#endif

    const Potential pot(YieldSurface::interval(-1.0, 1.0), 0.05, 1e3);
    std::mt19937_64 rng(9000);
    std::uniform_real_distribution<double> stress(-2.5, 2.5);

    std::printf("%-28s %10s %12s %12s %9s\n", "kernel", "n", "serial ms", "omp ms", "speedup");
    for (int n : {1 << 16, 1 << 19, 1 << 21}) {
        std::vector<double> base(static_cast<size_t>(n));
        for (auto& v : base) v = stress(rng);

        // Relaxation sweep: most nodes sit outside the admissible interval.
        std::vector<double> sig_s, sig_p, dp_s(base.size()), dp_p(base.size());
        auto run_serial = [&] {
            sig_s = base;
            kernels::relax_sweep_serial(sig_s, dp_s, pot, 2e-3, 1.0);
        };
        auto run_omp = [&] {
            sig_p = base;
            kernels::relax_sweep_omp(sig_p, dp_p, pot, 2e-3, 1.0);
        };
        run_serial();
        run_omp();
        if (std::memcmp(sig_s.data(), sig_p.data(), sig_s.size() * sizeof(double)) != 0) {
            std::printf("relax sweep: serial and parallel outputs differ!\n");
            return 1;
        }
        const double ms_s = time_ms(run_serial, 5);
        const double ms_p = time_ms(run_omp, 5);
        std::printf("%-28s %10d %12.3f %12.3f %8.2fx\n", "plastic relax sweep", n, ms_s, ms_p,
                    ms_s / ms_p);

        // Elastic stencil: derivative plus axpy.
        std::vector<double> der_s(base.size()), der_p(base.size()), out_s(base.size()),
            out_p(base.size());
        auto el_serial = [&] {
            kernels::derivative_serial(base, der_s, 1e-3);
            kernels::axpy_scaled_serial(base, der_s, 2e-3, out_s);
        };
        auto el_omp = [&] {
            kernels::derivative_omp(base, der_p, 1e-3);
            kernels::axpy_scaled_omp(base, der_p, 2e-3, out_p);
        };
        el_serial();
        el_omp();
        if (std::memcmp(out_s.data(), out_p.data(), out_s.size() * sizeof(double)) != 0) {
            std::printf("elastic stencil: serial and parallel outputs differ!\n");
            return 1;
        }
        const double el_ms_s = time_ms(el_serial, 9);
        const double el_ms_p = time_ms(el_omp, 9);
        std::printf("%-28s %10d %12.3f %12.3f %8.2fx\n", "elastic stencil", n, el_ms_s, el_ms_p,
                    el_ms_s / el_ms_p);
    }

    // Curvature sampling is the heaviest geometry loop.
    const auto hos = YieldSurface::hosford(3, 4.0);
    const double ms = time_ms([&] { (void)hos.estimate_curvature(20000, 7); }, 3);
    std::printf("%-28s %10d %12s %12.3f\n", "curvature sampling (omp)", 20000, "-", ms);
    return 0;
}
