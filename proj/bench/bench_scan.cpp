// Times the parallel engines against their serial reference counterparts.
// Run manually:  build/bench/bench_scan

#include "qes/sweep.hpp"
#include "qes/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double now_seconds() {
    using clk = std::chrono::steady_clock;
    return std::chrono::duration<double>(clk::now().time_since_epoch()).count();
}

template <typename F>
double time_run(F&& f) {
    const double t0 = now_seconds();
    f();
    return now_seconds() - t0;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i)
        v.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    return v;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both engines run single-threaded\n\n");
#endif

    using namespace qes;

    // Two-level family sweep: closed-form per cell, embarrassingly parallel.
    {
        const auto b2s = linspace(-2.0, 2.0, 160);
        const auto b3s = linspace(0.0, 1.5, 160);
        std::vector<QuadSweepRow> serial_rows, parallel_rows;
        const double ts = time_run([&] { serial_rows = sweep_quadratic(b2s, b3s, Exec::serial); });
        const double tp =
            time_run([&] { parallel_rows = sweep_quadratic(b2s, b3s, Exec::parallel); });
        std::printf("sweep_quadratic  %zu cells\n", serial_rows.size());
        std::printf("  serial    %8.3f s\n", ts);
        std::printf("  parallel  %8.3f s   speedup %.2fx\n", tp, ts / tp);
        bool same = serial_rows.size() == parallel_rows.size();
        for (size_t i = 0; same && i < serial_rows.size(); ++i)
            same = serial_rows[i].e_plus == parallel_rows[i].e_plus &&
                   serial_rows[i].e_minus == parallel_rows[i].e_minus;
        std::printf("  bit-identical results: %s\n\n", same ? "yes" : "NO");
    }

    // Spectrum scan: shooting from a seed grid, the expensive kernel.
    {
        SexticPotential pot{};
        pot.c = {Complex(0, std::sqrt(2.0)), Complex(-0.5, 0), Complex(0, 0), Complex(2, 0),
                 Complex(0, 0), Complex(0.5, 0)};
        ScanWindow win{0.0, 4.0, -0.5, 0.5};
        SpectrumScanOptions opt;
        opt.seeds_re = 12;
        opt.seeds_im = 3;

        const ComplexPoly v = pot.as_poly();
        std::vector<Complex> serial_es, parallel_es;
        opt.exec = Exec::serial;
        const double ts = time_run([&] { serial_es = spectrum_scan(v, win, opt); });
        opt.exec = Exec::parallel;
        const double tp = time_run([&] { parallel_es = spectrum_scan(v, win, opt); });
        std::printf("spectrum_scan  %dx%d seeds, %zu eigenvalues found\n", opt.seeds_re,
                    opt.seeds_im, serial_es.size());
        std::printf("  serial    %8.3f s\n", ts);
        std::printf("  parallel  %8.3f s   speedup %.2fx\n", tp, ts / tp);
        std::printf("  bit-identical results: %s\n", serial_es == parallel_es ? "yes" : "NO");
    }
    return 0;
}
