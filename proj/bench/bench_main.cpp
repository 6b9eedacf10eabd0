// Timing harness comparing the OpenMP-parallel kernels against the serial
// reference path (one thread, or the dedicated serial reduction).  Not part
// of the test suite: build the diraclab_bench target and run it by hand.
// DIRACLAB_THREADS caps the parallel runs.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "diraclab/family_chern.hpp"
#include "diraclab/heat1d.hpp"
#include "diraclab/index_engine.hpp"
#include "diraclab/parallel.hpp"
#include "diraclab/spectral_models.hpp"

using namespace diraclab;

namespace {

template <class F>
double time_ms(int reps, const F& f) {
    f();  // warm up
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) f();
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
               .count() /
           reps;
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-46s %9.2f ms %9.2f ms %7.2fx\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms);
}

// Time f at one thread and at the full count; report both.
template <class F>
void compare(const char* name, int tmax, int reps, const F& f) {
    par::set_threads(1);
    const double ms1 = time_ms(reps, f);
    par::set_threads(tmax);
    const double msn = time_ms(reps, f);
    report(name, ms1, msn);
}

}  // namespace

int main() {
    const int tmax = std::max(1, par::apply_thread_env());
    std::printf("parallel kernels at %d thread(s), serial reference at 1\n\n",
                tmax);
    std::printf("%-46s %12s %12s %8s\n", "kernel", "serial", "parallel",
                "speedup");

    {
        // Deterministic chunked reduction: the dedicated serial
        // implementation against the OpenMP one, same chunk layout.
        const std::size_t n = std::size_t{1} << 24;
        const auto term = [](std::size_t i) {
            const double x = 1e-6 * static_cast<double>(i);
            return std::exp(-x) * std::cos(x);
        };
        double serial_val = 0.0, parallel_val = 0.0;
        par::set_threads(1);
        const double ms1 =
            time_ms(1, [&] { serial_val = par::reduce_sum_serial(n, term); });
        par::set_threads(tmax);
        const double msn =
            time_ms(1, [&] { parallel_val = par::reduce_sum(n, term); });
        report("reduce_sum, 2^24 terms", ms1, msn);
        std::printf("    implementations bitwise equal: %s (sum %.17g)\n",
                    serial_val == parallel_val ? "yes" : "NO", parallel_val);
    }

    {
        // Chiral heat-trace sweep over a dense flat spectrum.
        const double pi = std::numbers::pi_v<double>;
        const ChiralSpectrum flat =
            make_flat_torus(2 * pi, 2 * pi, 0.0, 0.0, 70.0);
        std::vector<double> ts(400);
        for (std::size_t i = 0; i < ts.size(); ++i)
            ts[i] = 0.05 * std::pow(20.0, static_cast<double>(i) /
                                              (ts.size() - 1.0));
        compare("heat_trace_sweep, cutoff 70, 400 times", tmax, 3,
                [&] { (void)heat_trace_sweep(flat, ts, 1e-4); });
    }

    {
        // Half-line eigensystem oracle: root scan plus dense evaluation.
        const HalfLineCondition bc = HalfLineCondition::robin(-0.8);
        HalfLineEigensystem sys;
        compare("halfline_eigensystem, R=30, M=3000", tmax, 1,
                [&] { sys = halfline_eigensystem(bc, 30.0, 3000); });
        double sink = 0.0;
        compare("oracle_eval, 2000 diagonal points", tmax, 1, [&] {
            double acc = 0.0;
            for (int k = 0; k < 2000; ++k) {
                const double u = 0.0005 * k;
                acc += oracle_eval(sys, 0.05, u, u).value;
            }
            sink = acc;
        });
        std::printf("    oracle_eval checksum %.12g\n", sink);
    }

    {
        // Berry-phase plaquette sums for the two-band model.
        int c1 = 0;
        compare("chern_number, two-band n=96", tmax, 2, [&] {
            c1 = chern_number(two_band_lower_projectors(96, 1.0),
                              BaseGrid{96});
        });
        std::printf("    chern number %d\n", c1);
        const SpectralFamily fam = make_two_band_family(96, 1.0);
        compare("family_cylinder_index_bundle, n=96", tmax, 2, [&] {
            (void)family_cylinder_index_bundle(fam, 1.0,
                                               BoundaryCondition::APS,
                                               BoundaryCondition::APS);
        });
    }

    return 0;
}
