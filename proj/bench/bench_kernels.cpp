// bench_kernels.cpp
//
// Times the serial reference implementations against the OpenMP kernels:
// one Bellman sweep, basin classification, and a Kessler-time sweep.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "orbit/phase.hpp"
#include "orbit/planner.hpp"
#include "orbit/reproduce.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main() {
#ifdef _OPENMP
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
#endif
    std::printf("kernel benchmark: serial vs %d threads\n", threads);

    const orbit::Scenario sc = orbit::repro::qualitative_scenario();
    const orbit::Grid2D grid = orbit::planner::default_grid(sc, 96, 96);

    // Bellman sweep
    {
        orbit::planner::SolveOptions opt;
        const orbit::ValueField seed = orbit::planner::finite_horizon_seed(grid, 40, sc, opt);
        orbit::ValueField out(grid);
        orbit::PolicyField policy(grid);
        const double cap = orbit::planner::launch_cap(sc, opt);
        std::int64_t clamps = 0;

        auto t0 = Clock::now();
        for (int k = 0; k < 5; ++k) {
            orbit::planner::bellman_sweep(seed, sc, cap, opt, out, policy, clamps, 1);
        }
        const double serial = seconds_since(t0) / 5;
        t0 = Clock::now();
        for (int k = 0; k < 5; ++k) {
            orbit::planner::bellman_sweep(seed, sc, cap, opt, out, policy, clamps, threads);
        }
        const double parallel = seconds_since(t0) / 5;
        std::printf("bellman_sweep %dx%d:      serial %8.3f ms   parallel %8.3f ms   speedup %.2fx\n",
                    grid.n_s, grid.n_d, serial * 1e3, parallel * 1e3, serial / parallel);
    }

    // basin classification
    {
        const auto states = orbit::find_steady_states(sc);
        const auto rule = orbit::phase::divergence_rule_for(sc, states, {0.0, 0.0});
        const orbit::OrbitState stable{states.front().S_star, states.front().D_star};
        const orbit::Grid2D bgrid = orbit::planner::default_grid(sc, 48, 48);

        auto t0 = Clock::now();
        const auto serial_map = orbit::phase::classify_basin(
            orbit::phase::Policy::open_access(), sc, bgrid, 2000, rule, stable, 1);
        const double serial = seconds_since(t0);
        t0 = Clock::now();
        const auto parallel_map = orbit::phase::classify_basin(
            orbit::phase::Policy::open_access(), sc, bgrid, 2000, rule, stable, threads);
        const double parallel = seconds_since(t0);
        std::printf("classify_basin %dx%d:     serial %8.3f ms   parallel %8.3f ms   speedup %.2fx\n",
                    bgrid.n_s, bgrid.n_d, serial * 1e3, parallel * 1e3, serial / parallel);
        if (serial_map.classes != parallel_map.classes) {
            std::printf("WARNING: serial and parallel basin maps differ\n");
            return 1;
        }
    }

    // calibrated Kessler-time sweep
    {
        const orbit::Scenario cal = orbit::repro::calibrated_scenario(0.03, 0.0, 326.0, 332.0);
        const std::vector<double> values{410.0, 440.0, 470.0, 500.0};
        orbit::phase::KesslerTimeOptions opt;
        opt.max_years = 40;

        opt.jobs = 1;
        auto t0 = Clock::now();
        const auto serial_pts = orbit::phase::sweep_kessler_times(
            cal, orbit::phase::SweepAxis::kBetaDD, values, orbit::repro::calibrated_init(), 2020,
            opt);
        const double serial = seconds_since(t0);
        opt.jobs = threads;
        t0 = Clock::now();
        const auto parallel_pts = orbit::phase::sweep_kessler_times(
            cal, orbit::phase::SweepAxis::kBetaDD, values, orbit::repro::calibrated_init(), 2020,
            opt);
        const double parallel = seconds_since(t0);
        std::printf("kessler sweep (4 pts):   serial %8.3f ms   parallel %8.3f ms   speedup %.2fx\n",
                    serial * 1e3, parallel * 1e3, serial / parallel);
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (serial_pts[i].entry_year != parallel_pts[i].entry_year) {
                std::printf("WARNING: sweep results differ at value %.0f\n", values[i]);
                return 1;
            }
        }
    }
    return 0;
}
