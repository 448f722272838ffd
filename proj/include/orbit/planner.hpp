// planner.hpp
//
// Fleet planner: finite-horizon seeding by backward induction, value
// function iteration on an interpolated grid, the external cost of a
// marginal satellite (steady-state and general path forms), and the
// interior optimality residual diagnostic.

#pragma once

#include <cstdint>
#include <vector>

#include "orbit/grid.hpp"
#include "orbit/open_access.hpp"

namespace orbit {
namespace planner {

struct SolveOptions {
    double tol_fraction = 0.01;  // convergence: sup-change < tol_fraction * mean(seed)
    int max_iterations = 2000;
    double x_tol = 1e-8;    // inner maximization tolerance in X
    int scan_points = 33;   // coarse scan for the inner maximization
    double x_cap = 0.0;     // <= 0: use min(2 * open-access X at (0,0), x_upper)
    int seed_n_s = 17;      // sparse seeding grid
    int seed_n_d = 17;
    int jobs = 1;           // worker threads for per-node maximizations
};

// Launch-rate search bound for the Bellman maximization.
double launch_cap(const Scenario& sc, const SolveOptions& opt);

// T-period optimal value by backward induction on a sparse sub-grid
// (terminal value pi * S), infilled to `grid` by bilinear interpolation.
ValueField finite_horizon_seed(const Grid2D& grid, int T, const Scenario& sc,
                               const SolveOptions& opt = {});

struct VfiResult {
    ValueField W;
    PolicyField X;
    int iterations = 0;
    double final_diff = 0.0;
    double tolerance = 0.0;
    std::vector<double> sup_diffs;  // sup-norm change per sweep
    std::int64_t clamp_warnings = 0;
};

// Iterates the Bellman operator with bilinear interpolation until the
// sup-norm change falls below tol_fraction * mean(|seed|). Throws
// NumericsError on non-convergence.
VfiResult value_iteration(const ValueField& seed, const Scenario& sc,
                          const SolveOptions& opt = {});

// One Bellman sweep (exposed for the serial/parallel equivalence tests and
// the kernel benchmark).
void bellman_sweep(const ValueField& in, const Scenario& sc, double x_cap,
                   const SolveOptions& opt, ValueField& out, PolicyField& policy,
                   std::int64_t& clamps, int jobs);

struct MecBreakdown {
    double xi_total = 0.0;  // rate units: addition to the effective discount rate
    double congestion_term = 0.0;
    double pollution_hazard_term = 0.0;
    double pollution_persistence_term = 0.0;
    double corner_adjustment_term = 0.0;  // general form; zero on interior paths
    // intermediates (currency units) and shadow values
    double alpha1 = 0.0, alpha2 = 0.0;
    double big_gamma1 = 0.0, big_gamma2 = 0.0;
    double kappa1 = 0.0, kappa2 = 0.0;
    double lambda_S = 0.0, lambda_D = 0.0;
    bool off_steady_state = false;  // input failed the steady-state residual probe
};

// Steady-state external cost (rate units):
//   xi = L_S S
//      + [ (G_S + m(L + S L_S)) L_D S ] / (1+r)  +  (1 - 1/(1+r)) m L_D S
//      + (1 - delta + G_D)/(1+r) * (pi/F - r - (L + L_S S)).
// The currency-unit form is xi * F.
MecBreakdown external_cost_steady_state(const OrbitState& st, const Scenario& sc);

// One period of an optimal path with its constraint multipliers; all
// multipliers are zero on interior stretches.
struct PathPoint {
    OrbitState state;
    double X = 0.0;
    double gamma_X = 0.0;     // multiplier on X >= 0
    double gamma_Xbar = 0.0;  // multiplier on X <= x_upper
    double gamma_S = 0.0;     // multiplier on S' >= 0
    double gamma_D = 0.0;     // multiplier on D' >= 0
};

// General external cost along a path (periods t-1, t, t+1), built from the
// alpha/Gamma/kappa intermediates of the planner's first-order conditions.
// Reduces exactly to external_cost_steady_state on stationary input. Throws
// DomainError when the path is inconsistent with the laws of motion.
MecBreakdown external_cost_general(const PathPoint& prev, const PathPoint& cur,
                                   const PathPoint& next, const Scenario& sc);

struct OptimalityDiagnostic {
    double residual = 0.0;  // F - pi / (1 + r - q_hat + xi_hat)
    double xi_hat = 0.0;    // implied external factor (>= 0 at planner optima)
    double q_hat = 0.0;     // next-period survival probability
};

// Interior first-order-condition residual at (state, X). When W is given,
// the external factor is extracted from the converged field's marginal
// values at the next state; with W null the open-access condition (xi = 0)
// is evaluated.
OptimalityDiagnostic optimality_residual(const OrbitState& st, double X, const Scenario& sc,
                                         const ValueField* W);

// Grid sized to contain the open-access steady states and basin boundary:
// [0, 3 * S_hat(0)] x [0, 3 * highest steady-state debris].
Grid2D default_grid(const Scenario& sc, int n_s = 64, int n_d = 64);

}  // namespace planner
}  // namespace orbit
