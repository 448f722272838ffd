// open_access.hpp
//
// Open-access equilibrium: the launch rate that puts next-period collision
// probability on the zero-profit isoquant, the scalar debris reduction Y(D)
// whose roots are the steady states, and steady-state classification.

#pragma once

#include <optional>
#include <vector>

#include "orbit/config.hpp"
#include "orbit/core.hpp"

namespace orbit {

enum class PayoffMode {
    kConstant,              // fixed pi, F, r; isoquant level pi/F - r
    kTimeVaryingCalibrated  // gamma-form level with growing payoffs and costs
};

struct Scenario {
    EconParams econ;
    PhysicalParams phys;
    PayoffMode mode = PayoffMode::kConstant;
    int start_year = 2020;
    StepOptions step_options;
    // When set, the time factors entering the calibrated target are pinned to
    // this period index (used for frozen-year Kessler region membership).
    std::optional<int> frozen_time;

    void validate() const;
};

// Isoquant level for the transition entered at period t (periods since
// start_year), given next-period satellite stock S_next. Constant mode
// ignores both arguments. May return +infinity (eta < 0 and S_next -> 0).
double target_level(const Scenario& sc, int t, double S_next);

struct LaunchSolve {
    double X = 0.0;
    double target = 0.0;  // isoquant level at the solution
    bool capped = false;  // x_upper bound binds
};

// Smallest X >= 0 with L(S'(X), D'(X)) equal to the target level; 0 inside
// the inaction region. The calibrated target depends on S'(X), making the
// equation simultaneous in X; L - target is strictly increasing in X, so it
// is solved as a single bracketed root find. Throws NumericsError when no
// finite launch rate reaches the target (excess return misconfiguration).
LaunchSolve equilibrium_launch_rate(const OrbitState& st, const Scenario& sc, int t = 0);

// Equilibrium satellite stock at debris level D on the steady-state
// isoquant, clamped at zero once debris alone pushes collision probability
// past the target. Closed form for the constant-mode log-linear L.
double equilibrium_satellites(double D, const Scenario& sc);

// Debris level at which equilibrium_satellites reaches zero (the scan scale
// for steady-state searches). For eta < 0 the stock never quite reaches
// zero; the scale is then the debris level on the isoquant through
// (S_hat(0), 0).
double debris_scale(const Scenario& sc);

// Scalar reduction of the steady-state system:
//   Y(D) = -delta D + G(S_hat(D), D) + m X_ss(S_hat(D), D).
// Roots of Y are the open-access steady states; sign of dY/dD gives their
// stability.
double reduction_Y(double D, const Scenario& sc);

struct SteadyStateRecord {
    double S_star = 0.0;
    double D_star = 0.0;
    double X_star = 0.0;
    bool stable = false;
    double y_prime = 0.0;
};

struct SteadyStateScan {
    int points = 400;          // log-spaced scan nodes
    double lo_factor = 1e-3;   // lower bound as a fraction of the debris scale
    double hi_factor = 1e3;    // upper bound as a multiple of the debris scale
};

// Scans Y over a log-spaced debris grid, brackets sign changes, root-finds
// each, and classifies stability by the sign of the central-difference
// derivative. Sorted by D_star; empty when every state diverges.
std::vector<SteadyStateRecord> find_steady_states(const Scenario& sc,
                                                  const SteadyStateScan& scan = {});

// Scenario with the calibrated time factors pinned to period t.
Scenario frozen_at(const Scenario& sc, int t);

// Scenario <-> flat config (keys named as the parameter fields, plus
// `mode`, `start_year`, `avoidance`, `turnover`).
Scenario scenario_from_config(const KeyValueConfig& cfg);
void scenario_to_config(const Scenario& sc, KeyValueConfig& cfg);

}  // namespace orbit
