// reproduce.hpp
//
// The acceptance pipeline shared by the `reproduce` CLI subcommand and the
// acceptance test binary: scenario fixtures and one check per criterion,
// each returning pass/fail with a one-line detail.

#pragma once

#include <string>
#include <vector>

#include "orbit/open_access.hpp"
#include "orbit/phase.hpp"

namespace orbit {
namespace repro {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct Options {
    std::string data_dir = "data";
    int jobs = 0;  // 0: all hardware threads
    unsigned long long seed = 0;
    bool quick = false;  // thin the slowest sweeps (smoke use; not the acceptance gate)
};

// Constant-payoff scenario with two open-access steady states (the
// qualitative phase-diagram configuration).
Scenario qualitative_scenario();

// Calibrated scenario: documented parameter values, gamma-form equilibrium
// condition, avoidance and turnover on, 2020 start.
Scenario calibrated_scenario(double growth_a, double eta, double beta_dd, double beta_sd);

// 2020 initial condition for the calibrated shell.
OrbitState calibrated_init();

// A state that reaches the stable steady state in exactly one step: invert
// one period of physical dynamics from the launch ray into the steady
// state. X_ray is the launch executed in that single step.
OrbitState one_step_manifold_init(const Scenario& sc, const SteadyStateRecord& stable,
                                  double X_ray);

std::vector<CheckResult> run_all(const Options& opt);

}  // namespace repro
}  // namespace orbit
