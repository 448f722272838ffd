// phase.hpp
//
// Dynamics under a launch policy: trajectory simulation, basin-of-attraction
// classification against the divergence rule, nullcline extraction by
// marching squares, overshoot detection, and Kessler-region entry times for
// calibrated scenarios.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "orbit/grid.hpp"
#include "orbit/open_access.hpp"

namespace orbit {
namespace phase {

// Launch policy evaluated along a trajectory.
struct Policy {
    enum class Kind { kOpenAccess, kField, kCustom };
    Kind kind = Kind::kOpenAccess;
    const PolicyField* field = nullptr;
    std::function<double(const OrbitState&, int)> custom;

    static Policy open_access();
    static Policy from_field(const PolicyField& field);
    static Policy from_function(std::function<double(const OrbitState&, int)> fn);

    double launch(const OrbitState& st, int t, const Scenario& sc,
                  double* target_out = nullptr) const;
};

enum class Termination { kHorizon, kConverged, kDiverged };

struct TrajectoryPoint {
    int t = 0;
    double X = 0.0;
    double S = 0.0;
    double D = 0.0;
    double L = 0.0;       // collision probability at (S_t, D_t)
    double target = 0.0;  // isoquant level used by the launch solve (open access)
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;
    Termination reason = Termination::kHorizon;
    int diverged_at = -1;  // period where the divergence rule fired
};

// Operationalization of the runaway-growth limit: debris above `threshold`,
// still growing, with zero launches, for `persistence` consecutive periods.
struct DivergenceRule {
    double threshold = 0.0;
    int persistence = 20;
};

// Threshold max(10 x unstable-state debris, 100 x stable-state debris),
// falling back to 100 x the larger of the scan scale and the initial debris
// when the scenario has no steady states.
DivergenceRule divergence_rule_for(const Scenario& sc,
                                   const std::vector<SteadyStateRecord>& states,
                                   const OrbitState& init);

struct SimulateOptions {
    double convergence_tol = 1e-10;  // relative per-period state change
    int convergence_runs = 10;       // consecutive small-change periods
    const DivergenceRule* rule = nullptr;
    // early stop once inside the 1% ball of this state for `ball_runs` periods
    const OrbitState* ball_center = nullptr;
    double ball_radius = 0.01;
    int ball_runs = 10;
    int start_period = 0;  // time index of the first simulated period
};

// Iterates launch-rate evaluation and the physical step for `periods`
// periods or until convergence / divergence.
Trajectory simulate(const Policy& policy, const OrbitState& init, int periods,
                    const Scenario& sc, const SimulateOptions& opt = {});

enum class NodeClass : std::uint8_t { kStableBasin = 0, kKessler = 1, kUndetermined = 2 };

struct BasinMap {
    Grid2D grid;
    std::vector<NodeClass> classes;  // index = j * n_s + i
    int horizon = 0;
    DivergenceRule rule;

    NodeClass at(int i, int j) const { return classes[grid.index(i, j)]; }
    std::size_t count(NodeClass c) const;
};

// Classifies every grid node by simulating under the policy: stable basin on
// convergence to `stable` (1% relative ball), Kessler on divergence-rule
// trigger, undetermined when the horizon runs out first. `jobs` worker
// threads; jobs == 1 runs the serial reference implementation.
BasinMap classify_basin(const Policy& policy, const Scenario& sc, const Grid2D& grid,
                        int horizon, const DivergenceRule& rule, const OrbitState& stable,
                        int jobs = 1);

struct Segment {
    double s0 = 0.0, d0 = 0.0, s1 = 0.0, d1 = 0.0;
};

struct NullclineSet {
    Field ds;  // (S' - S)/h per node
    Field dd;  // (D' - D)/h per node
    std::vector<Segment> satellite;  // zero contours of ds
    std::vector<Segment> debris;     // zero contours of dd
};

// Direction fields under the policy and their zero contours.
NullclineSet nullclines(const Policy& policy, const Scenario& sc, const Grid2D& grid,
                        double h = 10.0);

// Marching-squares zero contour of an arbitrary field (exposed for tests).
std::vector<Segment> zero_contour(const Field& f);

struct OvershootFlags {
    bool applicable = false;  // trajectory converged
    bool overshoot_S = false;
    bool overshoot_D = false;
};

// True flags when the trajectory exceeds the steady state by more than 1e-6
// relative in the respective variable before convergence.
OvershootFlags detect_overshoot(const Trajectory& traj, const SteadyStateRecord& steady);

struct KesslerTimeOptions {
    int max_years = 400;          // years simulated past start_year
    int membership_horizon = 500; // periods per frozen-year membership test
    bool nonstationary_region = false;  // region of the fully time-varying policy
    int jobs = 1;
};

constexpr int kBeyondHorizon = -1;

struct KesslerTimeResult {
    int entry_year = kBeyondHorizon;
    std::vector<TrajectoryPoint> path;  // simulated open-access path, one row per year
};

// First calendar year the simulated open-access path lies inside the Kessler
// region of the frozen current-year scenario (membership by forward
// simulation under the divergence rule), or kBeyondHorizon.
KesslerTimeResult kessler_time(const Scenario& sc, const OrbitState& init, int start_year,
                               const KesslerTimeOptions& opt = {});

enum class SweepAxis { kBetaDD, kGrowthA };

struct SweepPoint {
    double value = 0.0;
    int entry_year = kBeyondHorizon;
};

// Kessler times across an axis sweep; values must be sorted. Points run in
// parallel when jobs > 1, with identical results to the serial path.
std::vector<SweepPoint> sweep_kessler_times(const Scenario& base, SweepAxis axis,
                                            const std::vector<double>& values,
                                            const OrbitState& init, int start_year,
                                            const KesslerTimeOptions& opt = {});

}  // namespace phase
}  // namespace orbit
