// core.hpp
//
// Orbital shell state, physical/economic parameters, and the one-period
// laws of motion: collision probability L(S,D), new-fragment formation
// G(S,D), and the state transition. All quantities are expected values;
// the model is deterministic.

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace orbit {

// Numerically stable 1 - exp(-x) for x >= 0. Arguments here are typically
// alpha*count ~ 1e-4, where the naive form loses precision.
inline double one_minus_exp_neg(double x) { return -std::expm1(-x); }

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// State of the shell: active satellites and debris fragments. Continuous
// reals; launches are treated as infinitesimal increments.
struct OrbitState {
    double S = 0.0;
    double D = 0.0;

    bool valid() const {
        return S >= 0.0 && D >= 0.0 && std::isfinite(S) && std::isfinite(D);
    }
};

inline void require_valid(const OrbitState& st, const char* where) {
    if (!st.valid()) {
        throw DomainError(std::string(where) + ": state components must be finite and nonnegative");
    }
}

struct PhysicalParams {
    double alpha_ss = 0.0;  // intrinsic satellite-satellite collision rate
    double alpha_sd = 0.0;  // intrinsic satellite-debris collision rate
    double alpha_dd = 0.0;  // intrinsic debris-debris collision rate
    double beta_ss = 0.0;   // fragments per satellite-satellite collision
    double beta_sd = 0.0;   // fragments per satellite-debris collision
    double beta_dd = 0.0;   // fragments per debris-debris collision
    double delta = 0.0;     // debris decay fraction per period, in [0,1]
    double m = 0.0;         // launch debris fragments per launched satellite
    double mu = 0.0;        // satellite turnover fraction per period, in [0,1)
    double kappa_ss = 0.0;  // fraction of S-S collisions avoided
    double kappa_sd = 0.0;  // fraction of S-D collisions avoided

    void validate() const;
};

struct EconParams {
    double pi = 0.0;      // per-period satellite payoff (factor productivity level)
    double F = 0.0;       // launch + build cost (cost level at t = 0)
    double r = 0.0;       // discount rate per period
    double a = 0.0;       // payoff growth rate per period
    double b = 0.0;       // cost growth rate per period
    double eta = 0.0;     // occupancy elasticity (<= 0 in calibrated runs)
    double gamma0 = 0.0;  // equilibrium adjustment coefficients
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double x_upper = std::numeric_limits<double>::infinity();  // launch cap, +inf if absent

    double excess_return() const { return pi / F - r; }
    bool capped() const { return std::isfinite(x_upper); }
    void validate() const;
};

struct StepOptions {
    bool avoidance = false;  // kappa-adjusted collision probability
    bool turnover = false;   // (1 - mu) retention of surviving satellites
};

// Collision probability per satellite. Without avoidance this is
// 1 - exp(-alpha_ss*S - alpha_sd*D); with avoidance the kappa-weighted
// inclusion-exclusion of the two pairwise collision probabilities.
double collision_probability(const OrbitState& st, const PhysicalParams& p, bool avoidance);

// Partial derivatives of the collision probability.
double collision_probability_dS(const OrbitState& st, const PhysicalParams& p, bool avoidance);
double collision_probability_dD(const OrbitState& st, const PhysicalParams& p, bool avoidance);

// Expected new fragments formed by collisions in one period.
double fragment_formation(const OrbitState& st, const PhysicalParams& p);

// Partial derivatives of the fragment formation function.
double fragment_formation_dS(const OrbitState& st, const PhysicalParams& p);
double fragment_formation_dD(const OrbitState& st, const PhysicalParams& p);

// One-period transition:
//   S' = S (1 - L) * retention + X,  retention = 1 - mu when turnover is on
//   D' = D (1 - delta) + G(S,D) + m X
OrbitState step(const OrbitState& st, double launch_rate, const PhysicalParams& p,
                const StepOptions& opt = {});

// Display-unit scales used by the paper's qualitative figures: the satellite
// count with L(s_unit, 0) = excess return, and the debris count with
// G(0, d_unit)/d_unit = 0.1. Optional normalization, not used by the core.
struct QualitativeScale {
    double s_unit = 0.0;
    double d_unit = 0.0;
};
QualitativeScale qualitative_scale(const PhysicalParams& p, double excess_return);

}  // namespace orbit
