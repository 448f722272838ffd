// simple_model.hpp
//
// Three-period launch model: law of motion g, satellite value V, open-access
// and planner launch levels, the runaway-growth threshold, and the
// downward-sloping-demand extension.

#pragma once

#include <functional>
#include <optional>

#include "orbit/core.hpp"

namespace orbit {
namespace simple {

struct SimpleParams {
    double pi = 0.0;     // per-period return
    double r = 0.0;      // discount rate
    double F = 0.0;      // launch cost
    double x_bar = 0.0;  // unusability threshold
    double sigma = 0.0;  // net fragments per collision
    double eta = 0.0;    // demand elasticity, in (-1, 0]

    void validate() const;
};

// Survival probability q with q(0) = 1, q nonincreasing, q(X) = 0 beyond
// x_bar. The canonical instance is linear; user-supplied q is probed against
// these invariants on construction. q_prime is the one-sided derivative from
// below (the linear form has a kink at x_bar).
struct SurvivalFn {
    std::function<double(double)> q;
    std::function<double(double)> q_prime;
    double x_bar = 0.0;
    bool is_linear = false;

    static SurvivalFn linear(double x_bar);
    static SurvivalFn custom(std::function<double(double)> q, double x_bar,
                             std::function<double(double)> q_prime = {});

    double operator()(double x) const { return q(x); }
};

// Objects in orbit one period after launching S: S + sigma (1 - q(S)) S.
double g_next(double S, const SimpleParams& p, const SurvivalFn& q);

// Expected present value of one satellite when S are launched:
// -F + pi q(S)/(1+r) + pi q(S) q(g(S))/(1+r)^2.
double satellite_value(double S, const SimpleParams& p, const SurvivalFn& q);

// Derivative of satellite_value (analytic when q_prime is available,
// central finite difference otherwise).
double satellite_value_prime(double S, const SimpleParams& p, const SurvivalFn& q);

struct LaunchResult {
    double S = 0.0;
    bool saturated = false;  // V(x_bar) > 0, solution capped at x_bar
};

// Open-access launch level: V(S_hat) = 0 by bracketed root finding on
// [0, x_bar]. Throws if the entry condition F <= pi/(1+r) (1 + 1/(1+r))
// fails (no positive launch is profitable).
LaunchResult open_access_launch(const SimpleParams& p, const SurvivalFn& q);

// Planner launch level: argmax of S V(S) on [0, x_bar]. Candidate roots of
// the first-order condition V + S V' = 0 are refined against a scan +
// golden-section fallback.
double planner_launch(const SimpleParams& p, const SurvivalFn& q);

struct KesslerThreshold {
    double S_K = 0.0;
    bool degenerate = false;  // sigma == 0 limit, threshold at x_bar
};

// Threshold S_K with g(S_K) = x_bar. Closed form for linear q:
// S_K = 2 x_bar / (1 + sqrt(1 + 4 sigma)).
KesslerThreshold kessler_threshold(const SimpleParams& p, const SurvivalFn& q);

struct KesslerConditions {
    bool oa_kessler = false;
    bool planner_kessler = false;
    double oa_bound = 0.0;       // cost bound pi/(1+r) q(S_K)
    double planner_bound = 0.0;  // cost bound pi/(1+r) [q(S_K) + S_K q'(S_K)]
};

// Occurrence conditions at the threshold: open access iff F <= oa_bound,
// planner iff F <= planner_bound; the planner condition implies the
// open-access one.
KesslerConditions kessler_conditions(const SimpleParams& p, const SurvivalFn& q);

struct EtaReport {
    double operating_monotone_bound = 0.0;  // Z' >= 0 iff S <= this (linear q: x_bar/2)
    bool oa_kessler_eta = false;            // F <= pi(1+eta)/(1+r) S_K^eta q(S_K)^(1+eta)
    bool comparison_holds = false;          // [S_K q(S_K)]^eta > 1/(1+eta)
};

// Downward-sloping-demand extension (eta in (-1, 0]).
EtaReport downward_demand_extension(const SimpleParams& p, const SurvivalFn& q);

// External cost of a marginal satellite at launch level S:
// -pi/(1+r) [ q'(S)(1 + q(g(S))/(1+r)) + q(S) q'(g(S)) g'(S)/(1+r) ],
// with one-sided derivatives from below at the survival kink.
double external_cost_curve(double S, const SimpleParams& p, const SurvivalFn& q);

}  // namespace simple
}  // namespace orbit
