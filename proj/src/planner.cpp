#include "orbit/planner.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "orbit/rootfind.hpp"

namespace orbit {
namespace planner {

namespace {

int resolve_jobs(int jobs) {
#ifdef _OPENMP
    if (jobs <= 0) return omp_get_max_threads();
    return jobs;
#else
    (void)jobs;
    return 1;
#endif
}

double bellman_objective(const OrbitState& st, double X, const Scenario& sc,
                         const ValueField& W, std::int64_t* clamps) {
    const OrbitState next = step(st, X, sc.phys, sc.step_options);
    return sc.econ.pi * st.S - sc.econ.F * X +
           interpolate(W, next.S, next.D, clamps) / (1.0 + sc.econ.r);
}

}  // namespace

double launch_cap(const Scenario& sc, const SolveOptions& opt) {
    if (opt.x_cap > 0.0) return opt.x_cap;
    const double x_oa0 = equilibrium_launch_rate({0.0, 0.0}, sc).X;
    double cap = 2.0 * x_oa0;
    if (sc.econ.capped()) cap = std::min(cap, sc.econ.x_upper);
    if (!(cap > 0.0)) cap = 1.0;
    return cap;
}

void bellman_sweep(const ValueField& in, const Scenario& sc, double x_cap,
                   const SolveOptions& opt, ValueField& out, PolicyField& policy,
                   std::int64_t& clamps, int jobs) {
    const Grid2D& g = in.grid;
    const int n = static_cast<int>(g.nodes());
    std::int64_t clamp_total = 0;
    jobs = resolve_jobs(jobs);

#pragma omp parallel for schedule(dynamic, 8) num_threads(jobs) reduction(+ : clamp_total)
    for (int k = 0; k < n; ++k) {
        const int i = k % g.n_s;
        const int j = k / g.n_s;
        const OrbitState st{g.s_at(i), g.d_at(j)};
        std::int64_t local_clamps = 0;
        const auto obj = [&](double x) {
            return bellman_objective(st, x, sc, in, &local_clamps);
        };
        const double x_best = maximize_scan_golden(obj, 0.0, x_cap, opt.scan_points, opt.x_tol);
        out.values[k] = obj(x_best);
        policy.values[k] = x_best;
        clamp_total += local_clamps;
    }
    clamps += clamp_total;
}

ValueField finite_horizon_seed(const Grid2D& grid, int T, const Scenario& sc,
                               const SolveOptions& opt) {
    grid.validate();
    if (T < 1) throw DomainError("finite_horizon_seed: horizon must be at least 1");
    Grid2D sparse{grid.s_max, grid.d_max, std::min(opt.seed_n_s, grid.n_s),
                  std::min(opt.seed_n_d, grid.n_d)};
    sparse.validate();

    const double x_cap = launch_cap(sc, opt);
    ValueField value(sparse);
    for (int j = 0; j < sparse.n_d; ++j) {
        for (int i = 0; i < sparse.n_s; ++i) {
            value.at(i, j) = sc.econ.pi * sparse.s_at(i);  // terminal payoff
        }
    }
    ValueField next_value(sparse);
    PolicyField scratch_policy(sparse);
    std::int64_t clamps = 0;
    for (int t = 0; t < T; ++t) {
        bellman_sweep(value, sc, x_cap, opt, next_value, scratch_policy, clamps, opt.jobs);
        std::swap(value, next_value);
    }

    // infill to the requested grid
    ValueField seed(grid);
    for (int j = 0; j < grid.n_d; ++j) {
        for (int i = 0; i < grid.n_s; ++i) {
            seed.at(i, j) = interpolate(value, grid.s_at(i), grid.d_at(j));
        }
    }
    return seed;
}

VfiResult value_iteration(const ValueField& seed, const Scenario& sc, const SolveOptions& opt) {
    const double mean_seed = field_mean_abs(seed);
    const double tol = opt.tol_fraction * std::max(mean_seed, 1e-300);
    const double x_cap = launch_cap(sc, opt);

    VfiResult res;
    res.tolerance = tol;
    res.W = seed;
    res.X = PolicyField(seed.grid);
    ValueField next(seed.grid);
    PolicyField policy(seed.grid);

    for (int it = 0; it < opt.max_iterations; ++it) {
        bellman_sweep(res.W, sc, x_cap, opt, next, policy, res.clamp_warnings, opt.jobs);
        const double diff = field_max_abs_diff(res.W, next);
        res.sup_diffs.push_back(diff);
        std::swap(res.W, next);
        res.X = policy;
        res.iterations = it + 1;
        res.final_diff = diff;
        if (diff < tol) return res;
    }
    throw NumericsError("value_iteration: no convergence after " +
                        std::to_string(opt.max_iterations) + " sweeps (last sup-change " +
                        std::to_string(res.final_diff) + ", tolerance " + std::to_string(tol) +
                        ")");
}

MecBreakdown external_cost_steady_state(const OrbitState& st, const Scenario& sc) {
    require_valid(st, "external_cost_steady_state");
    const PhysicalParams& p = sc.phys;
    const EconParams& e = sc.econ;
    const bool avoid = sc.step_options.avoidance;
    const double disc = 1.0 + e.r;
    const double tau = e.excess_return();

    const double L = collision_probability(st, p, avoid);
    const double L_S = collision_probability_dS(st, p, avoid);
    const double L_D = collision_probability_dD(st, p, avoid);
    const double G_S = fragment_formation_dS(st, p);
    const double G_D = fragment_formation_dD(st, p);

    MecBreakdown mec;
    mec.congestion_term = L_S * st.S;
    mec.pollution_hazard_term = (G_S + p.m * (L + st.S * L_S)) * L_D * st.S / disc +
                                (1.0 - 1.0 / disc) * p.m * L_D * st.S;
    mec.pollution_persistence_term =
        (1.0 - p.delta + G_D) / disc * (tau - (L + L_S * st.S));
    mec.xi_total =
        mec.congestion_term + mec.pollution_hazard_term + mec.pollution_persistence_term;

    mec.alpha1 = e.pi + (1.0 - L - st.S * L_S) * e.F;
    mec.alpha2 = st.S * L_D * e.F;
    mec.big_gamma1 = G_S - p.m * (1.0 - L - st.S * L_S);
    mec.big_gamma2 = 1.0 - p.delta + G_D + p.m * st.S * L_D;

    // stationary shadow values from the first-order conditions
    const double denom = e.r + p.delta - G_D - p.m * st.S * L_D;
    mec.lambda_D = denom > 0.0 ? e.F * st.S * L_D / denom
                               : std::numeric_limits<double>::infinity();
    mec.lambda_S = e.F + p.m * mec.lambda_D;

    // steady-state residual probe: X = L S and delta D = G + m X
    const double X = L * st.S;
    const double G = fragment_formation(st, p);
    const double resid = std::abs(p.delta * st.D - G - p.m * X);
    const double scale = std::max(1.0, std::abs(p.delta * st.D));
    mec.off_steady_state = resid > 1e-6 * scale;
    return mec;
}

MecBreakdown external_cost_general(const PathPoint& prev, const PathPoint& cur,
                                   const PathPoint& next, const Scenario& sc) {
    const PhysicalParams& p = sc.phys;
    const EconParams& e = sc.econ;
    const bool avoid = sc.step_options.avoidance;
    const double disc = 1.0 + e.r;

    // the path must satisfy the laws of motion
    const auto check = [&](const PathPoint& a, const PathPoint& b, const char* what) {
        const OrbitState implied = step(a.state, a.X, p, sc.step_options);
        const double tol_s = 1e-8 * std::max(1.0, std::abs(b.state.S));
        const double tol_d = 1e-8 * std::max(1.0, std::abs(b.state.D));
        if (std::abs(implied.S - b.state.S) > tol_s || std::abs(implied.D - b.state.D) > tol_d) {
            throw DomainError(std::string("external_cost_general: path inconsistent at ") + what);
        }
    };
    check(prev, cur, "t-1 -> t");
    check(cur, next, "t -> t+1");

    const OrbitState& s_t = cur.state;
    const OrbitState& s_n = next.state;

    const double L = collision_probability(s_t, p, avoid);
    const double L_S = collision_probability_dS(s_t, p, avoid);
    const double L_D = collision_probability_dD(s_t, p, avoid);
    const double G_S = fragment_formation_dS(s_t, p);
    const double G_D = fragment_formation_dD(s_t, p);

    const double Lp = collision_probability(s_n, p, avoid);
    const double Lp_S = collision_probability_dS(s_n, p, avoid);
    const double Lp_D = collision_probability_dD(s_n, p, avoid);
    const double Gp_S = fragment_formation_dS(s_n, p);
    const double Gp_D = fragment_formation_dD(s_n, p);

    const double alpha1_p = e.pi + (1.0 - Lp - s_n.S * Lp_S) * e.F;
    const double alpha2_p = s_n.S * Lp_D * e.F;
    const double alpha2 = s_t.S * L_D * e.F;
    const double gamma1_cap = G_S - p.m * (1.0 - L - s_t.S * L_S);
    const double gamma2_cap = 1.0 - p.delta + G_D + p.m * s_t.S * L_D;
    const double gamma1_cap_p = Gp_S - p.m * (1.0 - Lp - s_n.S * Lp_S);
    const double gamma2_cap_p = 1.0 - p.delta + Gp_D + p.m * s_n.S * Lp_D;
    const double gamma2_tilde_p = 1.0 - p.delta + Gp_D;  // persistence factor

    const double kappa1_p =
        disc * cur.gamma_S - (next.gamma_X - next.gamma_Xbar) * (1.0 - Lp - s_n.S * Lp_S);
    const double kappa2_p = disc * cur.gamma_D + s_n.S * Lp_D * (next.gamma_X - next.gamma_Xbar);
    const double kappa1 =
        disc * prev.gamma_S - (cur.gamma_X - cur.gamma_Xbar) * (1.0 - L - s_t.S * L_S);
    const double kappa2 = disc * prev.gamma_D + s_t.S * L_D * (cur.gamma_X - cur.gamma_Xbar);

    const double ratio = (gamma1_cap + p.m * gamma2_cap) / (gamma1_cap_p + p.m * gamma2_cap_p);

    MecBreakdown mec;
    mec.congestion_term = L_S * s_t.S + (L - Lp);
    mec.pollution_persistence_term = ratio * gamma2_tilde_p * (alpha1_p / disc - e.F) / e.F;
    mec.pollution_hazard_term =
        ratio * (gamma1_cap_p + p.m) * alpha2_p / (disc * e.F) + (1.0 - 1.0 / disc) * p.m * alpha2 / e.F;
    mec.corner_adjustment_term =
        (ratio * (gamma2_cap_p * (kappa1_p / disc + cur.gamma_X - cur.gamma_Xbar) -
                  gamma1_cap_p * kappa2_p / disc) -
         (p.m * kappa2 + kappa1) + disc * (prev.gamma_Xbar - prev.gamma_X)) /
        e.F;
    mec.xi_total = mec.congestion_term + mec.pollution_persistence_term +
                   mec.pollution_hazard_term + mec.corner_adjustment_term;

    mec.alpha1 = e.pi + (1.0 - L - s_t.S * L_S) * e.F;
    mec.alpha2 = alpha2;
    mec.big_gamma1 = gamma1_cap;
    mec.big_gamma2 = gamma2_cap;
    mec.kappa1 = kappa1;
    mec.kappa2 = kappa2;

    // shadow values: stationary closure at t+1, then one backward recursion
    const double denom_p = e.r + p.delta - Gp_D - p.m * s_n.S * Lp_D;
    const double lambda_D_next = denom_p > 0.0 ? e.F * s_n.S * Lp_D / denom_p
                                               : std::numeric_limits<double>::infinity();
    const double lambda_S_next = e.F + p.m * lambda_D_next - next.gamma_X + next.gamma_Xbar;
    mec.lambda_D =
        (lambda_D_next * (1.0 - p.delta + Gp_D) + lambda_S_next * s_n.S * Lp_D) / disc -
        cur.gamma_D;
    mec.lambda_S =
        (e.pi + lambda_S_next * (1.0 - Lp - s_n.S * Lp_S) - lambda_D_next * Gp_S) / disc +
        cur.gamma_S;

    const double X_ss = L * s_t.S;
    const double resid =
        std::abs(p.delta * s_t.D - fragment_formation(s_t, p) - p.m * X_ss);
    mec.off_steady_state = resid > 1e-6 * std::max(1.0, std::abs(p.delta * s_t.D));
    return mec;
}

OptimalityDiagnostic optimality_residual(const OrbitState& st, double X, const Scenario& sc,
                                         const ValueField* W) {
    const OrbitState nxt = step(st, X, sc.phys, sc.step_options);
    const double disc = 1.0 + sc.econ.r;
    OptimalityDiagnostic diag;
    diag.q_hat = 1.0 - collision_probability(nxt, sc.phys, sc.step_options.avoidance);
    if (W == nullptr) {
        diag.xi_hat = 0.0;
        diag.residual = sc.econ.F - sc.econ.pi / (disc - diag.q_hat);
        return diag;
    }
    const Grid2D& g = W->grid;
    const double hs = g.s_step();
    const double hd = g.d_step();
    const auto deriv = [&](double s, double d, bool along_s) {
        const double h = along_s ? hs : hd;
        const double max_c = along_s ? g.s_max : g.d_max;
        const double c = along_s ? s : d;
        const double c_lo = std::max(0.0, c - h);
        const double c_hi = std::min(max_c, c + h);
        const double f_hi = along_s ? interpolate(*W, c_hi, d) : interpolate(*W, s, c_hi);
        const double f_lo = along_s ? interpolate(*W, c_lo, d) : interpolate(*W, s, c_lo);
        return (f_hi - f_lo) / (c_hi - c_lo);
    };
    const double W_S = deriv(nxt.S, nxt.D, true);
    const double W_D = deriv(nxt.S, nxt.D, false);
    const double F_hat = (W_S + sc.phys.m * W_D) / disc;  // implied marginal launch value
    diag.xi_hat = sc.econ.pi / F_hat - disc + diag.q_hat;
    diag.residual = sc.econ.F - sc.econ.pi / (disc - diag.q_hat + diag.xi_hat);
    return diag;
}

Grid2D default_grid(const Scenario& sc, int n_s, int n_d) {
    const double s0 = equilibrium_satellites(0.0, sc);
    double d_top = debris_scale(sc);
    const auto states = find_steady_states(sc);
    if (!states.empty()) d_top = std::max(d_top, states.back().D_star);
    Grid2D g{3.0 * s0, 3.0 * d_top, n_s, n_d};
    g.validate();
    return g;
}

}  // namespace planner
}  // namespace orbit
