#include "orbit/phase.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace orbit {
namespace phase {

Policy Policy::open_access() { return Policy{}; }

Policy Policy::from_field(const PolicyField& field) {
    Policy p;
    p.kind = Kind::kField;
    p.field = &field;
    return p;
}

Policy Policy::from_function(std::function<double(const OrbitState&, int)> fn) {
    Policy p;
    p.kind = Kind::kCustom;
    p.custom = std::move(fn);
    return p;
}

double Policy::launch(const OrbitState& st, int t, const Scenario& sc, double* target_out) const {
    switch (kind) {
        case Kind::kOpenAccess: {
            const LaunchSolve sol = equilibrium_launch_rate(st, sc, t);
            if (target_out) *target_out = sol.target;
            return sol.X;
        }
        case Kind::kField: {
            if (target_out) *target_out = std::numeric_limits<double>::quiet_NaN();
            return std::max(0.0, interpolate(*field, st.S, st.D));
        }
        case Kind::kCustom: {
            if (target_out) *target_out = std::numeric_limits<double>::quiet_NaN();
            return custom(st, t);
        }
    }
    return 0.0;
}

DivergenceRule divergence_rule_for(const Scenario& sc,
                                   const std::vector<SteadyStateRecord>& states,
                                   const OrbitState& init) {
    DivergenceRule rule;
    double stable_d = 0.0;
    double unstable_d = 0.0;
    for (const auto& s : states) {
        if (s.stable) stable_d = std::max(stable_d, s.D_star);
        else unstable_d = std::max(unstable_d, s.D_star);
    }
    if (stable_d > 0.0 || unstable_d > 0.0) {
        rule.threshold = std::max(10.0 * unstable_d, 100.0 * stable_d);
    } else {
        rule.threshold = 100.0 * std::max({debris_scale(sc), init.D, 1.0});
    }
    return rule;
}

Trajectory simulate(const Policy& policy, const OrbitState& init, int periods,
                    const Scenario& sc, const SimulateOptions& opt) {
    require_valid(init, "simulate");
    Trajectory traj;
    traj.points.reserve(std::min(periods + 1, 1 << 20));

    OrbitState st = init;
    int small_change_run = 0;
    int ball_run = 0;
    int diverge_run = 0;

    for (int k = 0; k < periods; ++k) {
        const int t = opt.start_period + k;
        double target = std::numeric_limits<double>::quiet_NaN();
        const double X = policy.launch(st, t, sc, &target);
        const double L = collision_probability(st, sc.phys, sc.step_options.avoidance);
        traj.points.push_back({t, X, st.S, st.D, L, target});

        const OrbitState next = step(st, X, sc.phys, sc.step_options);

        // divergence rule: big, growing debris with no launches, sustained
        if (opt.rule && opt.rule->threshold > 0.0) {
            if (next.D > opt.rule->threshold && next.D > st.D && X == 0.0) {
                if (++diverge_run >= opt.rule->persistence) {
                    st = next;
                    traj.points.push_back(
                        {t + 1, 0.0, st.S, st.D,
                         collision_probability(st, sc.phys, sc.step_options.avoidance),
                         std::numeric_limits<double>::quiet_NaN()});
                    traj.reason = Termination::kDiverged;
                    traj.diverged_at = t + 1;
                    return traj;
                }
            } else {
                diverge_run = 0;
            }
        }

        // convergence: relative state change below tolerance, sustained
        const double ds = std::abs(next.S - st.S) / std::max(1.0, std::abs(st.S));
        const double dd = std::abs(next.D - st.D) / std::max(1.0, std::abs(st.D));
        if (std::max(ds, dd) < opt.convergence_tol) {
            ++small_change_run;
        } else {
            small_change_run = 0;
        }

        // early stop in the target ball
        if (opt.ball_center) {
            const double rs = std::abs(next.S - opt.ball_center->S) /
                              std::max(1.0, opt.ball_center->S);
            const double rd = std::abs(next.D - opt.ball_center->D) /
                              std::max(1.0, opt.ball_center->D);
            if (std::max(rs, rd) <= opt.ball_radius) ++ball_run;
            else ball_run = 0;
        }

        st = next;
        if (small_change_run >= opt.convergence_runs ||
            (opt.ball_center && ball_run >= opt.ball_runs)) {
            traj.points.push_back(
                {t + 1, 0.0, st.S, st.D,
                 collision_probability(st, sc.phys, sc.step_options.avoidance),
                 std::numeric_limits<double>::quiet_NaN()});
            traj.reason = Termination::kConverged;
            return traj;
        }
    }
    traj.points.push_back({opt.start_period + periods, 0.0, st.S, st.D,
                           collision_probability(st, sc.phys, sc.step_options.avoidance),
                           std::numeric_limits<double>::quiet_NaN()});
    traj.reason = Termination::kHorizon;
    return traj;
}

std::size_t BasinMap::count(NodeClass c) const {
    return static_cast<std::size_t>(std::count(classes.begin(), classes.end(), c));
}

namespace {

NodeClass classify_node(const Policy& policy, const Scenario& sc, const OrbitState& init,
                        int horizon, const DivergenceRule& rule, const OrbitState& stable) {
    SimulateOptions opt;
    opt.rule = &rule;
    opt.ball_center = &stable;
    const Trajectory traj = simulate(policy, init, horizon, sc, opt);
    if (traj.reason == Termination::kDiverged) return NodeClass::kKessler;
    if (traj.reason == Termination::kConverged) {
        const auto& last = traj.points.back();
        const double rs = std::abs(last.S - stable.S) / std::max(1.0, stable.S);
        const double rd = std::abs(last.D - stable.D) / std::max(1.0, stable.D);
        if (std::max(rs, rd) <= 0.01) return NodeClass::kStableBasin;
        return NodeClass::kUndetermined;  // settled somewhere else
    }
    return NodeClass::kUndetermined;
}

}  // namespace

BasinMap classify_basin(const Policy& policy, const Scenario& sc, const Grid2D& grid,
                        int horizon, const DivergenceRule& rule, const OrbitState& stable,
                        int jobs) {
    grid.validate();
    BasinMap map;
    map.grid = grid;
    map.classes.assign(grid.nodes(), NodeClass::kUndetermined);
    map.horizon = horizon;
    map.rule = rule;

    const int n = static_cast<int>(grid.nodes());
#ifdef _OPENMP
    const int threads = jobs <= 0 ? omp_get_max_threads() : jobs;
#else
    const int threads = 1;
#endif
    if (threads == 1) {
        for (int k = 0; k < n; ++k) {
            const OrbitState init{grid.s_at(k % grid.n_s), grid.d_at(k / grid.n_s)};
            map.classes[k] = classify_node(policy, sc, init, horizon, rule, stable);
        }
    } else {
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
        for (int k = 0; k < n; ++k) {
            const OrbitState init{grid.s_at(k % grid.n_s), grid.d_at(k / grid.n_s)};
            map.classes[k] = classify_node(policy, sc, init, horizon, rule, stable);
        }
    }
    return map;
}

std::vector<Segment> zero_contour(const Field& f) {
    const Grid2D& g = f.grid;
    std::vector<Segment> segments;
    // crossing point on an edge between (xa, va) and (xb, vb)
    const auto cross = [](double xa, double xb, double va, double vb) {
        return xa + (xb - xa) * (va / (va - vb));
    };
    for (int j = 0; j + 1 < g.n_d; ++j) {
        for (int i = 0; i + 1 < g.n_s; ++i) {
            const double s0 = g.s_at(i), s1 = g.s_at(i + 1);
            const double d0 = g.d_at(j), d1 = g.d_at(j + 1);
            const double v00 = f.at(i, j), v10 = f.at(i + 1, j);
            const double v01 = f.at(i, j + 1), v11 = f.at(i + 1, j + 1);
            int mask = 0;
            if (v00 > 0.0) mask |= 1;
            if (v10 > 0.0) mask |= 2;
            if (v11 > 0.0) mask |= 4;
            if (v01 > 0.0) mask |= 8;
            if (mask == 0 || mask == 15) continue;

            // edge crossing coordinates (bottom, right, top, left)
            const double xb = cross(s0, s1, v00, v10);
            const double yr = cross(d0, d1, v10, v11);
            const double xt = cross(s0, s1, v01, v11);
            const double yl = cross(d0, d1, v00, v01);
            const auto add = [&](double a0, double b0, double a1, double b1) {
                segments.push_back({a0, b0, a1, b1});
            };
            switch (mask) {
                case 1: case 14: add(xb, d0, s0, yl); break;
                case 2: case 13: add(xb, d0, s1, yr); break;
                case 4: case 11: add(s1, yr, xt, d1); break;
                case 8: case 7: add(xt, d1, s0, yl); break;
                case 3: case 12: add(s0, yl, s1, yr); break;
                case 6: case 9: add(xb, d0, xt, d1); break;
                case 5: case 10: {
                    // saddle: orient by the cell-center sign
                    const double center = 0.25 * (v00 + v10 + v01 + v11);
                    const bool positive_center = center > 0.0;
                    if ((mask == 5) == positive_center) {
                        add(xb, d0, s1, yr);
                        add(xt, d1, s0, yl);
                    } else {
                        add(xb, d0, s0, yl);
                        add(s1, yr, xt, d1);
                    }
                    break;
                }
                default: break;
            }
        }
    }
    return segments;
}

NullclineSet nullclines(const Policy& policy, const Scenario& sc, const Grid2D& grid, double h) {
    grid.validate();
    if (!(h > 0.0)) throw DomainError("nullclines: h must be positive");
    NullclineSet out{Field(grid), Field(grid), {}, {}};
    for (int j = 0; j < grid.n_d; ++j) {
        for (int i = 0; i < grid.n_s; ++i) {
            const OrbitState st{grid.s_at(i), grid.d_at(j)};
            const double X = policy.launch(st, 0, sc);
            const OrbitState next = step(st, X, sc.phys, sc.step_options);
            out.ds.at(i, j) = (next.S - st.S) / h;
            out.dd.at(i, j) = (next.D - st.D) / h;
        }
    }
    out.satellite = zero_contour(out.ds);
    out.debris = zero_contour(out.dd);
    return out;
}

OvershootFlags detect_overshoot(const Trajectory& traj, const SteadyStateRecord& steady) {
    OvershootFlags flags;
    if (traj.reason != Termination::kConverged) return flags;
    flags.applicable = true;
    const double s_bar = steady.S_star * (1.0 + 1e-6);
    const double d_bar = steady.D_star * (1.0 + 1e-6);
    for (const auto& p : traj.points) {
        if (p.S > s_bar) flags.overshoot_S = true;
        if (p.D > d_bar) flags.overshoot_D = true;
    }
    return flags;
}

namespace {

// Is `st` inside the Kessler region of the scenario with economic time
// factors frozen at period t (or of the nonstationary scenario itself)?
bool in_kessler_region(const Scenario& sc, const OrbitState& st, int t,
                       const KesslerTimeOptions& opt) {
    Scenario region_sc = opt.nonstationary_region ? sc : frozen_at(sc, t);
    const auto states = find_steady_states(region_sc);
    const DivergenceRule rule = divergence_rule_for(region_sc, states, st);

    OrbitState stable_ss{0.0, 0.0};
    bool have_stable = false;
    for (const auto& s : states) {
        if (s.stable) {
            stable_ss = {s.S_star, s.D_star};
            have_stable = true;
        }
    }
    SimulateOptions sim;
    sim.rule = &rule;
    if (have_stable) sim.ball_center = &stable_ss;
    sim.start_period = opt.nonstationary_region ? t : 0;
    const Trajectory traj =
        simulate(Policy::open_access(), st, opt.membership_horizon, region_sc, sim);
    return traj.reason == Termination::kDiverged;
}

}  // namespace

KesslerTimeResult kessler_time(const Scenario& sc, const OrbitState& init, int start_year,
                               const KesslerTimeOptions& opt) {
    KesslerTimeResult res;
    OrbitState st = init;
    for (int t = 0; t <= opt.max_years; ++t) {
        const int year = start_year + t;
        if (in_kessler_region(sc, st, t, opt)) {
            res.entry_year = year;
            return res;
        }
        double target = std::numeric_limits<double>::quiet_NaN();
        const double X = Policy::open_access().launch(st, t, sc, &target);
        res.path.push_back({t, X, st.S, st.D,
                            collision_probability(st, sc.phys, sc.step_options.avoidance),
                            target});
        st = step(st, X, sc.phys, sc.step_options);
    }
    return res;
}

std::vector<SweepPoint> sweep_kessler_times(const Scenario& base, SweepAxis axis,
                                            const std::vector<double>& values,
                                            const OrbitState& init, int start_year,
                                            const KesslerTimeOptions& opt) {
    for (double v : values) {
        if (!std::isfinite(v)) throw DomainError("sweep_kessler_times: values must be finite");
    }
    if (!std::is_sorted(values.begin(), values.end())) {
        throw DomainError("sweep_kessler_times: values must be sorted");
    }
    std::vector<SweepPoint> out(values.size());
    const int n = static_cast<int>(values.size());
#ifdef _OPENMP
    const int threads = opt.jobs <= 0 ? omp_get_max_threads() : opt.jobs;
#else
    const int threads = 1;
#endif
    const auto run_one = [&](int k) {
        Scenario sc = base;
        if (axis == SweepAxis::kBetaDD) sc.phys.beta_dd = values[k];
        else sc.econ.a = values[k];
        KesslerTimeOptions one = opt;
        one.jobs = 1;
        out[k] = {values[k], kessler_time(sc, init, start_year, one).entry_year};
    };
    if (threads == 1) {
        for (int k = 0; k < n; ++k) run_one(k);
    } else {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (int k = 0; k < n; ++k) run_one(k);
    }
    return out;
}

}  // namespace phase
}  // namespace orbit
