#include "orbit/open_access.hpp"

#include <algorithm>
#include <cmath>

#include "orbit/rootfind.hpp"

namespace orbit {

void Scenario::validate() const {
    econ.validate();
    phys.validate();
    if (mode == PayoffMode::kConstant) {
        const double tau = econ.excess_return();
        if (!(tau > 0.0 && tau < 1.0)) {
            throw DomainError("Scenario: constant mode requires pi/F - r in (0,1)");
        }
    }
}

double target_level(const Scenario& sc, int t, double S_next) {
    if (sc.mode == PayoffMode::kConstant) {
        return sc.econ.excess_return();
    }
    const int tt = sc.frozen_time.value_or(t);
    const EconParams& e = sc.econ;
    // p_{t+1}(S) / F_{t+1} with p_t(S) = pi e^{at} (1+eta) S^eta, F_t = F e^{bt}
    double payoff_ratio;
    if (e.eta == 0.0) {
        payoff_ratio = e.pi / e.F * std::exp((e.a - e.b) * (tt + 1));
    } else if (S_next <= 0.0) {
        payoff_ratio = std::numeric_limits<double>::infinity();
    } else {
        payoff_ratio = e.pi / e.F * std::exp((e.a - e.b) * (tt + 1)) * (1.0 + e.eta) *
                       std::pow(S_next, e.eta);
    }
    const double cost_ratio = std::exp(-e.b);  // F_t / F_{t+1}
    return e.gamma0 + e.gamma1 * payoff_ratio + e.gamma2 * cost_ratio;
}

Scenario frozen_at(const Scenario& sc, int t) {
    Scenario out = sc;
    out.frozen_time = t;
    return out;
}

namespace {

// L(next(X)) - target(S'(X)); strictly increasing in X.
double launch_gap(const OrbitState& st, const Scenario& sc, int t, double X,
                  const OrbitState& base_next) {
    OrbitState next{base_next.S + X, base_next.D + sc.phys.m * X};
    const double L = collision_probability(next, sc.phys, sc.step_options.avoidance);
    return L - target_level(sc, t, next.S);
}

}  // namespace

LaunchSolve equilibrium_launch_rate(const OrbitState& st, const Scenario& sc, int t) {
    require_valid(st, "equilibrium_launch_rate");
    const OrbitState base = step(st, 0.0, sc.phys, sc.step_options);

    LaunchSolve out;
    const double gap0 = launch_gap(st, sc, t, 0.0, base);
    if (gap0 >= 0.0) {
        out.X = 0.0;
        out.target = target_level(sc, t, base.S);
        return out;  // inaction region
    }

    double X = 0.0;
    if (sc.mode == PayoffMode::kConstant && !sc.step_options.avoidance &&
        sc.econ.eta == 0.0) {
        // log-linear L inverts exactly: alpha_ss S' + alpha_sd D' = -log(1 - tau)
        const double tau = sc.econ.excess_return();
        const double need = -std::log1p(-tau) - sc.phys.alpha_ss * base.S -
                            sc.phys.alpha_sd * base.D;
        X = std::max(0.0, need / (sc.phys.alpha_ss + sc.phys.alpha_sd * sc.phys.m));
    } else {
        // expand an upper bracket, then solve the monotone equation
        double hi = std::max(1.0, st.S + st.D);
        bool bracketed = false;
        for (int k = 0; k < 60; ++k) {
            if (launch_gap(st, sc, t, hi, base) >= 0.0) {
                bracketed = true;
                break;
            }
            hi *= 2.0;
        }
        if (!bracketed) {
            throw NumericsError(
                "equilibrium_launch_rate: no launch rate reaches the target isoquant");
        }
        X = find_root_bracketed(
            [&](double x) { return launch_gap(st, sc, t, x, base); }, 0.0, hi,
            std::max(1e-10, 1e-12 * hi));
    }

    if (sc.econ.capped() && X > sc.econ.x_upper) {
        X = sc.econ.x_upper;
        out.capped = true;
    }
    out.X = X;
    out.target = target_level(sc, t, base.S + X);
    return out;
}

double equilibrium_satellites(double D, const Scenario& sc) {
    if (!(D >= 0.0)) throw DomainError("equilibrium_satellites: D must be nonnegative");
    const int t = sc.frozen_time.value_or(0);
    if (sc.mode == PayoffMode::kConstant && !sc.step_options.avoidance &&
        sc.econ.eta == 0.0) {
        const double tau = sc.econ.excess_return();
        return std::max(0.0, (-std::log1p(-tau) - sc.phys.alpha_sd * D) / sc.phys.alpha_ss);
    }
    const auto gap = [&](double S) {
        return collision_probability({S, D}, sc.phys, sc.step_options.avoidance) -
               target_level(sc, t, S);
    };
    if (gap(0.0) >= 0.0) return 0.0;
    double hi = 1.0;
    for (int k = 0; k < 80 && gap(hi) < 0.0; ++k) hi *= 2.0;
    if (gap(hi) < 0.0) {
        throw NumericsError("equilibrium_satellites: isoquant not reachable");
    }
    return find_root_bracketed(gap, 0.0, hi, 1e-12 * hi);
}

double debris_scale(const Scenario& sc) {
    const double s0 = equilibrium_satellites(0.0, sc);
    const double level =
        collision_probability({s0, 0.0}, sc.phys, sc.step_options.avoidance);
    const auto gap = [&](double D) {
        return collision_probability({0.0, D}, sc.phys, sc.step_options.avoidance) - level;
    };
    double hi = std::max(1.0, s0);
    for (int k = 0; k < 80 && gap(hi) < 0.0; ++k) hi *= 2.0;
    if (gap(hi) < 0.0) throw NumericsError("debris_scale: isoquant not reachable in debris");
    return find_root_bracketed(gap, 0.0, hi, 1e-12 * hi);
}

double reduction_Y(double D, const Scenario& sc) {
    const double S = equilibrium_satellites(D, sc);
    const OrbitState st{S, D};
    const double G = fragment_formation(st, sc.phys);
    double X = 0.0;
    if (S > 0.0) {
        const double L = collision_probability(st, sc.phys, sc.step_options.avoidance);
        const double retention = sc.step_options.turnover ? (1.0 - sc.phys.mu) : 1.0;
        X = S * (1.0 - (1.0 - L) * retention);  // steady-state replacement launches
    }
    return -sc.phys.delta * D + G + sc.phys.m * X;
}

Scenario scenario_from_config(const KeyValueConfig& cfg) {
    Scenario sc;
    sc.phys = physical_params_from_config(cfg);
    sc.econ = econ_params_from_config(cfg);
    const std::string mode = cfg.get_string_or("mode", "constant");
    if (mode == "constant") {
        sc.mode = PayoffMode::kConstant;
    } else if (mode == "time-varying-calibrated") {
        sc.mode = PayoffMode::kTimeVaryingCalibrated;
    } else {
        throw ConfigError("scenario: unknown mode `" + mode + "`");
    }
    sc.start_year = static_cast<int>(cfg.get_number_or("start_year", 2020));
    sc.step_options.avoidance = cfg.get_number_or("avoidance", 0) != 0.0;
    sc.step_options.turnover = cfg.get_number_or("turnover", 0) != 0.0;
    sc.validate();
    return sc;
}

void scenario_to_config(const Scenario& sc, KeyValueConfig& cfg) {
    physical_params_to_config(sc.phys, cfg);
    econ_params_to_config(sc.econ, cfg);
    cfg.set_string("mode", sc.mode == PayoffMode::kConstant ? "constant"
                                                            : "time-varying-calibrated");
    cfg.set_number("start_year", sc.start_year);
    cfg.set_number("avoidance", sc.step_options.avoidance ? 1 : 0);
    cfg.set_number("turnover", sc.step_options.turnover ? 1 : 0);
}

std::vector<SteadyStateRecord> find_steady_states(const Scenario& sc,
                                                  const SteadyStateScan& scan) {
    sc.validate();
    const double scale = debris_scale(sc);
    const double lo = scan.lo_factor * scale;
    const double hi = scan.hi_factor * scale;
    const double ratio = std::pow(hi / lo, 1.0 / (scan.points - 1));

    std::vector<SteadyStateRecord> out;
    double d_prev = lo;
    double y_prev = reduction_Y(d_prev, sc);
    for (int i = 1; i < scan.points; ++i) {
        const double d = lo * std::pow(ratio, i);
        const double y = reduction_Y(d, sc);
        if ((y_prev > 0.0) != (y > 0.0) || y == 0.0) {
            const double root = find_root_bracketed(
                [&](double dd) { return reduction_Y(dd, sc); }, d_prev, d, 1e-13 * scale);
            SteadyStateRecord rec;
            rec.D_star = root;
            rec.S_star = equilibrium_satellites(root, sc);
            const OrbitState st{rec.S_star, root};
            if (rec.S_star > 0.0) {
                const double L =
                    collision_probability(st, sc.phys, sc.step_options.avoidance);
                const double retention = sc.step_options.turnover ? (1.0 - sc.phys.mu) : 1.0;
                rec.X_star = rec.S_star * (1.0 - (1.0 - L) * retention);
            }
            const double h = std::max(1e-6 * root, 1e-9 * scale);
            rec.y_prime = (reduction_Y(root + h, sc) - reduction_Y(std::max(0.0, root - h), sc)) /
                          (root + h - std::max(0.0, root - h));
            rec.stable = rec.y_prime < 0.0;
            out.push_back(rec);
        }
        d_prev = d;
        y_prev = y;
    }
    std::sort(out.begin(), out.end(),
              [](const SteadyStateRecord& a, const SteadyStateRecord& b) {
                  return a.D_star < b.D_star;
              });
    return out;
}

}  // namespace orbit
