#include "orbit/simple_model.hpp"

#include <algorithm>
#include <vector>

#include "orbit/rootfind.hpp"

namespace orbit {
namespace simple {

void SimpleParams::validate() const {
    if (!(pi > 0.0 && F > 0.0 && x_bar > 0.0)) throw DomainError("SimpleParams: pi, F, x_bar must be positive");
    if (!(r > 0.0)) throw DomainError("SimpleParams: r must be positive");
    if (!(sigma >= 0.0)) throw DomainError("SimpleParams: sigma must be nonnegative");
    if (!(eta > -1.0 && eta <= 0.0)) throw DomainError("SimpleParams: eta must lie in (-1, 0]");
}

SurvivalFn SurvivalFn::linear(double x_bar) {
    if (!(x_bar > 0.0)) throw DomainError("SurvivalFn::linear: x_bar must be positive");
    SurvivalFn s;
    s.x_bar = x_bar;
    s.is_linear = true;
    s.q = [x_bar](double x) { return std::max(0.0, 1.0 - x / x_bar); };
    s.q_prime = [x_bar](double x) { return x <= x_bar ? -1.0 / x_bar : 0.0; };
    return s;
}

SurvivalFn SurvivalFn::custom(std::function<double(double)> q, double x_bar,
                              std::function<double(double)> q_prime) {
    if (!(x_bar > 0.0)) throw DomainError("SurvivalFn::custom: x_bar must be positive");
    if (std::abs(q(0.0) - 1.0) > 1e-12) throw DomainError("SurvivalFn: q(0) must equal 1");
    if (std::abs(q(x_bar)) > 1e-12) throw DomainError("SurvivalFn: q(x_bar) must equal 0");
    double prev = q(0.0);
    for (int i = 1; i <= 64; ++i) {
        const double cur = q(x_bar * i / 64.0);
        if (cur > prev + 1e-12) throw DomainError("SurvivalFn: q must be nonincreasing");
        prev = cur;
    }
    SurvivalFn s;
    s.x_bar = x_bar;
    s.q = std::move(q);
    s.q_prime = std::move(q_prime);
    return s;
}

double g_next(double S, const SimpleParams& p, const SurvivalFn& q) {
    if (!(S >= 0.0)) throw DomainError("g_next: S must be nonnegative");
    return S + p.sigma * (1.0 - q(S)) * S;
}

double satellite_value(double S, const SimpleParams& p, const SurvivalFn& q) {
    if (!(S >= 0.0)) throw DomainError("satellite_value: S must be nonnegative");
    const double disc = 1.0 + p.r;
    const double qs = q(S);
    const double qg = q(g_next(S, p, q));
    return -p.F + p.pi * qs / disc + p.pi * qs * qg / (disc * disc);
}

double satellite_value_prime(double S, const SimpleParams& p, const SurvivalFn& q) {
    const double disc = 1.0 + p.r;
    if (q.q_prime) {
        const double g = g_next(S, p, q);
        const double qs = q(S);
        const double dq = q.q_prime(S);
        const double qg = q(g);
        const double dqg = q.q_prime(g);
        const double gprime = 1.0 + p.sigma * (1.0 - qs) - p.sigma * q.q_prime(S) * S;
        return p.pi / disc * (dq * (1.0 + qg / disc) + qs * dqg * gprime / disc);
    }
    const double h = std::max(1e-7, 1e-7 * q.x_bar);
    const double lo = std::max(0.0, S - h);
    return (satellite_value(S + h, p, q) - satellite_value(lo, p, q)) / (S + h - lo);
}

LaunchResult open_access_launch(const SimpleParams& p, const SurvivalFn& q) {
    p.validate();
    const double disc = 1.0 + p.r;
    const double entry_bound = p.pi / disc * (1.0 + 1.0 / disc);
    if (p.F > entry_bound * (1.0 + 1e-14)) {
        throw DomainError("open_access_launch: entry condition violated, no positive launch");
    }
    const double v_top = satellite_value(q.x_bar, p, q);
    if (v_top > 0.0) {
        return {q.x_bar, true};
    }
    const double s_hat = find_root_bracketed(
        [&](double s) { return satellite_value(s, p, q); }, 0.0, q.x_bar, 1e-12);
    return {s_hat, false};
}

double planner_launch(const SimpleParams& p, const SurvivalFn& q) {
    p.validate();
    const auto objective = [&](double s) { return s * satellite_value(s, p, q); };
    double best = maximize_scan_golden(objective, 0.0, q.x_bar, 513, 1e-10 * q.x_bar);

    // refine with the first-order condition V + S V' = 0 where it brackets;
    // the objective can be piecewise (q(g(S)) hits zero at S_K), so probe
    // each smooth piece separately.
    const double s_kink = kessler_threshold(p, q).S_K;
    const auto foc = [&](double s) {
        return satellite_value(s, p, q) + s * satellite_value_prime(s, p, q);
    };
    std::vector<std::pair<double, double>> pieces;
    if (s_kink > 1e-12 && s_kink < q.x_bar) {
        pieces.push_back({1e-12, s_kink - 1e-9});
        pieces.push_back({s_kink + 1e-9, q.x_bar - 1e-12});
    } else {
        pieces.push_back({1e-12, q.x_bar - 1e-12});
    }
    for (const auto& [lo, hi] : pieces) {
        if (!(hi > lo)) continue;
        const double flo = foc(lo);
        const double fhi = foc(hi);
        if ((flo > 0.0) != (fhi > 0.0)) {
            const double s = find_root_bracketed(foc, lo, hi, 1e-13 * q.x_bar);
            if (objective(s) > objective(best)) best = s;
        }
    }
    return best;
}

KesslerThreshold kessler_threshold(const SimpleParams& p, const SurvivalFn& q) {
    if (p.sigma == 0.0) {
        return {q.x_bar, true};
    }
    if (q.is_linear) {
        // g(S) = S (1 + sigma S / x_bar); cancellation-free closed form
        return {2.0 * q.x_bar / (1.0 + std::sqrt(1.0 + 4.0 * p.sigma)), false};
    }
    const auto f = [&](double s) { return g_next(s, p, q) - q.x_bar; };
    return {find_root_bracketed(f, 0.0, q.x_bar, 1e-14 * q.x_bar), false};
}

KesslerConditions kessler_conditions(const SimpleParams& p, const SurvivalFn& q) {
    if (!(p.sigma > 0.0)) throw DomainError("kessler_conditions: sigma must be positive");
    const auto [s_k, degenerate] = kessler_threshold(p, q);
    const double disc = 1.0 + p.r;
    KesslerConditions out;
    out.oa_bound = p.pi / disc * q(s_k);
    const double qp = q.q_prime ? q.q_prime(s_k)
                                : (q(s_k) - q(std::max(0.0, s_k - 1e-7 * q.x_bar))) / (1e-7 * q.x_bar);
    out.planner_bound = p.pi / disc * (q(s_k) + s_k * qp);
    out.oa_kessler = p.F <= out.oa_bound;
    out.planner_kessler = p.F <= out.planner_bound;
    return out;
}

double external_cost_curve(double S, const SimpleParams& p, const SurvivalFn& q) {
    const double disc = 1.0 + p.r;
    const double g = g_next(S, p, q);
    const double qs = q(S);
    const double h = 1e-7 * q.x_bar;
    const auto deriv = [&](double x) {
        if (q.q_prime) return q.q_prime(x);
        return (q(x) - q(std::max(0.0, x - h))) / h;  // one-sided, from below
    };
    const double gprime = 1.0 + p.sigma * (1.0 - qs) - p.sigma * deriv(S) * S;
    return -p.pi / disc * (deriv(S) * (1.0 + q(g) / disc) + qs * deriv(g) * gprime / disc);
}

EtaReport downward_demand_extension(const SimpleParams& p, const SurvivalFn& q) {
    if (!(p.eta > -1.0)) throw DomainError("downward_demand_extension: eta must exceed -1");
    EtaReport rep;
    // operating stock Z = q(S) S grows in S while q'(S) S + q(S) >= 0
    const auto zprime = [&](double s) {
        const double qp = q.q_prime ? q.q_prime(s) : (q(s + 1e-8) - q(s)) / 1e-8;
        return qp * s + q(s);
    };
    if (zprime(q.x_bar - 1e-12) >= 0.0) {
        rep.operating_monotone_bound = q.x_bar;
    } else {
        rep.operating_monotone_bound =
            find_root_bracketed(zprime, 0.0, q.x_bar - 1e-12, 1e-12 * q.x_bar);
    }
    const double s_k = kessler_threshold(p, q).S_K;
    const double disc = 1.0 + p.r;
    if (p.eta == 0.0) {
        rep.oa_kessler_eta = p.F <= p.pi / disc * q(s_k);
        rep.comparison_holds = false;  // equality case: no strict gap over the baseline
        return rep;
    }
    rep.oa_kessler_eta =
        p.F <= p.pi * (1.0 + p.eta) / disc * std::pow(s_k, p.eta) * std::pow(q(s_k), 1.0 + p.eta);
    rep.comparison_holds = std::pow(s_k * q(s_k), p.eta) > 1.0 / (1.0 + p.eta);
    return rep;
}

}  // namespace simple
}  // namespace orbit
