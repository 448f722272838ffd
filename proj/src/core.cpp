#include "orbit/core.hpp"

namespace orbit {

void PhysicalParams::validate() const {
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!positive(alpha_ss) || !positive(alpha_sd) || !positive(alpha_dd))
        throw DomainError("PhysicalParams: alphas must be strictly positive");
    if (beta_ss < 0.0 || beta_sd < 0.0 || beta_dd < 0.0)
        throw DomainError("PhysicalParams: betas must be nonnegative");
    if (!(delta >= 0.0 && delta <= 1.0)) throw DomainError("PhysicalParams: delta must lie in [0,1]");
    if (!(m >= 0.0)) throw DomainError("PhysicalParams: m must be nonnegative");
    if (!(mu >= 0.0 && mu < 1.0)) throw DomainError("PhysicalParams: mu must lie in [0,1)");
    if (!(kappa_ss >= 0.0 && kappa_ss <= 1.0 && kappa_sd >= 0.0 && kappa_sd <= 1.0))
        throw DomainError("PhysicalParams: kappas must lie in [0,1]");
}

void EconParams::validate() const {
    if (!(pi > 0.0)) throw DomainError("EconParams: pi must be positive");
    if (!(F > 0.0)) throw DomainError("EconParams: F must be positive");
    if (!(r > 0.0)) throw DomainError("EconParams: r must be positive");
    if (!(x_upper > 0.0)) throw DomainError("EconParams: x_upper must be positive when set");
}

double collision_probability(const OrbitState& st, const PhysicalParams& p, bool avoidance) {
    require_valid(st, "collision_probability");
    if (!avoidance) {
        return one_minus_exp_neg(p.alpha_ss * st.S + p.alpha_sd * st.D);
    }
    const double a = 1.0 - p.kappa_ss;
    const double b = 1.0 - p.kappa_sd;
    const double p_ss = one_minus_exp_neg(p.alpha_ss * st.S);
    const double p_sd = one_minus_exp_neg(p.alpha_sd * st.D);
    return a * p_ss + b * p_sd - a * b * p_ss * p_sd;
}

double collision_probability_dS(const OrbitState& st, const PhysicalParams& p, bool avoidance) {
    require_valid(st, "collision_probability_dS");
    const double e_ss = std::exp(-p.alpha_ss * st.S);
    if (!avoidance) {
        return p.alpha_ss * e_ss * std::exp(-p.alpha_sd * st.D);
    }
    const double a = 1.0 - p.kappa_ss;
    const double b = 1.0 - p.kappa_sd;
    const double p_sd = one_minus_exp_neg(p.alpha_sd * st.D);
    return a * p.alpha_ss * e_ss * (1.0 - b * p_sd);
}

double collision_probability_dD(const OrbitState& st, const PhysicalParams& p, bool avoidance) {
    require_valid(st, "collision_probability_dD");
    const double e_sd = std::exp(-p.alpha_sd * st.D);
    if (!avoidance) {
        return p.alpha_sd * std::exp(-p.alpha_ss * st.S) * e_sd;
    }
    const double a = 1.0 - p.kappa_ss;
    const double b = 1.0 - p.kappa_sd;
    const double p_ss = one_minus_exp_neg(p.alpha_ss * st.S);
    return b * p.alpha_sd * e_sd * (1.0 - a * p_ss);
}

double fragment_formation(const OrbitState& st, const PhysicalParams& p) {
    require_valid(st, "fragment_formation");
    const double p_ss = one_minus_exp_neg(p.alpha_ss * st.S);
    const double p_sd = one_minus_exp_neg(p.alpha_sd * st.D);
    const double p_dd = one_minus_exp_neg(p.alpha_dd * st.D);
    return p.beta_ss * p_ss * st.S + p.beta_sd * p_sd * st.S + p.beta_dd * p_dd * st.D;
}

double fragment_formation_dS(const OrbitState& st, const PhysicalParams& p) {
    require_valid(st, "fragment_formation_dS");
    const double e_ss = std::exp(-p.alpha_ss * st.S);
    const double p_sd = one_minus_exp_neg(p.alpha_sd * st.D);
    return p.beta_ss * (one_minus_exp_neg(p.alpha_ss * st.S) + st.S * p.alpha_ss * e_ss) +
           p.beta_sd * p_sd;
}

double fragment_formation_dD(const OrbitState& st, const PhysicalParams& p) {
    require_valid(st, "fragment_formation_dD");
    const double e_sd = std::exp(-p.alpha_sd * st.D);
    const double e_dd = std::exp(-p.alpha_dd * st.D);
    return p.beta_sd * st.S * p.alpha_sd * e_sd +
           p.beta_dd * (one_minus_exp_neg(p.alpha_dd * st.D) + st.D * p.alpha_dd * e_dd);
}

OrbitState step(const OrbitState& st, double launch_rate, const PhysicalParams& p,
                const StepOptions& opt) {
    require_valid(st, "step");
    if (!(launch_rate >= 0.0) || !std::isfinite(launch_rate)) {
        throw DomainError("step: launch rate must be finite and nonnegative");
    }
    const double L = collision_probability(st, p, opt.avoidance);
    const double retention = opt.turnover ? (1.0 - p.mu) : 1.0;
    OrbitState next;
    next.S = st.S * (1.0 - L) * retention + launch_rate;
    next.D = st.D * (1.0 - p.delta) + fragment_formation(st, p) + p.m * launch_rate;
    if (!next.valid()) {
        throw DomainError("step: transition produced an invalid state");
    }
    return next;
}

QualitativeScale qualitative_scale(const PhysicalParams& p, double excess_return) {
    if (!(excess_return > 0.0 && excess_return < 1.0))
        throw DomainError("qualitative_scale: excess return must lie in (0,1)");
    if (!(p.beta_dd > 0.1))
        throw DomainError("qualitative_scale: beta_dd must exceed the 0.1 display level");
    QualitativeScale q;
    q.s_unit = -std::log1p(-excess_return) / p.alpha_ss;
    q.d_unit = -std::log1p(-0.1 / p.beta_dd) / p.alpha_dd;
    return q;
}

}  // namespace orbit
