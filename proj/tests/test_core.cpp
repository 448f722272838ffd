#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "orbit/config.hpp"
#include "orbit/core.hpp"

using namespace orbit;

namespace {

PhysicalParams table4_phys() {
    PhysicalParams p;
    p.alpha_ss = 2.73e-7;
    p.alpha_sd = 2.73e-7;
    p.alpha_dd = 2.78e-7;
    p.beta_ss = 1800.0;
    p.beta_sd = 333.0;
    p.beta_dd = 327.0;
    p.delta = 0.074;
    p.m = 0.013;
    p.mu = 0.15;
    p.kappa_ss = 0.99;
    p.kappa_sd = 0.95;
    return p;
}

PhysicalParams qualitative_phys() {
    PhysicalParams p;
    p.alpha_ss = 2e-4;
    p.alpha_sd = 2e-4;
    p.alpha_dd = 2e-4;
    p.beta_ss = 1.2;
    p.beta_sd = 1.5;
    p.beta_dd = 5.0;
    p.delta = 0.2;
    p.m = 0.1;
    return p;
}

}  // namespace

TEST_CASE("collision probability: empty orbit, avoidance-adjusted table rows") {
    const auto p = table4_phys();
    CHECK(collision_probability({0.0, 0.0}, p, false) == 0.0);
    CHECK(collision_probability({0.0, 0.0}, p, true) == 0.0);

    // shell traffic rows (2020 and 2006), table values rounded to 3 digits
    const double l2020 = collision_probability({158.0, 626.0}, p, true);
    CHECK(std::abs(l2020 - 8.97e-6) < 0.01 * 8.97e-6);
    const double l2006 = collision_probability({25.0, 211.0}, p, true);
    CHECK(std::abs(l2006 - 2.95e-6) < 0.01 * 2.95e-6);
}

TEST_CASE("collision probability: avoidance decomposition with zero kappas") {
    // with kappas = 0 the inclusion-exclusion form collapses to the
    // log-linear form exactly
    auto p = qualitative_phys();
    p.kappa_ss = 0.0;
    p.kappa_sd = 0.0;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 400.0);
    for (int k = 0; k < 200; ++k) {
        const OrbitState st{u(rng), u(rng)};
        const double a = collision_probability(st, p, true);
        const double b = collision_probability(st, p, false);
        CHECK(std::abs(a - b) < 1e-12);
    }
}

TEST_CASE("collision probability and fragment formation: monotone, bounded") {
    const auto p = qualitative_phys();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 500.0);
    std::uniform_real_distribution<double> bump(0.0, 100.0);
    for (int k = 0; k < 300; ++k) {
        const OrbitState a{u(rng), u(rng)};
        const OrbitState b{a.S + bump(rng), a.D + bump(rng)};
        for (bool avoid : {false, true}) {
            const double la = collision_probability(a, p, avoid);
            const double lb = collision_probability(b, p, avoid);
            CHECK(la >= 0.0);
            CHECK(la < 1.0);
            CHECK(lb >= la);
        }
        CHECK(fragment_formation(a, p) >= 0.0);
        CHECK(fragment_formation(b, p) >= fragment_formation(a, p));
    }
}

TEST_CASE("fragment formation: zero at origin and direct evaluation") {
    auto p = table4_phys();
    CHECK(fragment_formation({0.0, 0.0}, p) == 0.0);

    // G(0, 1000) with beta_dd = 327, alpha_dd = 2.78e-7:
    // 327 (1 - e^{-2.78e-4}) 1000, cross-checked by an independent
    // three-term sum
    p.alpha_dd = 2.78e-7;
    p.beta_dd = 327.0;
    const double g = fragment_formation({0.0, 1000.0}, p);
    const double term_ss = p.beta_ss * (1.0 - std::exp(-p.alpha_ss * 0.0)) * 0.0;
    const double term_sd = p.beta_sd * (1.0 - std::exp(-p.alpha_sd * 1000.0)) * 0.0;
    const double term_dd = p.beta_dd * (1.0 - std::exp(-p.alpha_dd * 1000.0)) * 1000.0;
    CHECK(g == doctest::Approx(term_ss + term_sd + term_dd).epsilon(1e-12));
    CHECK(g == doctest::Approx(90.8934).epsilon(1e-4));
}

TEST_CASE("fragment formation: analytic partials vs central differences") {
    const auto p = qualitative_phys();
    const OrbitState at{0.0, 137.0};
    // dG/dS at S = 0 equals beta_sd (1 - e^{-alpha_sd D}) + beta_ss * 0
    const double h = 1e-5;
    const double fd =
        (fragment_formation({h, at.D}, p) - fragment_formation({0.0, at.D}, p)) / h;
    CHECK(fragment_formation_dS(at, p) == doctest::Approx(fd).epsilon(1e-6));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(1.0, 300.0);
    for (int k = 0; k < 50; ++k) {
        const OrbitState st{u(rng), u(rng)};
        const double hs = 1e-4 * st.S;
        const double hd = 1e-4 * st.D;
        const double fds = (fragment_formation({st.S + hs, st.D}, p) -
                            fragment_formation({st.S - hs, st.D}, p)) /
                           (2.0 * hs);
        const double fdd = (fragment_formation({st.S, st.D + hd}, p) -
                            fragment_formation({st.S, st.D - hd}, p)) /
                           (2.0 * hd);
        CHECK(fragment_formation_dS(st, p) == doctest::Approx(fds).epsilon(1e-6));
        CHECK(fragment_formation_dD(st, p) == doctest::Approx(fdd).epsilon(1e-6));
        const double lds = (collision_probability({st.S + hs, st.D}, p, true) -
                            collision_probability({st.S - hs, st.D}, p, true)) /
                           (2.0 * hs);
        CHECK(collision_probability_dS(st, p, true) == doctest::Approx(lds).epsilon(1e-6));
    }
}

TEST_CASE("step: fixed point at origin, composition, launch debris increment") {
    const auto p = qualitative_phys();
    const OrbitState origin = step({0.0, 0.0}, 0.0, p);
    CHECK(origin.S == 0.0);
    CHECK(origin.D == 0.0);

    // composed from the collision and fragment oracles
    auto p4 = table4_phys();
    const OrbitState st{100.0, 500.0};
    const OrbitState next = step(st, 0.0, p4, {});
    const double L = collision_probability(st, p4, false);
    CHECK(next.S == doctest::Approx(100.0 * (1.0 - L)).epsilon(1e-14));
    CHECK(next.D ==
          doctest::Approx(500.0 * (1.0 - 0.074) + fragment_formation(st, p4)).epsilon(1e-14));

    // m = 0.013 launch debris: X = 10 adds exactly 0.13 fragments
    const OrbitState with_launch = step(st, 10.0, p4, {});
    CHECK(with_launch.D - next.D == doctest::Approx(0.13).epsilon(1e-12));
}

TEST_CASE("step: turnover flag with mu = 0 is bit-identical to turnover off") {
    auto p = qualitative_phys();
    p.mu = 0.0;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 400.0);
    for (int k = 0; k < 100; ++k) {
        const OrbitState st{u(rng), u(rng)};
        const OrbitState a = step(st, 3.0, p, {false, true});
        const OrbitState b = step(st, 3.0, p, {false, false});
        CHECK(a.S == b.S);
        CHECK(a.D == b.D);
    }
}

TEST_CASE("step: debris map strictly increasing in D at fixed S and X") {
    const auto p = qualitative_phys();
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 400.0);
    std::uniform_real_distribution<double> eps(1e-6, 50.0);
    for (int k = 0; k < 200; ++k) {
        const double S = u(rng);
        const double D = u(rng);
        const double D2 = D + eps(rng);
        const double X = u(rng) / 10.0;
        CHECK(step({S, D2}, X, p).D > step({S, D}, X, p).D);
    }
}

TEST_CASE("step: domain errors") {
    const auto p = qualitative_phys();
    CHECK_THROWS_AS(step({10.0, 10.0}, -1.0, p), DomainError);
    CHECK_THROWS_AS(collision_probability({-1.0, 0.0}, p, false), DomainError);
    CHECK_THROWS_AS(fragment_formation({0.0, -2.0}, p), DomainError);
}

TEST_CASE("qualitative display scale") {
    const auto p = qualitative_phys();
    const auto scale = qualitative_scale(p, 0.03);
    CHECK(collision_probability({scale.s_unit, 0.0}, p, false) == doctest::Approx(0.03));
    const double g_unit = fragment_formation({0.0, scale.d_unit}, p) / scale.d_unit;
    CHECK(g_unit == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("params round-trip through flat config") {
    KeyValueConfig cfg;
    const auto p = table4_phys();
    EconParams e;
    e.pi = 27.32;
    e.F = 119.16;
    e.r = 0.05;
    e.a = 0.03;
    e.b = 0.025;
    e.eta = -0.1;
    e.gamma0 = 3.35e-6;
    e.gamma1 = 2.22e-5;
    e.gamma2 = -2.67e-6;
    physical_params_to_config(p, cfg);
    econ_params_to_config(e, cfg);
    const auto text = cfg.serialize("round trip");
    const auto cfg2 = KeyValueConfig::parse(text);
    const auto p2 = physical_params_from_config(cfg2);
    const auto e2 = econ_params_from_config(cfg2);
    CHECK(p2.alpha_ss == p.alpha_ss);
    CHECK(p2.beta_dd == p.beta_dd);
    CHECK(p2.kappa_sd == p.kappa_sd);
    CHECK(e2.pi == e.pi);
    CHECK(e2.gamma2 == e.gamma2);
    CHECK(e2.eta == e.eta);
    CHECK(!e2.capped());
}

TEST_CASE("config validation errors") {
    CHECK_THROWS_AS(KeyValueConfig::parse("pi 27"), ConfigError);
    auto cfg = KeyValueConfig::parse("pi = 27\nF = 1\nr = abc");
    CHECK_THROWS_AS(cfg.get_number("r"), ConfigError);
    CHECK_THROWS_AS(cfg.get_number("missing"), ConfigError);
}
