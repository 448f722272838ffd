// orbit_cli.cpp
//
// Command-line entry point. Every run writes its outputs plus a
// manifest.json into --out; identical manifests produce byte-identical CSV
// bodies. Exit codes: 2 usage, 3 validation, 4 numerical non-convergence.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "orbit/calibration.hpp"
#include "orbit/csv.hpp"
#include "orbit/manifest.hpp"
#include "orbit/phase.hpp"
#include "orbit/planner.hpp"
#include "orbit/reproduce.hpp"
#include "orbit/rootfind.hpp"
#include "orbit/simple_model.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct CommonArgs {
    std::string scenario_path;
    std::string out_dir = "runs/out";
    int jobs = 0;
    unsigned long long seed = 0;
};

struct Overrides {
    double beta_dd = -1.0;
    double beta_sd = -1.0;
    double growth_a = -1.0;
    double eta = std::numeric_limits<double>::quiet_NaN();

    void apply(orbit::Scenario& sc, orbit::RunManifest& man) const {
        const auto rec = [&](const char* k, double v) {
            man.overrides.emplace_back(k, orbit::format_number(v));
        };
        if (beta_dd >= 0.0) {
            sc.phys.beta_dd = beta_dd;
            rec("beta_dd", beta_dd);
        }
        if (beta_sd >= 0.0) {
            sc.phys.beta_sd = beta_sd;
            rec("beta_sd", beta_sd);
        }
        if (growth_a >= 0.0) {
            sc.econ.a = growth_a;
            rec("a", growth_a);
        }
        if (!std::isnan(eta)) {
            sc.econ.eta = eta;
            rec("eta", eta);
        }
    }
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_scenario = true) {
    if (with_scenario) {
        cmd->add_option("--scenario,--config", args.scenario_path, "scenario config file")
            ->required();
    }
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--jobs", args.jobs, "worker threads (0: all cores)");
    cmd->add_option("--seed", args.seed, "seed for randomized sampling");
}

orbit::Scenario load_scenario(const CommonArgs& args, orbit::RunManifest& man) {
    const auto cfg = orbit::KeyValueConfig::load(args.scenario_path);
    man.scenario_hash = orbit::text_hash(cfg.serialize());
    return orbit::scenario_from_config(cfg);
}

orbit::Grid2D parse_grid(const std::string& spec, const orbit::Scenario& sc) {
    // "NSxND" on the default extents, or "NSxND:smax,dmax"
    orbit::Grid2D g = orbit::planner::default_grid(sc);
    if (spec.empty()) return g;
    const auto colon = spec.find(':');
    const std::string counts = spec.substr(0, colon);
    const auto x = counts.find('x');
    if (x == std::string::npos) throw orbit::ConfigError("grid spec must look like 64x64[:smax,dmax]");
    g.n_s = std::stoi(counts.substr(0, x));
    g.n_d = std::stoi(counts.substr(x + 1));
    if (colon != std::string::npos) {
        const std::string extents = spec.substr(colon + 1);
        const auto comma = extents.find(',');
        if (comma == std::string::npos) throw orbit::ConfigError("grid extents must be smax,dmax");
        g.s_max = std::stod(extents.substr(0, comma));
        g.d_max = std::stod(extents.substr(comma + 1));
    }
    g.validate();
    return g;
}

orbit::OrbitState parse_state(const std::string& spec) {
    const auto comma = spec.find(',');
    if (comma == std::string::npos) throw orbit::ConfigError("state must be S,D");
    return {std::stod(spec.substr(0, comma)), std::stod(spec.substr(comma + 1))};
}

void finish(orbit::RunManifest& man, const CommonArgs& args,
            std::chrono::steady_clock::time_point t0) {
    man.jobs = args.jobs;
    man.seed = args.seed;
    man.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    man.write(args.out_dir + "/manifest.json");
}

void write_json(const std::string& path, const ordered_json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

void write_matrix_csv(const std::string& path, const orbit::Field& f) {
    std::vector<std::string> header{"D\\S"};
    for (int i = 0; i < f.grid.n_s; ++i) header.push_back(orbit::format_cell(f.grid.s_at(i)));
    orbit::CsvWriter csv(path, header);
    for (int j = 0; j < f.grid.n_d; ++j) {
        std::vector<double> row{f.grid.d_at(j)};
        for (int i = 0; i < f.grid.n_s; ++i) row.push_back(f.at(i, j));
        csv.row(row);
    }
}

int cmd_simple_model(const CommonArgs& args) {
    const auto t0 = std::chrono::steady_clock::now();
    orbit::RunManifest man;
    man.subcommand = "simple-model";
    const auto cfg = orbit::KeyValueConfig::load(args.scenario_path);
    man.scenario_hash = orbit::text_hash(cfg.serialize());

    orbit::simple::SimpleParams p;
    p.pi = cfg.get_number("pi");
    p.r = cfg.get_number("r");
    p.F = cfg.get_number("F");
    p.x_bar = cfg.get_number("x_bar");
    p.sigma = cfg.get_number("sigma");
    p.eta = cfg.get_number_or("eta", 0.0);
    p.validate();
    const auto q = orbit::simple::SurvivalFn::linear(p.x_bar);

    const auto oa = orbit::simple::open_access_launch(p, q);
    const double s_star = orbit::simple::planner_launch(p, q);
    const auto thr = orbit::simple::kessler_threshold(p, q);
    const auto cond = orbit::simple::kessler_conditions(p, q);
    const auto eta_rep = orbit::simple::downward_demand_extension(p, q);

    ordered_json rep;
    rep["S_hat"] = oa.S;
    rep["S_hat_saturated"] = oa.saturated;
    rep["S_star"] = s_star;
    rep["S_K"] = thr.S_K;
    rep["S_K_degenerate"] = thr.degenerate;
    rep["oa_kessler"] = cond.oa_kessler;
    rep["planner_kessler"] = cond.planner_kessler;
    rep["oa_bound"] = cond.oa_bound;
    rep["planner_bound"] = cond.planner_bound;
    rep["eta_report"] = {{"operating_monotone_bound", eta_rep.operating_monotone_bound},
                         {"oa_kessler_eta", eta_rep.oa_kessler_eta},
                         {"comparison_holds", eta_rep.comparison_holds}};
    write_json(args.out_dir + "/report.json", rep);

    // Fig-1 style curves, with a gap row at the survival kink where the
    // external-cost curve is discontinuous
    orbit::CsvWriter csv(args.out_dir + "/curves.csv", {"S", "V", "SV", "EC"});
    const int n = 200;
    bool gap_emitted = thr.degenerate;
    for (int i = 0; i <= n; ++i) {
        const double s = p.x_bar * i / n;
        if (!gap_emitted && s > thr.S_K) {
            const double v = orbit::simple::satellite_value(thr.S_K, p, q);
            csv.row_raw({orbit::format_cell(thr.S_K), orbit::format_cell(v),
                         orbit::format_cell(thr.S_K * v), ""});
            gap_emitted = true;
        }
        const double v = orbit::simple::satellite_value(s, p, q);
        csv.row({s, v, s * v, orbit::simple::external_cost_curve(s, p, q)});
    }
    man.extra.emplace_back("curve_points", std::to_string(n + 1));
    finish(man, args, t0);
    std::cout << "simple-model: S_hat=" << oa.S << " S_star=" << s_star << " S_K=" << thr.S_K
              << " oa_kessler=" << cond.oa_kessler << " planner_kessler=" << cond.planner_kessler
              << "\n";
    return 0;
}

int cmd_oa_simulate(const CommonArgs& args, const std::string& init_spec, int periods) {
    const auto t0 = std::chrono::steady_clock::now();
    orbit::RunManifest man;
    man.subcommand = "oa-simulate";
    const auto sc = load_scenario(args, man);
    const auto init = parse_state(init_spec);
    const auto traj =
        orbit::phase::simulate(orbit::phase::Policy::open_access(), init, periods, sc, {});

    orbit::CsvWriter csv(args.out_dir + "/trajectory.csv", {"t", "X", "S", "D", "L", "target"});
    for (const auto& pt : traj.points) {
        csv.row({static_cast<double>(pt.t), pt.X, pt.S, pt.D, pt.L, pt.target});
    }
    man.extra.emplace_back("init", init_spec);
    man.extra.emplace_back("periods", std::to_string(periods));
    man.extra.emplace_back("termination", traj.reason == orbit::phase::Termination::kConverged
                                              ? "converged"
                                              : traj.reason == orbit::phase::Termination::kDiverged
                                                    ? "diverged"
                                                    : "horizon");
    finish(man, args, t0);
    std::cout << "oa-simulate: " << traj.points.size() << " rows, termination "
              << man.extra.back().second << "\n";
    return 0;
}

int cmd_oa_steady_states(const CommonArgs& args) {
    const auto t0 = std::chrono::steady_clock::now();
    orbit::RunManifest man;
    man.subcommand = "oa-steady-states";
    const auto sc = load_scenario(args, man);
    const auto states = orbit::find_steady_states(sc);
    ordered_json out = ordered_json::array();
    for (const auto& s : states) {
        out.push_back({{"S_star", s.S_star},
                       {"D_star", s.D_star},
                       {"X_star", s.X_star},
                       {"stable", s.stable},
                       {"y_prime", s.y_prime}});
    }
    write_json(args.out_dir + "/steady_states.json", out);
    finish(man, args, t0);
    std::cout << "oa-steady-states: " << states.size() << " steady state(s)\n";
    return 0;
}

int cmd_planner_solve(const CommonArgs& args, const std::string& grid_spec, int horizon) {
    const auto t0 = std::chrono::steady_clock::now();
    orbit::RunManifest man;
    man.subcommand = "planner-solve";
    const auto sc = load_scenario(args, man);
    const auto grid = parse_grid(grid_spec, sc);
    orbit::planner::SolveOptions opt;
    opt.jobs = args.jobs;
    const auto seed = orbit::planner::finite_horizon_seed(grid, horizon, sc, opt);
    const auto res = orbit::planner::value_iteration(seed, sc, opt);

    write_matrix_csv(args.out_dir + "/value.csv", res.W);
    write_matrix_csv(args.out_dir + "/policy.csv", res.X);
    ordered_json rep;
    rep["iterations"] = res.iterations;
    rep["final_sup_change"] = res.final_diff;
    rep["tolerance"] = res.tolerance;
    rep["clamp_warnings"] = res.clamp_warnings;
    write_json(args.out_dir + "/convergence.json", rep);
    man.extra.emplace_back("grid", std::to_string(grid.n_s) + "x" + std::to_string(grid.n_d));
    man.extra.emplace_back("horizon", std::to_string(horizon));
    finish(man, args, t0);
    std::cout << "planner-solve: converged in " << res.iterations << " sweeps (sup-change "
              << res.final_diff << ")\n";
    return 0;
}

int cmd_mec(const CommonArgs& args, const std::string& at_spec) {
    const auto t0 = std::chrono::steady_clock::now();
    orbit::RunManifest man;
    man.subcommand = "mec";
    const auto sc = load_scenario(args, man);
    const auto st = parse_state(at_spec);
    const auto mec = orbit::planner::external_cost_steady_state(st, sc);
    ordered_json out;
    out["xi_total"] = mec.xi_total;
    out["congestion_term"] = mec.congestion_term;
    out["pollution_hazard_term"] = mec.pollution_hazard_term;
    out["pollution_persistence_term"] = mec.pollution_persistence_term;
    out["alpha1"] = mec.alpha1;
    out["alpha2"] = mec.alpha2;
    out["Gamma1"] = mec.big_gamma1;
    out["Gamma2"] = mec.big_gamma2;
    out["lambda_S"] = mec.lambda_S;
    out["lambda_D"] = mec.lambda_D;
    out["off_steady_state_diagnostic"] = mec.off_steady_state;
    out["units"] = "rate (multiply by F for currency)";
    write_json(args.out_dir + "/mec.json", out);
    man.extra.emplace_back("at", at_spec);
    finish(man, args, t0);
    std::cout << "mec: xi_total=" << mec.xi_total
              << (mec.off_steady_state ? " (off-steady-state diagnostic)" : "") << "\n";
    return 0;
}

int cmd_basin(const CommonArgs& args, const std::string& grid_spec, int horizon,
              const std::string& policy_kind) {
    const auto t0 = std::chrono::steady_clock::now();
    orbit::RunManifest man;
    man.subcommand = "basin";
    const auto sc = load_scenario(args, man);
    const auto grid = parse_grid(grid_spec, sc);

    const auto states = orbit::find_steady_states(sc);
    orbit::OrbitState stable{0.0, 0.0};
    for (const auto& s : states) {
        if (s.stable) stable = {s.S_star, s.D_star};
    }
    const auto rule = orbit::phase::divergence_rule_for(sc, states, {0.0, 0.0});

    orbit::PolicyField planner_policy;
    orbit::phase::Policy policy = orbit::phase::Policy::open_access();
    if (policy_kind == "planner") {
        orbit::planner::SolveOptions opt;
        opt.jobs = args.jobs;
        const auto seed = orbit::planner::finite_horizon_seed(grid, 150, sc, opt);
        planner_policy = orbit::planner::value_iteration(seed, sc, opt).X;
        policy = orbit::phase::Policy::from_field(planner_policy);
        // the planner's own attractor
        orbit::phase::SimulateOptions sim;
        const auto traj = orbit::phase::simulate(policy, {0.0, 0.0}, 20000, sc, sim);
        stable = {traj.points.back().S, traj.points.back().D};
    }
    const auto map = orbit::phase::classify_basin(policy, sc, grid, horizon, rule, stable,
                                                  args.jobs);

    orbit::CsvWriter csv(args.out_dir + "/basin.csv", {"S", "D", "class"});
    for (int j = 0; j < grid.n_d; ++j) {
        for (int i = 0; i < grid.n_s; ++i) {
            csv.row({grid.s_at(i), grid.d_at(j),
                     static_cast<double>(static_cast<int>(map.at(i, j)))});
        }
    }
    man.extra.emplace_back("policy", policy_kind);
    man.extra.emplace_back("grid", std::to_string(grid.n_s) + "x" + std::to_string(grid.n_d));
    man.extra.emplace_back("horizon", std::to_string(horizon));
    man.extra.emplace_back("divergence_threshold", orbit::format_number(rule.threshold));
    man.extra.emplace_back("divergence_persistence", std::to_string(rule.persistence));
    man.extra.emplace_back("class_codes", "0=stable_basin 1=kessler 2=undetermined");
    finish(man, args, t0);
    std::cout << "basin: " << map.count(orbit::phase::NodeClass::kStableBasin) << " stable, "
              << map.count(orbit::phase::NodeClass::kKessler) << " kessler, "
              << map.count(orbit::phase::NodeClass::kUndetermined) << " undetermined\n";
    return 0;
}

int cmd_nullclines(const CommonArgs& args, const std::string& grid_spec, double h) {
    const auto t0 = std::chrono::steady_clock::now();
    orbit::RunManifest man;
    man.subcommand = "nullclines";
    const auto sc = load_scenario(args, man);
    const auto grid = parse_grid(grid_spec, sc);
    const auto nc = orbit::phase::nullclines(orbit::phase::Policy::open_access(), sc, grid, h);

    orbit::CsvWriter csv(args.out_dir + "/nullclines.csv", {"field", "s0", "d0", "s1", "d1"});
    for (const auto& seg : nc.satellite) {
        csv.row_raw({"S", orbit::format_cell(seg.s0), orbit::format_cell(seg.d0),
                     orbit::format_cell(seg.s1), orbit::format_cell(seg.d1)});
    }
    for (const auto& seg : nc.debris) {
        csv.row_raw({"D", orbit::format_cell(seg.s0), orbit::format_cell(seg.d0),
                     orbit::format_cell(seg.s1), orbit::format_cell(seg.d1)});
    }
    man.extra.emplace_back("h", orbit::format_number(h));
    man.extra.emplace_back("grid", std::to_string(grid.n_s) + "x" + std::to_string(grid.n_d));
    finish(man, args, t0);
    std::cout << "nullclines: " << nc.satellite.size() << " satellite segments, "
              << nc.debris.size() << " debris segments\n";
    return 0;
}

int cmd_kessler_time(const CommonArgs& args, const Overrides& ov, const std::string& init_spec,
                     int max_years, bool nonstationary) {
    const auto t0 = std::chrono::steady_clock::now();
    orbit::RunManifest man;
    man.subcommand = "kessler-time";
    auto sc = load_scenario(args, man);
    ov.apply(sc, man);
    const auto init = parse_state(init_spec);
    orbit::phase::KesslerTimeOptions opt;
    opt.max_years = max_years;
    opt.nonstationary_region = nonstationary;
    opt.jobs = args.jobs;
    const auto res = orbit::phase::kessler_time(sc, init, sc.start_year, opt);

    ordered_json rep;
    if (res.entry_year == orbit::phase::kBeyondHorizon) {
        rep["entry_year"] = nullptr;
        rep["status"] = "beyond-horizon";
    } else {
        rep["entry_year"] = res.entry_year;
        rep["status"] = "entered";
    }
    rep["max_year"] = sc.start_year + max_years;
    write_json(args.out_dir + "/kessler_time.json", rep);
    orbit::CsvWriter csv(args.out_dir + "/path.csv", {"year", "X", "S", "D", "L", "target"});
    for (const auto& pt : res.path) {
        csv.row({static_cast<double>(sc.start_year + pt.t), pt.X, pt.S, pt.D, pt.L, pt.target});
    }
    man.extra.emplace_back("init", init_spec);
    man.extra.emplace_back("max_years", std::to_string(max_years));
    man.extra.emplace_back("region", nonstationary ? "nonstationary" : "frozen-year");
    finish(man, args, t0);
    std::cout << "kessler-time: "
              << (res.entry_year == orbit::phase::kBeyondHorizon
                      ? "beyond-horizon (> " + std::to_string(sc.start_year + max_years) + ")"
                      : "entry " + std::to_string(res.entry_year))
              << "\n";
    return 0;
}

int cmd_sweep(const CommonArgs& args, const Overrides& ov, const std::string& axis,
              const std::string& values_csv, const std::string& init_spec, int max_years) {
    const auto t0 = std::chrono::steady_clock::now();
    orbit::RunManifest man;
    man.subcommand = "sweep";
    auto sc = load_scenario(args, man);
    ov.apply(sc, man);
    const auto init = parse_state(init_spec);

    std::vector<double> values;
    std::stringstream ss(values_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) values.push_back(std::stod(tok));

    orbit::phase::SweepAxis ax;
    if (axis == "beta-dd") ax = orbit::phase::SweepAxis::kBetaDD;
    else if (axis == "growth-a") ax = orbit::phase::SweepAxis::kGrowthA;
    else throw orbit::ConfigError("sweep axis must be beta-dd or growth-a");

    orbit::phase::KesslerTimeOptions opt;
    opt.max_years = max_years;
    opt.jobs = args.jobs;
    const auto points = orbit::phase::sweep_kessler_times(sc, ax, values, init, sc.start_year, opt);

    orbit::CsvWriter csv(args.out_dir + "/sweep.csv", {axis, "entry_year"});
    for (const auto& p : points) {
        csv.row({p.value, static_cast<double>(p.entry_year)});
    }
    man.extra.emplace_back("axis", axis);
    man.extra.emplace_back("values", values_csv);
    man.extra.emplace_back("max_years", std::to_string(max_years));
    man.extra.emplace_back("beyond_horizon_sentinel",
                           std::to_string(orbit::phase::kBeyondHorizon));
    finish(man, args, t0);
    std::cout << "sweep: " << points.size() << " points\n";
    return 0;
}

int cmd_calibrate(const CommonArgs& args, const std::string& econ_path,
                  const std::string& traffic_path, double eta) {
    const auto t0 = std::chrono::steady_clock::now();
    orbit::RunManifest man;
    man.subcommand = "calibrate";
    const auto panels = orbit::calibration::load_panels(econ_path, traffic_path);
    orbit::calibration::EmitOptions opt;
    opt.eta = eta;
    const auto cal = orbit::calibration::calibrate(panels, opt);
    const auto cfg = orbit::calibration::emit_calibration(cal, args.out_dir + "/calibration.cfg",
                                                          econ_path, traffic_path);
    man.scenario_hash = orbit::text_hash(cfg.serialize());

    ordered_json rep;
    rep["growth"] = {{"eta1_F", cal.growth.eta1_F},
                     {"std_error", cal.growth.std_error},
                     {"growth_rate", cal.growth.growth_rate}};
    rep["adjustment"] = {{"gamma0", cal.adjustment.gamma0},
                         {"gamma1", cal.adjustment.gamma1},
                         {"gamma2", cal.adjustment.gamma2},
                         {"observations", cal.adjustment.observations}};
    rep["ridge"] = {{"beta_ss_tilde", cal.ridge.beta_ss_tilde},
                    {"beta_sd_tilde", cal.ridge.beta_sd_tilde},
                    {"beta_dd_tilde", cal.ridge.beta_dd_tilde},
                    {"m", cal.ridge.m},
                    {"penalty", cal.ridge.penalty}};
    write_json(args.out_dir + "/diagnostics.json", rep);
    man.extra.emplace_back("econ_csv", econ_path);
    man.extra.emplace_back("traffic_csv", traffic_path);
    finish(man, args, t0);
    std::cout << "calibrate: growth " << cal.growth.growth_rate << ", gammas ("
              << cal.adjustment.gamma0 << ", " << cal.adjustment.gamma1 << ", "
              << cal.adjustment.gamma2 << ")\n";
    return 0;
}

int cmd_reproduce(const CommonArgs& args, const std::string& data_dir, bool quick) {
    const auto t0 = std::chrono::steady_clock::now();
    orbit::RunManifest man;
    man.subcommand = "reproduce";
    orbit::repro::Options opt;
    opt.data_dir = data_dir;
    opt.jobs = args.jobs;
    opt.seed = args.seed;
    opt.quick = quick;
    const auto results = orbit::repro::run_all(opt);

    ordered_json rep = ordered_json::array();
    bool all_pass = true;
    for (const auto& r : results) {
        std::printf("%s  criterion %2d: %s (%s)\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str());
        rep.push_back({{"id", r.id},
                       {"name", r.name},
                       {"pass", r.pass},
                       {"detail", r.detail},
                       {"seconds", r.seconds}});
        all_pass = all_pass && r.pass;
    }
    write_json(args.out_dir + "/reproduce_report.json", rep);
    man.extra.emplace_back("quick", quick ? "1" : "0");
    man.extra.emplace_back("data_dir", data_dir);
    finish(man, args, t0);
    std::cout << (all_pass ? "reproduce: all criteria passed\n"
                           : "reproduce: FAILURES present\n");
    return all_pass ? 0 : 1;
}

void emit_error(int code, const std::string& kind, const std::string& message) {
    ordered_json err;
    err["error"] = {{"exit_code", code}, {"kind", kind}, {"message", message}};
    std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orbit: open-access and optimal orbit-use simulation suite"};
    app.require_subcommand(1);

    CommonArgs args;
    Overrides ov;
    std::string init_spec = "0,0";
    std::string at_spec = "0,0";
    std::string grid_spec;
    std::string axis;
    std::string values_csv;
    std::string policy_kind = "oa";
    std::string econ_path = "data/econ_panel.csv";
    std::string traffic_path = "data/traffic_panel.csv";
    std::string data_dir = "data";
    int periods = 200;
    int horizon = 150;
    int basin_horizon = 3000;
    int max_years = 400;
    double h = 10.0;
    double eta_cal = 0.0;
    bool nonstationary = false;
    bool quick = false;

    auto* simple = app.add_subcommand("simple-model", "three-period model report and curves");
    add_common(simple, args);

    auto* oasim = app.add_subcommand("oa-simulate", "open-access trajectory");
    add_common(oasim, args);
    oasim->add_option("--init", init_spec, "initial state S,D");
    oasim->add_option("--periods", periods, "periods to simulate");

    auto* oass = app.add_subcommand("oa-steady-states", "open-access steady states");
    add_common(oass, args);

    auto* plan = app.add_subcommand("planner-solve", "planner value function iteration");
    add_common(plan, args);
    plan->add_option("--grid", grid_spec, "grid spec NSxND[:smax,dmax]");
    plan->add_option("--horizon", horizon, "finite-horizon seed length");

    auto* mec = app.add_subcommand("mec", "marginal external cost breakdown");
    add_common(mec, args);
    mec->add_option("--at", at_spec, "state S,D")->required();

    auto* basin = app.add_subcommand("basin", "basin / Kessler region classification");
    add_common(basin, args);
    basin->add_option("--grid", grid_spec, "grid spec NSxND[:smax,dmax]");
    basin->add_option("--horizon", basin_horizon, "per-node simulation horizon");
    basin->add_option("--policy", policy_kind, "oa | planner");

    auto* nulls = app.add_subcommand("nullclines", "direction-field zero contours");
    add_common(nulls, args);
    nulls->add_option("--grid", grid_spec, "grid spec NSxND[:smax,dmax]");
    nulls->add_option("--h", h, "direction-field step scalar");

    auto* ktime = app.add_subcommand("kessler-time", "Kessler region entry year");
    add_common(ktime, args);
    ktime->add_option("--init", init_spec, "initial state S,D");
    ktime->add_option("--max-years", max_years, "years past start_year");
    ktime->add_option("--beta-dd", ov.beta_dd, "override beta_dd");
    ktime->add_option("--beta-sd", ov.beta_sd, "override beta_sd");
    ktime->add_option("--growth-a", ov.growth_a, "override payoff growth rate a");
    ktime->add_option("--eta", ov.eta, "override occupancy elasticity");
    ktime->add_flag("--nonstationary-region", nonstationary,
                    "use the fully nonstationary region definition");

    auto* sweep = app.add_subcommand("sweep", "Kessler time sweep over a parameter axis");
    add_common(sweep, args);
    sweep->add_option("--axis", axis, "beta-dd | growth-a")->required();
    sweep->add_option("--values", values_csv, "comma-separated axis values")->required();
    sweep->add_option("--init", init_spec, "initial state S,D");
    sweep->add_option("--max-years", max_years, "years past start_year");
    sweep->add_option("--beta-sd", ov.beta_sd, "override beta_sd");
    sweep->add_option("--eta", ov.eta, "override occupancy elasticity");

    auto* cal = app.add_subcommand("calibrate", "run the calibration pipeline");
    add_common(cal, args, /*with_scenario=*/false);
    cal->add_option("--econ", econ_path, "economic panel CSV");
    cal->add_option("--traffic", traffic_path, "traffic panel CSV");
    cal->add_option("--eta", eta_cal, "occupancy elasticity for the payoff level");

    auto* repro = app.add_subcommand("reproduce", "run the full acceptance pipeline");
    add_common(repro, args, /*with_scenario=*/false);
    repro->add_option("--data", data_dir, "fixture data directory");
    repro->add_flag("--quick", quick, "thin the slowest sweeps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << app.help() << "\n";
        emit_error(2, "usage", e.what());
        return 2;
    }

    try {
        fs::create_directories(args.out_dir);
        if (simple->parsed()) return cmd_simple_model(args);
        if (oasim->parsed()) return cmd_oa_simulate(args, init_spec, periods);
        if (oass->parsed()) return cmd_oa_steady_states(args);
        if (plan->parsed()) return cmd_planner_solve(args, grid_spec, horizon);
        if (mec->parsed()) return cmd_mec(args, at_spec);
        if (basin->parsed()) return cmd_basin(args, grid_spec, basin_horizon, policy_kind);
        if (nulls->parsed()) return cmd_nullclines(args, grid_spec, h);
        if (ktime->parsed())
            return cmd_kessler_time(args, ov, init_spec, max_years, nonstationary);
        if (sweep->parsed())
            return cmd_sweep(args, ov, axis, values_csv, init_spec, max_years);
        if (cal->parsed()) return cmd_calibrate(args, econ_path, traffic_path, eta_cal);
        if (repro->parsed()) return cmd_reproduce(args, data_dir, quick);
        emit_error(2, "usage", "no subcommand");
        return 2;
    } catch (const orbit::NumericsError& e) {
        emit_error(4, "numerics", e.what());
        return 4;
    } catch (const orbit::DomainError& e) {
        emit_error(3, "validation", e.what());
        return 3;
    } catch (const orbit::ConfigError& e) {
        emit_error(3, "validation", e.what());
        return 3;
    } catch (const std::exception& e) {
        emit_error(3, "validation", e.what());
        return 3;
    }
}
