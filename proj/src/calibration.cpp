#include "orbit/calibration.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>

#include "orbit/csv.hpp"
#include "orbit/rootfind.hpp"

namespace orbit {
namespace calibration {

namespace {

// Gaussian elimination with partial pivoting, sized for the small normal
// equations used here.
std::vector<double> solve_linear(std::vector<std::vector<double>> A, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(A[r][col]) > std::abs(A[pivot][col])) pivot = r;
        }
        if (std::abs(A[pivot][col]) < 1e-300) {
            throw NumericsError("solve_linear: singular system");
        }
        std::swap(A[col], A[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = A[r][col] / A[col][col];
            for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= A[i][c] * x[c];
        x[i] = s / A[i][i];
    }
    return x;
}

// beta = (X'X + P)^-1 X'y with per-coefficient penalties P (diagonal).
std::vector<double> penalized_least_squares(const std::vector<std::vector<double>>& X,
                                            const std::vector<double>& y,
                                            const std::vector<double>& penalties) {
    const std::size_t k = X.front().size();
    std::vector<std::vector<double>> A(k, std::vector<double>(k, 0.0));
    std::vector<double> rhs(k, 0.0);
    for (std::size_t i = 0; i < X.size(); ++i) {
        for (std::size_t a = 0; a < k; ++a) {
            rhs[a] += X[i][a] * y[i];
            for (std::size_t b = 0; b < k; ++b) A[a][b] += X[i][a] * X[i][b];
        }
    }
    for (std::size_t a = 0; a < k; ++a) A[a][a] += penalties[a];
    return solve_linear(std::move(A), std::move(rhs));
}

}  // namespace

void EconPanel::validate() const {
    if (rows.size() != 14) throw DomainError("EconPanel: expected 14 rows (2006-2019)");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.year != 2006 + static_cast<int>(i)) {
            throw DomainError("EconPanel: years must run 2006-2019 contiguously");
        }
        if (!(r.revenues > 0.0 && r.costs > 0.0)) {
            throw DomainError("EconPanel: revenues and costs must be positive");
        }
    }
}

void TrafficPanel::validate() const {
    if (rows.size() != 15) throw DomainError("TrafficPanel: expected 15 rows (2006-2020)");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.year != 2006 + static_cast<int>(i)) {
            throw DomainError("TrafficPanel: years must run 2006-2020 contiguously");
        }
        const auto whole_nonneg = [](double v) {
            return v >= 0.0 && std::abs(v - std::round(v)) < 1e-9;
        };
        if (!whole_nonneg(r.launched) || !whole_nonneg(r.active) || !whole_nonneg(r.debris)) {
            throw DomainError("TrafficPanel: counts must be nonnegative integers");
        }
        if (!(r.collision_prob > 0.0)) {
            throw DomainError("TrafficPanel: collision probability must be positive");
        }
    }
}

const EconRow& EconPanel::at_year(int year) const {
    for (const auto& r : rows) {
        if (r.year == year) return r;
    }
    throw DomainError("EconPanel: year not present");
}

const TrafficRow& TrafficPanel::at_year(int year) const {
    for (const auto& r : rows) {
        if (r.year == year) return r;
    }
    throw DomainError("TrafficPanel: year not present");
}

Panels load_panels(const std::string& econ_csv, const std::string& traffic_csv) {
    Panels panels;
    const CsvTable econ = read_csv(econ_csv);
    if (econ.header != std::vector<std::string>{"year", "revenues", "costs"}) {
        throw DomainError("econ panel: expected header year,revenues,costs");
    }
    for (std::size_t i = 0; i < econ.rows.size(); ++i) {
        panels.econ.rows.push_back({static_cast<int>(econ.number(i, 0)), econ.number(i, 1),
                                    econ.number(i, 2)});
    }
    const CsvTable traffic = read_csv(traffic_csv);
    if (traffic.header !=
        std::vector<std::string>{"year", "launched", "active", "debris", "collision_prob"}) {
        throw DomainError("traffic panel: expected header year,launched,active,debris,collision_prob");
    }
    for (std::size_t i = 0; i < traffic.rows.size(); ++i) {
        panels.traffic.rows.push_back({static_cast<int>(traffic.number(i, 0)),
                                       traffic.number(i, 1), traffic.number(i, 2),
                                       traffic.number(i, 3), traffic.number(i, 4)});
    }
    panels.econ.validate();
    panels.traffic.validate();
    return panels;
}

void ObjectGeometry::validate() const {
    if (!(mass > 0.0 && cross_sectional_area > 0.0 && speed > 0.0 && shell_volume > 0.0)) {
        throw DomainError("ObjectGeometry: all fields must be positive");
    }
}

double kinetic_gas_alpha(const ObjectGeometry& geom) {
    geom.validate();
    return geom.speed * geom.cross_sectional_area / geom.shell_volume * kSecondsPerYear;
}

double breakup_fragments(double mass_kg) {
    if (!(mass_kg > 0.0)) throw DomainError("breakup_fragments: mass must be positive");
    return 0.1 * std::pow(mass_kg, 0.75) * std::pow(0.1, -1.71);
}

GrowthRegression cost_growth_regression(const EconPanel& panel) {
    panel.validate();
    const std::size_t n = panel.rows.size();
    std::vector<std::vector<double>> X;
    std::vector<double> y;
    for (const auto& r : panel.rows) {
        X.push_back({1.0, static_cast<double>(r.year)});
        y.push_back(std::log(r.costs));
    }
    const auto beta = penalized_least_squares(X, y, {0.0, 0.0});
    double rss = 0.0;
    double year_mean = 0.0;
    for (const auto& r : panel.rows) year_mean += r.year;
    year_mean /= n;
    double sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double fit = beta[0] + beta[1] * X[i][1];
        rss += (y[i] - fit) * (y[i] - fit);
        sxx += (X[i][1] - year_mean) * (X[i][1] - year_mean);
    }
    GrowthRegression out;
    out.intercept = beta[0];
    out.eta1_F = beta[1];
    out.std_error = std::sqrt(rss / (n - 2) / sxx);
    out.growth_rate = std::expm1(beta[1]);
    return out;
}

AdjustmentRegression adjustment_regression(const EconPanel& econ, const TrafficPanel& traffic) {
    econ.validate();
    traffic.validate();
    std::vector<std::vector<double>> X;
    std::vector<double> y;
    for (int year = 2007; year <= 2019; ++year) {
        const auto& e = econ.at_year(year);
        const auto& e_prev = econ.at_year(year - 1);
        X.push_back({1.0, e.revenues / e.costs, e_prev.costs / e.costs});
        y.push_back(traffic.at_year(year).collision_prob);
    }
    const auto beta = penalized_least_squares(X, y, {0.0, 0.0, 0.0});
    AdjustmentRegression out;
    out.gamma0 = beta[0];
    out.gamma1 = beta[1];
    out.gamma2 = beta[2];
    out.observations = static_cast<int>(y.size());
    return out;
}

RidgeResult ridge_fragmentation(const TrafficPanel& traffic, const RidgeInputs& in,
                                double penalty_override) {
    traffic.validate();
    if (!(in.beta_ss > 0.0 && in.beta_sd > 0.0 && in.beta_dd > 0.0)) {
        throw DomainError("ridge_fragmentation: analytic betas must be positive");
    }
    const std::size_t n = traffic.rows.size() - 1;  // transitions 2006->2007 ... 2019->2020
    std::vector<std::array<double, 4>> raw(n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = traffic.rows[i];
        const auto& next = traffic.rows[i + 1];
        y[i] = next.debris - (1.0 - in.delta) * row.debris;
        raw[i] = {in.beta_ss * one_minus_exp_neg(in.alpha_ss * row.active) * row.active,
                  in.beta_sd * one_minus_exp_neg(in.alpha_sd * row.debris) * row.active,
                  in.beta_dd * one_minus_exp_neg(in.alpha_dd * row.debris) * row.debris,
                  row.launched};
    }

    // standardize columns so the penalty is scale-free
    std::array<double, 4> scale{};
    for (int c = 0; c < 4; ++c) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += raw[i][c];
        mean /= n;
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) var += (raw[i][c] - mean) * (raw[i][c] - mean);
        scale[c] = std::sqrt(var / n);
        if (!(scale[c] > 0.0)) throw NumericsError("ridge_fragmentation: degenerate regressor");
    }
    std::vector<std::vector<double>> Xs(n, std::vector<double>(4));
    for (std::size_t i = 0; i < n; ++i) {
        for (int c = 0; c < 4; ++c) Xs[i][c] = raw[i][c] / scale[c];
    }

    const auto fit = [&](double lam, const std::vector<std::size_t>& idx) {
        std::vector<std::vector<double>> Xf;
        std::vector<double> yf;
        for (std::size_t i : idx) {
            Xf.push_back(Xs[i]);
            yf.push_back(y[i]);
        }
        return penalized_least_squares(Xf, yf, {lam, lam, lam, lam});
    };

    double lambda = penalty_override;
    if (penalty_override < 0.0) {
        // leave-one-out CV over a half-decade log grid; one-standard-error rule
        std::vector<double> grid;
        for (int k = -8; k <= 8; ++k) grid.push_back(std::pow(10.0, 0.5 * k));
        std::vector<double> cv(grid.size(), 0.0), cv_se(grid.size(), 0.0);
        for (std::size_t gi = 0; gi < grid.size(); ++gi) {
            std::vector<double> errs(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<std::size_t> idx;
                for (std::size_t j = 0; j < n; ++j) {
                    if (j != i) idx.push_back(j);
                }
                const auto b = fit(grid[gi], idx);
                double pred = 0.0;
                for (int c = 0; c < 4; ++c) pred += Xs[i][c] * b[c];
                errs[i] = (y[i] - pred) * (y[i] - pred);
            }
            double mean = 0.0;
            for (double e : errs) mean += e;
            mean /= n;
            double var = 0.0;
            for (double e : errs) var += (e - mean) * (e - mean);
            cv[gi] = mean;
            cv_se[gi] = std::sqrt(var / (n - 1) / n);
        }
        std::size_t best = 0;
        for (std::size_t gi = 1; gi < grid.size(); ++gi) {
            if (cv[gi] < cv[best]) best = gi;
        }
        const double threshold = cv[best] + cv_se[best];
        lambda = grid[best];
        for (std::size_t gi = 0; gi < grid.size(); ++gi) {
            if (cv[gi] <= threshold) lambda = std::max(lambda, grid[gi]);
        }
    }

    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    const auto b = fit(lambda, all);

    RidgeResult out;
    out.penalty = lambda;
    out.rho_ss = b[0] / scale[0];
    out.rho_sd = b[1] / scale[1];
    out.rho_dd = b[2] / scale[2];
    out.beta_ss_tilde = out.rho_ss * in.beta_ss;
    out.beta_sd_tilde = out.rho_sd * in.beta_sd;
    out.beta_dd_tilde = out.rho_dd * in.beta_dd;
    out.m = b[3] / scale[3];
    return out;
}

CalibratedParams calibrate(const Panels& panels, const EmitOptions& opt) {
    CalibratedParams out;
    out.growth = cost_growth_regression(panels.econ);
    out.adjustment = adjustment_regression(panels.econ, panels.traffic);

    // physical fields whose inputs (object-type shares, masses, areas) are
    // not published: shipped at their documented values
    out.phys.alpha_ss = 2.73e-7;
    out.phys.alpha_sd = 2.73e-7;
    out.phys.alpha_dd = 2.78e-7;
    out.phys.delta = 0.074;
    out.phys.mu = 0.15;
    out.phys.kappa_ss = 0.99;
    out.phys.kappa_sd = 0.95;
    out.phys.beta_ss = 1800.0;
    out.phys.beta_sd = 333.0;
    out.phys.beta_dd = 327.0;
    out.phys.m = 0.013;

    RidgeInputs ridge_in;
    ridge_in.beta_ss = breakup_fragments(556.0);  // satellite struck (Iridium-class dry mass)
    ridge_in.beta_sd = breakup_fragments(556.0);
    ridge_in.beta_dd = breakup_fragments(900.0);  // intact derelict struck (Cosmos-class)
    ridge_in.alpha_ss = out.phys.alpha_ss;
    ridge_in.alpha_sd = out.phys.alpha_sd;
    ridge_in.alpha_dd = out.phys.alpha_dd;
    ridge_in.delta = out.phys.delta;
    out.ridge = ridge_fragmentation(panels.traffic, ridge_in);

    // payoff level consistent with the chosen elasticity:
    // pi = exp(log K - log(1+eta) + eta log S0)
    out.econ.eta = opt.eta;
    out.econ.pi = std::exp(std::log(opt.revenue_anchor) - std::log1p(opt.eta) +
                           opt.eta * std::log(opt.s0));
    out.econ.F = opt.cost_anchor;
    out.econ.r = opt.discount_rate;
    out.econ.a = out.growth.growth_rate;  // default payoff growth at the cost rate
    out.econ.b = out.growth.growth_rate;
    out.econ.gamma0 = out.adjustment.gamma0;
    out.econ.gamma1 = out.adjustment.gamma1;
    out.econ.gamma2 = out.adjustment.gamma2;
    return out;
}

std::string file_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("file_hash: cannot open " + path);
    std::uint64_t h = 1469598103934665603ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

KeyValueConfig emit_calibration(const CalibratedParams& params, const std::string& path,
                                const std::string& econ_csv_path,
                                const std::string& traffic_csv_path) {
    KeyValueConfig cfg;
    physical_params_to_config(params.phys, cfg);
    econ_params_to_config(params.econ, cfg);
    cfg.set_string("mode", "time-varying-calibrated");
    cfg.set_number("start_year", 2020);
    cfg.set_number("avoidance", 1);
    cfg.set_number("turnover", 1);
    // provenance
    cfg.set_string("provenance.econ_csv_hash", file_hash(econ_csv_path));
    cfg.set_string("provenance.traffic_csv_hash", file_hash(traffic_csv_path));
    cfg.set_number("provenance.ridge_penalty", params.ridge.penalty);
    cfg.set_number("provenance.ridge_beta_dd_tilde", params.ridge.beta_dd_tilde);
    cfg.set_number("provenance.ridge_beta_sd_tilde", params.ridge.beta_sd_tilde);
    cfg.set_number("provenance.ridge_beta_ss_tilde", params.ridge.beta_ss_tilde);
    cfg.set_number("provenance.ridge_m", params.ridge.m);
    cfg.set_number("provenance.growth_eta1_F", params.growth.eta1_F);
    cfg.set_number("provenance.growth_se", params.growth.std_error);
    cfg.save(path, "calibrated parameter file");
    return cfg;
}

}  // namespace calibration
}  // namespace orbit
