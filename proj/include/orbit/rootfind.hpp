// rootfind.hpp
//
// Scalar solvers shared across the suite: safeguarded bracketed root
// finding and bounded maximization (coarse scan + golden-section refine).

#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace orbit {

struct NumericsError : std::runtime_error {
    explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

// Root of f on [lo, hi], f(lo) and f(hi) of opposite sign (or zero).
// Regula falsi with a bisection safeguard; terminates when the bracket
// width or |f| falls below tol.
template <typename F>
double find_root_bracketed(F&& f, double lo, double hi, double tol = 1e-12,
                           int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw NumericsError("find_root_bracketed: endpoints do not bracket a root");
    }
    double x = lo;
    for (int it = 0; it < max_iter; ++it) {
        // secant-style proposal, clipped away from the bracket edges
        double xs = (hi * flo - lo * fhi) / (flo - fhi);
        const double mid = 0.5 * (lo + hi);
        if (!(xs > lo && xs < hi)) xs = mid;
        x = (it % 2 == 0) ? xs : mid;  // alternate to guarantee bracket shrinkage
        const double fx = f(x);
        if (fx == 0.0 || hi - lo < tol) return x;
        if ((fx > 0.0) == (flo > 0.0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
    }
    return 0.5 * (lo + hi);
}

// Maximizer of f on [lo, hi]: coarse scan to bracket the best sample, then
// golden-section refinement. Robust to mild non-concavity at scan resolution.
template <typename F>
double maximize_scan_golden(F&& f, double lo, double hi, int scan_points = 33,
                            double xtol = 1e-8) {
    if (!(hi > lo)) return lo;
    if (scan_points < 3) scan_points = 3;
    const double h = (hi - lo) / (scan_points - 1);
    int best = 0;
    double fbest = f(lo);
    for (int i = 1; i < scan_points; ++i) {
        const double x = lo + i * h;
        const double fx = f(x);
        if (fx > fbest) {
            fbest = fx;
            best = i;
        }
    }
    double a = lo + (best > 0 ? (best - 1) : 0) * h;
    double b = lo + (best < scan_points - 1 ? (best + 1) : scan_points - 1) * h;
    if (best == 0) b = lo + h;
    if (best == scan_points - 1) a = hi - h;

    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    const double xm = 0.5 * (a + b);
    // endpoints can beat the interior when the maximum sits on the boundary
    double xbest = xm;
    double fm = f(xm);
    if (f(lo) >= fm) {
        xbest = lo;
        fm = f(lo);
    }
    if (f(hi) > fm) xbest = hi;
    return xbest;
}

}  // namespace orbit
