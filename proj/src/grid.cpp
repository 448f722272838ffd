#include "orbit/grid.hpp"

#include <algorithm>
#include <cmath>

namespace orbit {

void Grid2D::validate() const {
    if (n_s < 2 || n_d < 2) throw DomainError("Grid2D: node counts must be at least 2 per axis");
    if (!(s_max > 0.0) || !(d_max > 0.0)) throw DomainError("Grid2D: extents must be positive");
}

double interpolate(const Field& f, double S, double D, std::int64_t* clamped) {
    const Grid2D& g = f.grid;
    if (clamped && (S < 0.0 || S > g.s_max || D < 0.0 || D > g.d_max)) ++*clamped;
    const double s = std::clamp(S, 0.0, g.s_max);
    const double d = std::clamp(D, 0.0, g.d_max);
    const double fs = s / g.s_step();
    const double fd = d / g.d_step();
    int i = std::min(static_cast<int>(fs), g.n_s - 2);
    int j = std::min(static_cast<int>(fd), g.n_d - 2);
    const double ts = fs - i;
    const double td = fd - j;
    const double v00 = f.at(i, j);
    const double v10 = f.at(i + 1, j);
    const double v01 = f.at(i, j + 1);
    const double v11 = f.at(i + 1, j + 1);
    return (1.0 - td) * ((1.0 - ts) * v00 + ts * v10) + td * ((1.0 - ts) * v01 + ts * v11);
}

double field_max_abs_diff(const Field& a, const Field& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        worst = std::max(worst, std::abs(a.values[k] - b.values[k]));
    }
    return worst;
}

double field_mean_abs(const Field& f) {
    double sum = 0.0;
    for (double v : f.values) sum += std::abs(v);
    return f.values.empty() ? 0.0 : sum / f.values.size();
}

}  // namespace orbit
