// grid.hpp
//
// Rectangular (S, D) lattice and piecewise-bilinear fields defined on it.
// Queries outside the extents clamp to the boundary; callers that care
// track the clamp count.

#pragma once

#include <cstdint>
#include <vector>

#include "orbit/core.hpp"

namespace orbit {

struct Grid2D {
    double s_max = 0.0;
    double d_max = 0.0;
    int n_s = 2;
    int n_d = 2;

    void validate() const;
    double s_at(int i) const { return s_max * i / (n_s - 1); }
    double d_at(int j) const { return d_max * j / (n_d - 1); }
    double s_step() const { return s_max / (n_s - 1); }
    double d_step() const { return d_max / (n_d - 1); }
    std::size_t nodes() const { return static_cast<std::size_t>(n_s) * n_d; }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * n_s + i; }

    bool operator==(const Grid2D& other) const = default;
};

// Scalar field on a Grid2D (value function, launch policy, direction field).
struct Field {
    Grid2D grid;
    std::vector<double> values;  // row-major, index = j * n_s + i

    explicit Field(const Grid2D& g = {}, double fill = 0.0)
        : grid(g), values(g.nodes(), fill) {}

    double& at(int i, int j) { return values[grid.index(i, j)]; }
    double at(int i, int j) const { return values[grid.index(i, j)]; }
};

using ValueField = Field;
using PolicyField = Field;

// Bilinear interpolation with boundary clamping. `clamped`, when non-null,
// is incremented if (S, D) fell outside the grid extents.
double interpolate(const Field& f, double S, double D, std::int64_t* clamped = nullptr);

double field_max_abs_diff(const Field& a, const Field& b);
double field_mean_abs(const Field& f);

}  // namespace orbit
