#ifndef COGMAP_GRID_HPP
#define COGMAP_GRID_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "cogmap/common.hpp"

namespace cogmap {

// All fields (u, m, s, sbar, U) are plain vectors of cell-center samples.
using Field = std::vector<double>;

// Uniform cell-centered partition of the symmetric interval (-ell, ell).
// Cell i covers (x_i - h/2, x_i + h/2) with x_i = -ell + (i + 1/2) h.
struct Grid1D {
    double ell = 0.0;
    int n_cells = 0;
    double h = 0.0;
    std::vector<double> centers;

    double length() const { return 2.0 * ell; }
};

inline Grid1D make_grid(double ell, int n_cells) {
    require(is_finite(ell) && ell > 0.0, "make_grid: ell must be finite and positive");
    require(n_cells >= 8, "make_grid: n_cells must be at least 8");
    Grid1D g;
    g.ell = ell;
    g.n_cells = n_cells;
    g.h = 2.0 * ell / n_cells;
    g.centers.resize(static_cast<std::size_t>(n_cells));
    for (int i = 0; i < n_cells; ++i)
        g.centers[static_cast<std::size_t>(i)] = -ell + (i + 0.5) * g.h;
    return g;
}

// Midpoint-rule integral h * sum(values). Matches the finite-volume view of a
// Field as piecewise-constant cell averages.
inline double integrate(const Grid1D& grid, const Field& f) {
    require(f.size() == static_cast<std::size_t>(grid.n_cells), "integrate: field/grid size mismatch");
    double sum = 0.0;
    for (double v : f) sum += v;
    return grid.h * sum;
}

inline double max_value(const Field& f) {
    double m = f.empty() ? 0.0 : f[0];
    for (double v : f) m = std::max(m, v);
    return m;
}

inline double min_value(const Field& f) {
    double m = f.empty() ? 0.0 : f[0];
    for (double v : f) m = std::min(m, v);
    return m;
}

inline double linf_norm(const Field& f) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
}

inline double linf_diff(const Field& a, const Field& b) {
    require(a.size() == b.size(), "linf_diff: size mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline std::size_t argmax_index(const Field& f) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < f.size(); ++i)
        if (f[i] > f[k]) k = i;
    return k;
}

inline bool all_finite(const Field& f) {
    for (double v : f)
        if (!std::isfinite(v)) return false;
    return true;
}

} // namespace cogmap

#endif
