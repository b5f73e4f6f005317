#ifndef COGMAP_PERCEPTION_HPP
#define COGMAP_PERCEPTION_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "cogmap/grid.hpp"

namespace cogmap {

// Compactly supported perception kernel J_R on (-R, R).
struct KernelShape {
    enum class Variant { bump, top_hat };
    Variant variant = Variant::bump;
    double radius = 1.0;

    static KernelShape bump(double R) { return {Variant::bump, R}; }
    static KernelShape top_hat(double R) { return {Variant::top_hat, R}; }
};

enum class PerceptionMode { truncated, normalized };

// J_R(r): zero outside |r| < R. The bump variant is smooth and vanishes to
// all orders at the support boundary.
inline double kernel_value(const KernelShape& shape, double r) {
    const double R = shape.radius;
    if (!(std::abs(r) < R)) return 0.0;
    switch (shape.variant) {
        case KernelShape::Variant::top_hat:
            return 1.0;
        case KernelShape::Variant::bump: {
            const double q = r / R;
            return std::exp(-1.0 / (1.0 - q * q));
        }
    }
    return 0.0;
}

namespace detail {

inline void check_kernel_resolved(const KernelShape& shape, const Grid1D& grid) {
    require(is_finite(shape.radius) && shape.radius > 0.0, "kernel: radius must be positive");
    if (shape.radius >= 2.0 * grid.ell)
        throw config_error("kernel: radius " + std::to_string(shape.radius) +
                           " is not smaller than the domain diameter " + std::to_string(2.0 * grid.ell));
    if (shape.radius < 2.0 * grid.h)
        throw config_error("kernel: radius " + std::to_string(shape.radius) +
                           " is unresolved on this grid (needs R >= 2h, h = " + std::to_string(grid.h) + ")");
}

// Weights J_R(d*h) for offsets d = -w..w. Computed once per (shape, grid);
// exactly symmetric in d.
inline std::vector<double> kernel_weights(const KernelShape& shape, const Grid1D& grid, int& half_width) {
    half_width = static_cast<int>(std::ceil(shape.radius / grid.h));
    std::vector<double> w(static_cast<std::size_t>(2 * half_width + 1));
    for (int d = -half_width; d <= half_width; ++d)
        w[static_cast<std::size_t>(d + half_width)] = kernel_value(shape, d * grid.h);
    return w;
}

} // namespace detail

// Z_R(x_i) = h * sum over in-domain offsets of J_R. Strictly positive for any
// resolved kernel.
inline Field compute_zr(const KernelShape& shape, const Grid1D& grid) {
    detail::check_kernel_resolved(shape, grid);
    int w = 0;
    const std::vector<double> weights = detail::kernel_weights(shape, grid, w);
    const int n = grid.n_cells;
    Field zr(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        const int lo = std::max(-w, -i);
        const int hi = std::min(w, n - 1 - i);
        double sum = 0.0;
        for (int d = lo; d <= hi; ++d) sum += weights[static_cast<std::size_t>(d + w)];
        zr[static_cast<std::size_t>(i)] = grid.h * sum;
    }
    return zr;
}

// Perceived landscape sbar together with the normalizer Z_R it was (or would
// be) divided by.
struct PerceivedField {
    Field sbar;
    Field z_r;
    PerceptionMode mode = PerceptionMode::normalized;
    KernelShape shape;
};

// Discrete convolution restricted to in-domain cells. The truncated mode sums
// total information in range; the normalized mode divides by Z_R(x) cellwise,
// so homogeneous s gives sbar == s exactly (numerator and Z_R share the same
// weights summed in the same order).
inline PerceivedField perceive(const Grid1D& grid, const Field& s, const KernelShape& shape,
                               PerceptionMode mode) {
    require(s.size() == static_cast<std::size_t>(grid.n_cells), "perceive: field/grid size mismatch");
    detail::check_kernel_resolved(shape, grid);
    int w = 0;
    const std::vector<double> weights = detail::kernel_weights(shape, grid, w);
    const int n = grid.n_cells;

    PerceivedField out;
    out.mode = mode;
    out.shape = shape;
    out.sbar.assign(static_cast<std::size_t>(n), 0.0);
    out.z_r.assign(static_cast<std::size_t>(n), 0.0);

    for (int i = 0; i < n; ++i) {
        const int lo = std::max(-w, -i);
        const int hi = std::min(w, n - 1 - i);
        double num = 0.0;
        double zr = 0.0;
        for (int d = lo; d <= hi; ++d) {
            const double wd = weights[static_cast<std::size_t>(d + w)];
            num += wd * s[static_cast<std::size_t>(i + d)];
            zr += wd;
        }
        out.z_r[static_cast<std::size_t>(i)] = grid.h * zr;
        out.sbar[static_cast<std::size_t>(i)] =
            (mode == PerceptionMode::truncated) ? grid.h * num : num / zr;
    }
    return out;
}

// Full-line integral of J_R, for the truncation bound sbar <= I_R * max s.
inline double kernel_integral(const KernelShape& shape, int panels = 20000) {
    const double R = shape.radius;
    if (shape.variant == KernelShape::Variant::top_hat) return 2.0 * R;
    // midpoint rule; the bump integrand is smooth and vanishes at +-R
    double sum = 0.0;
    const double dh = 2.0 * R / panels;
    for (int i = 0; i < panels; ++i) sum += kernel_value(shape, -R + (i + 0.5) * dh);
    return dh * sum;
}

} // namespace cogmap

#endif
