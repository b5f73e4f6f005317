#ifndef COGMAP_LANDSCAPE_HPP
#define COGMAP_LANDSCAPE_HPP

#include <cmath>
#include <string>
#include <vector>

#include "cogmap/grid.hpp"

namespace cogmap {

// Resource landscapes s(x). All built-in kinds are strictly positive on the
// closed domain; sampling rejects anything that is not.
struct LandscapeSpec {
    enum class Kind { constant, gaussian, sharp_gaussian, asymmetric, custom };

    Kind kind = Kind::gaussian;

    double value = 1.0;   // constant: s(x) = value
    double offset = 0.1;  // baseline added to the gaussian kinds

    // asymmetric: offset + a1 exp(-(x-c1)^2/(2 w1^2)) + a2 exp(-(x-c2)^2/(2 w2^2)).
    // Defaults give a dominant left peak and a weaker right peak.
    double peak1_amp = 0.6, peak1_center = -1.5, peak1_width = 0.8;
    double peak2_amp = 0.3, peak2_center = 2.0, peak2_width = 0.8;

    std::vector<double> table;  // custom: one value per cell

    static LandscapeSpec constant(double c) {
        LandscapeSpec s;
        s.kind = Kind::constant;
        s.value = c;
        return s;
    }
    static LandscapeSpec gaussian(double offset = 0.1) {
        LandscapeSpec s;
        s.kind = Kind::gaussian;
        s.offset = offset;
        return s;
    }
    static LandscapeSpec sharp_gaussian(double offset = 0.1) {
        LandscapeSpec s;
        s.kind = Kind::sharp_gaussian;
        s.offset = offset;
        return s;
    }
    static LandscapeSpec asymmetric() {
        LandscapeSpec s;
        s.kind = Kind::asymmetric;
        return s;
    }
    static LandscapeSpec custom(std::vector<double> values) {
        LandscapeSpec s;
        s.kind = Kind::custom;
        s.table = std::move(values);
        return s;
    }
};

inline double evaluate_landscape(const LandscapeSpec& spec, double x) {
    constexpr double inv_sqrt_2pi = 0.3989422804014326779;
    switch (spec.kind) {
        case LandscapeSpec::Kind::constant:
            return spec.value;
        case LandscapeSpec::Kind::gaussian:
            return inv_sqrt_2pi * std::exp(-0.5 * x * x) + spec.offset;
        case LandscapeSpec::Kind::sharp_gaussian:
            return inv_sqrt_2pi * std::exp(-5.0 * x * x) + spec.offset;
        case LandscapeSpec::Kind::asymmetric: {
            const double d1 = (x - spec.peak1_center) / spec.peak1_width;
            const double d2 = (x - spec.peak2_center) / spec.peak2_width;
            return spec.offset + spec.peak1_amp * std::exp(-0.5 * d1 * d1) +
                   spec.peak2_amp * std::exp(-0.5 * d2 * d2);
        }
        case LandscapeSpec::Kind::custom:
            throw std::invalid_argument("evaluate_landscape: custom landscapes are tabulated, not pointwise");
    }
    throw std::invalid_argument("evaluate_landscape: unknown kind");
}

inline Field sample_landscape(const LandscapeSpec& spec, const Grid1D& grid) {
    Field s(static_cast<std::size_t>(grid.n_cells));
    if (spec.kind == LandscapeSpec::Kind::custom) {
        if (spec.table.size() != s.size())
            throw config_error("landscape: custom table has " + std::to_string(spec.table.size()) +
                               " values, grid has " + std::to_string(grid.n_cells) + " cells");
        s = spec.table;
    } else {
        for (int i = 0; i < grid.n_cells; ++i)
            s[static_cast<std::size_t>(i)] = evaluate_landscape(spec, grid.centers[static_cast<std::size_t>(i)]);
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!std::isfinite(s[i]) || s[i] <= 0.0)
            throw config_error("landscape: sampled value at cell " + std::to_string(i) +
                               " is not strictly positive");
    }
    return s;
}

} // namespace cogmap

#endif
