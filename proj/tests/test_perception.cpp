#include <doctest.h>

#include <cmath>

#include "cogmap/landscape.hpp"
#include "cogmap/perception.hpp"
#include "oracles.hpp"

using namespace cogmap;

TEST_CASE("kernel_value formulas and support") {
    const KernelShape bump = KernelShape::bump(1.0);
    CHECK(kernel_value(bump, 0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(kernel_value(bump, 1.0) == 0.0);
    CHECK(kernel_value(bump, -1.0) == 0.0);
    CHECK(kernel_value(bump, 2.0) == 0.0);
    // continuous at the support boundary
    CHECK(kernel_value(bump, 1.0 - 1e-9) < 1e-100);

    const KernelShape hat = KernelShape::top_hat(2.0);
    CHECK(kernel_value(hat, 1.5) == 1.0);
    CHECK(kernel_value(hat, -1.999) == 1.0);
    CHECK(kernel_value(hat, 2.0) == 0.0);
}

TEST_CASE("compute_zr window widths for the top-hat") {
    const Grid1D g = make_grid(5.0, 1024);
    const Field zr = compute_zr(KernelShape::top_hat(1.0), g);
    const std::size_t mid = zr.size() / 2;
    CHECK(zr[mid] == doctest::Approx(2.0).epsilon(2.0 * g.h));
    CHECK(zr[0] == doctest::Approx(1.0).epsilon(2.0 * g.h));
    for (double v : zr) CHECK(v > 0.0);
}

TEST_CASE("compute_zr matches adaptive quadrature for the bump") {
    const Grid1D g = make_grid(5.0, 1024);
    const KernelShape shape = KernelShape::bump(1.5);
    const Field zr = compute_zr(shape, g);
    const std::size_t mid = zr.size() / 2;
    const double exact = oracles::integrate_adaptive(
        [&](double r) { return kernel_value(shape, r); }, -1.5, 1.5);
    CHECK(std::abs(zr[mid] - exact) < 1e-4);
    CHECK(kernel_integral(shape) == doctest::Approx(exact).epsilon(1e-8));
}

TEST_CASE("unresolved or degenerate kernels are rejected") {
    const Grid1D g = make_grid(5.0, 64);  // h = 0.15625
    CHECK_THROWS_AS(compute_zr(KernelShape::bump(0.2), g), config_error);
    CHECK_THROWS_AS(compute_zr(KernelShape::bump(10.0), g), config_error);
    const Field s(64, 1.0);
    CHECK_THROWS_AS(perceive(g, s, KernelShape::bump(0.2), PerceptionMode::normalized), config_error);
    CHECK_NOTHROW(compute_zr(KernelShape::bump(0.5), g));
}

TEST_CASE("normalized kernel reproduces homogeneous landscapes") {
    const Grid1D g = make_grid(5.0, 256);
    SUBCASE("unit landscape is exact") {
        const Field s(256, 1.0);
        for (double R : {0.5, 1.0, 1.5, 2.0}) {
            const PerceivedField pf = perceive(g, s, KernelShape::bump(R), PerceptionMode::normalized);
            for (double v : pf.sbar) CHECK(std::abs(v - 1.0) <= 1e-15);
        }
    }
    SUBCASE("general constant within rounding") {
        const Field s(256, 3.7);
        const PerceivedField pf = perceive(g, s, KernelShape::bump(1.5), PerceptionMode::normalized);
        for (double v : pf.sbar) CHECK(std::abs(v - 3.7) <= 1e-13);
    }
}

TEST_CASE("truncated kernel deflates the boundary on homogeneous landscapes") {
    const Grid1D g = make_grid(5.0, 512);
    const Field s(512, 1.0);
    const KernelShape hat = KernelShape::top_hat(1.0);
    const PerceivedField pf = perceive(g, s, hat, PerceptionMode::truncated);
    const std::size_t mid = pf.sbar.size() / 2;
    CHECK(pf.sbar[mid] == doctest::Approx(2.0).epsilon(2.0 * g.h));
    CHECK(pf.sbar[0] == doctest::Approx(1.0).epsilon(2.0 * g.h));
    // strictly decreasing over the last R of the domain
    const std::size_t from = static_cast<std::size_t>((10.0 - 1.0) / g.h);
    for (std::size_t i = from + 1; i < pf.sbar.size(); ++i) CHECK(pf.sbar[i] < pf.sbar[i - 1]);
}

TEST_CASE("truncated convolution matches a brute-force quadrature oracle") {
    const Grid1D g = make_grid(5.0, 1024);
    const LandscapeSpec spec = LandscapeSpec::gaussian(0.1);
    const Field s = sample_landscape(spec, g);
    const KernelShape shape = KernelShape::bump(1.5);
    const PerceivedField pf = perceive(g, s, shape, PerceptionMode::truncated);
    for (const std::size_t i : {std::size_t{0}, std::size_t{37}, std::size_t{200}, std::size_t{511},
                                std::size_t{512}, std::size_t{800}, std::size_t{1023}}) {
        const double x = g.centers[i];
        const double lo = std::max(-5.0, x - shape.radius);
        const double hi = std::min(5.0, x + shape.radius);
        const double exact = oracles::integrate_adaptive(
            [&](double y) { return kernel_value(shape, x - y) * evaluate_landscape(spec, y); }, lo,
            hi);
        CHECK(std::abs(pf.sbar[i] - exact) < 1e-4);
    }
}

TEST_CASE("perception invariants") {
    const Grid1D g = make_grid(5.0, 512);
    const Field s = sample_landscape(LandscapeSpec::gaussian(0.1), g);
    const KernelShape shape = KernelShape::bump(1.5);

    SUBCASE("averaging bound for the normalized mode") {
        const PerceivedField pf = perceive(g, s, shape, PerceptionMode::normalized);
        const double lo = min_value(s), hi = max_value(s);
        for (double v : pf.sbar) {
            CHECK(v >= lo - 1e-12);
            CHECK(v <= hi + 1e-12);
        }
    }

    SUBCASE("truncation bound and strict boundary deficit") {
        const PerceivedField pf = perceive(g, s, shape, PerceptionMode::truncated);
        const double cap = kernel_integral(shape) * max_value(s);
        for (double v : pf.sbar) CHECK(v <= cap + 1e-12);
        // windows leaving the domain see strictly less than I_R
        const double i_r = kernel_integral(shape);
        CHECK(pf.z_r[0] < i_r - 1e-3);
        CHECK(pf.z_r[511] < i_r - 1e-3);
    }

    SUBCASE("even landscape gives even sbar in both modes") {
        for (PerceptionMode mode : {PerceptionMode::truncated, PerceptionMode::normalized}) {
            const PerceivedField pf = perceive(g, s, shape, mode);
            const std::size_t n = pf.sbar.size();
            for (std::size_t i = 0; i < n; ++i)
                CHECK(pf.sbar[i] == doctest::Approx(pf.sbar[n - 1 - i]).epsilon(1e-12));
        }
    }

    SUBCASE("boundary share of Z_R drops toward 1/2 as R grows") {
        const Field ones(512, 1.0);
        double prev = 1.0;
        for (double R : {0.5, 1.0, 1.5, 2.0}) {
            const KernelShape k = KernelShape::bump(R);
            const Field zr = compute_zr(k, g);
            const double share = zr[0] / kernel_integral(k);
            CHECK(share < prev);
            CHECK(share > 0.5 - 1e-3);
            prev = share;
        }
    }
}
