#include <doctest.h>

#include <cmath>

#include "cogmap/grid.hpp"
#include "cogmap/landscape.hpp"
#include "oracles.hpp"

using namespace cogmap;

TEST_CASE("make_grid basic layout") {
    const Grid1D g = make_grid(5.0, 10);
    CHECK(g.h == doctest::Approx(1.0));
    REQUIRE(g.centers.size() == 10);
    CHECK(g.centers[0] == doctest::Approx(-4.5));
    CHECK(g.centers[9] == doctest::Approx(4.5));
    for (std::size_t i = 1; i < g.centers.size(); ++i) CHECK(g.centers[i] > g.centers[i - 1]);

    const Grid1D fine = make_grid(5.0, 512);
    CHECK(fine.h == doctest::Approx(10.0 / 512));
    CHECK(fine.centers.front() == doctest::Approx(-5.0 + fine.h / 2));
    CHECK(fine.centers.back() == doctest::Approx(5.0 - fine.h / 2));

    const Grid1D tiny = make_grid(1.0, 8);
    CHECK(tiny.centers[0] == doctest::Approx(-0.875));

    // cell widths tile the domain
    CHECK(g.h * g.n_cells == doctest::Approx(10.0).epsilon(1e-14));
}

TEST_CASE("make_grid rejects bad input") {
    CHECK_THROWS_AS(make_grid(5.0, 7), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(5.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(-1.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(std::nan(""), 64), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(std::numeric_limits<double>::infinity(), 64), std::invalid_argument);
}

TEST_CASE("sample_landscape kinds and values") {
    const Grid1D g = make_grid(5.0, 101);  // odd count: one center sits at x = 0

    const Field c1 = sample_landscape(LandscapeSpec::constant(1.0), g);
    for (double v : c1) CHECK(v == 1.0);

    CHECK(evaluate_landscape(LandscapeSpec::gaussian(0.1), 0.0) == doctest::Approx(0.49894).epsilon(1e-4));
    const Field gau = sample_landscape(LandscapeSpec::gaussian(0.1), g);
    CHECK(gau[50] == doctest::Approx(0.49894).epsilon(1e-4));
    for (double v : gau) CHECK(v > 0.0);

    // custom tables pass through
    const Grid1D g8 = make_grid(1.0, 8);
    Field table(8, 0.5);
    const Field custom = sample_landscape(LandscapeSpec::custom(table), g8);
    CHECK(custom == table);
}

TEST_CASE("sample_landscape rejects invalid specs") {
    const Grid1D g = make_grid(5.0, 64);
    CHECK_THROWS_AS(sample_landscape(LandscapeSpec::custom({1.0, 2.0}), g), config_error);
    CHECK_THROWS_AS(sample_landscape(LandscapeSpec::constant(-1.0), g), config_error);
    CHECK_THROWS_AS(sample_landscape(LandscapeSpec::constant(0.0), g), config_error);
    CHECK_THROWS_AS(sample_landscape(LandscapeSpec::gaussian(-0.5), g), config_error);
}

TEST_CASE("integrate: midpoint rule values") {
    const Grid1D g = make_grid(5.0, 64);
    CHECK(integrate(g, sample_landscape(LandscapeSpec::constant(2.0), g)) ==
          doctest::Approx(20.0).epsilon(1e-14));

    const Grid1D fine = make_grid(5.0, 1024);
    const double mass = integrate(fine, sample_landscape(LandscapeSpec::sharp_gaussian(0.1), fine));
    CHECK(mass == doctest::Approx(1.3162).epsilon(1e-3));
}

TEST_CASE("integrate agrees with adaptive quadrature to O(h^2)") {
    const LandscapeSpec spec = LandscapeSpec::gaussian(0.1);
    const double exact =
        oracles::integrate_adaptive([&](double x) { return evaluate_landscape(spec, x); }, -5.0, 5.0);
    for (int n : {128, 256, 512}) {
        const Grid1D g = make_grid(5.0, n);
        const double approx = integrate(g, sample_landscape(spec, g));
        CHECK(std::abs(approx - exact) <= 5.0 * g.h * g.h);
    }
}

TEST_CASE("integrate is linear") {
    const Grid1D g = make_grid(3.0, 96);
    const Field f = sample_landscape(LandscapeSpec::gaussian(0.1), g);
    const Field w = sample_landscape(LandscapeSpec::asymmetric(), g);
    Field combo(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) combo[i] = 2.5 * f[i] - 0.75 * w[i];
    CHECK(integrate(g, combo) ==
          doctest::Approx(2.5 * integrate(g, f) - 0.75 * integrate(g, w)).epsilon(1e-13));
}

TEST_CASE("symmetric landscapes sample to even fields") {
    const Grid1D g = make_grid(5.0, 200);
    for (const LandscapeSpec& spec : {LandscapeSpec::constant(1.3), LandscapeSpec::gaussian(0.1),
                                      LandscapeSpec::sharp_gaussian(0.2)}) {
        const Field f = sample_landscape(spec, g);
        for (std::size_t i = 0; i < f.size(); ++i)
            CHECK(f[i] == doctest::Approx(f[f.size() - 1 - i]).epsilon(1e-13));
    }
}

TEST_CASE("integrate refinement converges at second order") {
    // the asymmetric landscape has a nonzero boundary slope, so the midpoint
    // error has a clean h^2 signal
    LandscapeSpec spec = LandscapeSpec::asymmetric();
    spec.peak2_center = 4.0;
    const double exact =
        oracles::integrate_adaptive([&](double x) { return evaluate_landscape(spec, x); }, -5.0, 5.0);
    double prev_err = 0.0;
    for (int n : {64, 128, 256}) {
        const Grid1D g = make_grid(5.0, n);
        const double err = std::abs(integrate(g, sample_landscape(spec, g)) - exact);
        if (n > 64) {
            CHECK(err < prev_err);
            CHECK(prev_err / err == doctest::Approx(4.0).epsilon(0.45));
        }
        prev_err = err;
    }
}
