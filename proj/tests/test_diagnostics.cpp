#include <doctest.h>

#include <cmath>

#include "cogmap/diagnostics.hpp"
#include "cogmap/landscape.hpp"
#include "oracles.hpp"

using namespace cogmap;

namespace {

struct Fixture {
    Grid1D grid = make_grid(5.0, 128);
    Field s;
    PerceivedField pf;
    MotilityLaw law = MotilityLaw::power(1.0, 2.0);
    double M = 0.0;
    Fixture() {
        s = sample_landscape(LandscapeSpec::gaussian(0.1), grid);
        pf = perceive(grid, s, KernelShape::bump(1.5), PerceptionMode::normalized);
        M = integrate(grid, s);
    }
};

} // namespace

TEST_CASE("dmu_steady vanishes on a homogeneous perceived landscape") {
    const Grid1D g = make_grid(5.0, 64);
    const Field sbar(64, 0.8);
    const MotilityLaw law = MotilityLaw::power(1.0, 2.0);
    const MovementSteady st = solve_movement_steady(g, sbar, law, 2.0, 0.7, 3.0);
    const DmuProfile prof = dmu_steady(st, g, sbar, law, 2.0, 0.7);
    for (double v : prof.dudmu) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("dmu_steady matches central finite differences of the solver") {
    const Fixture fx;
    const double alpha = 10.0;
    for (const double mu : {0.4, 2.0}) {
        const MovementSteady st = solve_movement_steady(fx.grid, fx.pf.sbar, fx.law, alpha, mu, fx.M);
        const DmuProfile prof = dmu_steady(st, fx.grid, fx.pf.sbar, fx.law, alpha, mu);
        const double delta = 1e-3;
        const MovementSteady lo =
            solve_movement_steady(fx.grid, fx.pf.sbar, fx.law, alpha, mu - delta, fx.M);
        const MovementSteady hi =
            solve_movement_steady(fx.grid, fx.pf.sbar, fx.law, alpha, mu + delta, fx.M);
        double scale = linf_norm(prof.dudmu);
        REQUIRE(scale > 0.0);
        for (std::size_t i = 0; i < prof.dudmu.size(); ++i) {
            const double fd = (hi.u_inf[i] - lo.u_inf[i]) / (2.0 * delta);
            CHECK(std::abs(prof.dudmu[i] - fd) <= 1e-4 * scale);
        }
        CHECK(std::abs(integrate(fx.grid, prof.dudmu)) <= 1e-8 * fx.M);
    }
}

TEST_CASE("dmu_steady decays like 1/mu^2 for large mu") {
    const Fixture fx;
    const MovementSteady st50 = solve_movement_steady(fx.grid, fx.pf.sbar, fx.law, 10.0, 50.0, fx.M);
    const MovementSteady st100 =
        solve_movement_steady(fx.grid, fx.pf.sbar, fx.law, 10.0, 100.0, fx.M);
    const MovementSteady st200 =
        solve_movement_steady(fx.grid, fx.pf.sbar, fx.law, 10.0, 200.0, fx.M);
    const double n50 = linf_norm(dmu_steady(st50, fx.grid, fx.pf.sbar, fx.law, 10.0, 50.0).dudmu);
    const double n100 =
        linf_norm(dmu_steady(st100, fx.grid, fx.pf.sbar, fx.law, 10.0, 100.0).dudmu);
    const double n200 =
        linf_norm(dmu_steady(st200, fx.grid, fx.pf.sbar, fx.law, 10.0, 200.0).dudmu);
    CHECK(n50 / n100 > 3.2);
    CHECK(n50 / n100 < 4.8);
    CHECK(n100 / n200 > 3.2);
    CHECK(n100 / n200 < 4.8);
    // derivative at the peak is negative in the flattening regime
    const DmuProfile p = dmu_steady(st100, fx.grid, fx.pf.sbar, fx.law, 10.0, 100.0);
    CHECK(p.dudmu[p.dudmu.size() / 2] < 0.0);
}

TEST_CASE("dmu_steady rejects a degenerate dF/du") {
    const Grid1D g = make_grid(5.0, 8);
    MovementSteady fake;
    fake.u_inf.assign(8, 1.0);
    fake.m_inf.assign(8, 0.0);
    fake.K = 1.0;
    fake.M = 10.0;
    const Field sbar(8, 1.0);
    CHECK_THROWS_AS(dmu_steady(fake, g, sbar, MotilityLaw::power(1.0, 2.0), 10.0, 1.0),
                    solver_error);
}

TEST_CASE("classify_mu0_sign respects the power-law thresholds") {
    const Fixture fx;
    const Mu0SignReport base = classify_mu0_sign(fx.grid, fx.pf.sbar, fx.law, 1.0);
    CHECK(base.alpha1 == doctest::Approx(0.5 / fx.pf.sbar[64]).epsilon(1e-12));
    CHECK(base.alpha2 == doctest::Approx(0.5 / fx.pf.sbar[127]).epsilon(1e-12));
    REQUIRE(base.alpha1 < base.alpha2);

    const double a_low = 0.8 * base.alpha1;
    const double a_high = 1.2 * base.alpha2;
    CHECK(classify_mu0_sign(fx.grid, fx.pf.sbar, fx.law, a_low).sign == -1);
    CHECK(classify_mu0_sign(fx.grid, fx.pf.sbar, fx.law, a_high).sign == 1);

    // finite differences of the steady solver confirm both signs
    for (const double alpha : {a_low, a_high}) {
        const int expected = classify_mu0_sign(fx.grid, fx.pf.sbar, fx.law, alpha).sign;
        const MovementSteady at0 =
            solve_movement_steady(fx.grid, fx.pf.sbar, fx.law, alpha, 0.0, fx.M);
        const MovementSteady at_eps =
            solve_movement_steady(fx.grid, fx.pf.sbar, fx.law, alpha, 1e-3, fx.M);
        const double fd = (at_eps.u_inf[64] - at0.u_inf[64]) / 1e-3;
        CHECK((fd > 0.0 ? 1 : -1) == expected);
    }
}

TEST_CASE("lingering_sweep runs points, tolerates failures, and is thread-stable") {
    const Fixture fx;
    RunSetup setup;
    setup.grid = fx.grid;
    setup.s = fx.s;
    setup.sbar = fx.pf;
    setup.law = fx.law;
    setup.mode = SolveMode::steady_movement;
    setup.u0 = fx.s;
    setup.m0.assign(fx.s.size(), 0.0);

    const std::vector<double> mus{0.0, 0.25, 0.5, 1.0, 2.0, 4.0};
    const LingeringReport rep = lingering_sweep(setup, 1.0, mus, 1);
    REQUIRE(rep.points.size() == mus.size());
    for (const auto& p : rep.points) {
        CHECK(p.ok);
        CHECK(p.total_u == doctest::Approx(fx.M).epsilon(1e-9));
    }
    // low learning rate: peak density decays with the forgetting rate
    CHECK(rep.peak_monotone_nonincreasing());
    CHECK_FALSE(rep.peak_is_interior());
    CHECK(rep.argmax_mu_peak() == doctest::Approx(0.0));

    const LingeringReport rep4 = lingering_sweep(setup, 1.0, mus, 4);
    for (std::size_t i = 0; i < mus.size(); ++i) {
        CHECK(rep4.points[i].max_u == rep.points[i].max_u);  // bitwise determinism
        CHECK(rep4.points[i].total_u == rep.points[i].total_u);
    }

    // a hopeless parameter point is marked failed without killing the sweep
    const LingeringReport bad = lingering_sweep(setup, 30.0, {0.5, 1.0}, 1);
    for (const auto& p : bad.points) {
        CHECK_FALSE(p.ok);
        CHECK_FALSE(p.error.empty());
        CHECK(std::isnan(p.max_u));
    }
}

TEST_CASE("principal_eigenvalue: constant landscape is exact") {
    const Grid1D g = make_grid(5.0, 128);
    const Field s(128, 0.37);
    const EigenResult res = principal_eigenvalue(g, s, 1.0);
    CHECK(std::abs(res.lambda1 - 0.37) <= 1e-10);
}

TEST_CASE("principal_eigenvalue matches the tridiagonal oracle and its lower bound") {
    const Grid1D g = make_grid(5.0, 256);
    for (const LandscapeSpec& spec : {LandscapeSpec::gaussian(0.1), LandscapeSpec::asymmetric()}) {
        const Field s = sample_landscape(spec, g);
        const EigenResult res = principal_eigenvalue(g, s, 1.0);
        std::vector<double> diag, off;
        oracles::assemble_neumann_operator(s, 1.0, g.h, diag, off);
        const double ref = oracles::tridiag_lambda_max(diag, off);
        CHECK(std::abs(res.lambda1 - ref) <= 1e-8);
        CHECK(res.lambda1 >= integrate(g, s) / 10.0 - 1e-10);
        CHECK(res.lambda1 > 0.0);  // extinction is unstable whenever s > 0
    }
}

TEST_CASE("mass_comparison totals") {
    const Grid1D g = make_grid(5.0, 64);
    const Field s = sample_landscape(LandscapeSpec::gaussian(0.1), g);
    Field u(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) u[i] = 1.1 * s[i];
    const MassComparison mc = mass_comparison(g, u, s);
    CHECK(mc.exceeds);
    CHECK(mc.total_u == doctest::Approx(1.1 * mc.total_s).epsilon(1e-12));
}
