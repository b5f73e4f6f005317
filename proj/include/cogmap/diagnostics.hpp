#ifndef COGMAP_DIAGNOSTICS_HPP
#define COGMAP_DIAGNOSTICS_HPP

#include <atomic>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "cogmap/dynamics.hpp"
#include "cogmap/grid.hpp"
#include "cogmap/motility.hpp"
#include "cogmap/steady_state.hpp"

namespace cogmap {

namespace detail {

template <typename Fn>
void parallel_for_index(std::size_t count, int workers, Fn&& fn) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto body = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const int n_threads = std::min<int>(workers, static_cast<int>(count));
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
}

} // namespace detail

// Sensitivity of the movement steady state to the forgetting rate, from the
// implicit relation F(u, K, alpha, mu) = gamma(m)u - K = 0 and the mass
// constraint. Exact at the discrete steady state; finite differences are the
// cross-check, not the primary route.
struct DmuProfile {
    Field dudmu;
    double dKdmu = 0.0;
    Field Fu;
    Field Fmu;
};

inline DmuProfile dmu_steady(const MovementSteady& st, const Grid1D& grid, const Field& sbar,
                             const MotilityLaw& law, double alpha, double mu) {
    const std::size_t n = st.u_inf.size();
    require(sbar.size() == n && st.m_inf.size() == n, "dmu_steady: size mismatch");
    require(mu >= 0.0, "dmu_steady: mu must be nonnegative");
    DmuProfile out;
    out.Fu.assign(n, 0.0);
    out.Fmu.assign(n, 0.0);
    out.dudmu.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = st.u_inf[i];
        const double m = st.m_inf[i];
        const double denom = (u + mu) * (u + mu);
        const double gp = gamma_prime(law, m);
        out.Fu[i] = gamma(law, m) + alpha * sbar[i] * gp * mu * u / denom;
        out.Fmu[i] = -alpha * sbar[i] * gp * u * u / denom;
        if (!(out.Fu[i] > 0.0))
            throw solver_error("dmu_steady: degenerate derivative dF/du <= 0 at cell " +
                               std::to_string(i));
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += out.Fmu[i] / out.Fu[i];
        den += 1.0 / out.Fu[i];
    }
    out.dKdmu = num / den;  // the h factors cancel
    for (std::size_t i = 0; i < n; ++i) out.dudmu[i] = (out.dKdmu - out.Fmu[i]) / out.Fu[i];
    return out;
}

// Sign of du_inf/dmu at x = 0, mu = 0, with the power-law thresholds
// alpha1 = z0/sbar(0) and alpha2 = z0/sbar(ell) below/above which the sign is
// provably negative/positive for unimodal even sbar.
struct Mu0SignReport {
    int sign = 0;  // -1, 0, +1
    double derivative_center = 0.0;
    double dKdmu = 0.0;
    double alpha1 = std::numeric_limits<double>::quiet_NaN();
    double alpha2 = std::numeric_limits<double>::quiet_NaN();
};

inline Mu0SignReport classify_mu0_sign(const Grid1D& grid, const Field& sbar,
                                       const MotilityLaw& law, double alpha) {
    const std::size_t n = sbar.size();
    require(n == static_cast<std::size_t>(grid.n_cells), "classify_mu0_sign: size mismatch");
    require(alpha > 0.0, "classify_mu0_sign: alpha must be positive");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double z = alpha * sbar[i];
        const double fmu = -alpha * sbar[i] * gamma_prime(law, z);
        const double fu = gamma(law, z);
        num += fmu / fu;
        den += 1.0 / fu;
    }
    Mu0SignReport out;
    out.dKdmu = num / den;
    const std::size_t center = n / 2;  // n >= 8; centers straddle x = 0 for even n
    const double z_c = alpha * sbar[center];
    const double fmu_c = -alpha * sbar[center] * gamma_prime(law, z_c);
    out.derivative_center = (out.dKdmu - fmu_c) / gamma(law, z_c);
    out.sign = (out.derivative_center > 0.0) ? 1 : (out.derivative_center < 0.0 ? -1 : 0);
    if (law.variant == MotilityLaw::Variant::power) {
        out.alpha1 = law.z0() / sbar[center];
        out.alpha2 = law.z0() / sbar[n - 1];
    }
    return out;
}

// One sweep point; numeric fields are NaN when the point failed or does not
// apply to the solver mode.
struct SweepPoint {
    double alpha = 0.0;
    double mu = 0.0;
    double max_u = std::numeric_limits<double>::quiet_NaN();
    double argmax_x = std::numeric_limits<double>::quiet_NaN();
    double total_u = std::numeric_limits<double>::quiet_NaN();
    double total_s = std::numeric_limits<double>::quiet_NaN();
    double K = std::numeric_limits<double>::quiet_NaN();
    double residual = std::numeric_limits<double>::quiet_NaN();
    bool ok = false;
    std::string error;
};

enum class SolveMode { dynamics, steady_movement, steady_logistic };

// Everything a sweep point needs besides (alpha, mu).
struct RunSetup {
    Grid1D grid;
    Field s;
    PerceivedField sbar;
    MotilityLaw law;
    SolveMode mode = SolveMode::dynamics;
    GrowthKind growth = GrowthKind::none;
    double t_final = 500.0;
    double dt_safety = 0.4;
    Field u0;
    Field m0;
};

inline SweepPoint run_sweep_point(const RunSetup& setup, double alpha, double mu) {
    SweepPoint pt;
    pt.alpha = alpha;
    pt.mu = mu;
    try {
        pt.total_s = integrate(setup.grid, setup.s);
        Field u;
        switch (setup.mode) {
            case SolveMode::dynamics: {
                StepperConfig cfg;
                cfg.alpha = alpha;
                cfg.mu = mu;
                cfg.growth = setup.growth;
                cfg.t_final = setup.t_final;
                cfg.dt_safety = setup.dt_safety;
                SimState st = make_state(setup.grid, setup.u0, setup.m0, setup.sbar);
                AdvanceResult res = advance(setup.grid, std::move(st), cfg, setup.law, setup.s);
                u = std::move(res.state.u);
                if (setup.growth == GrowthKind::none) pt.residual = res.max_mass_drift;
                break;
            }
            case SolveMode::steady_movement: {
                const double M = integrate(setup.grid, setup.u0);
                MovementSteady st =
                    solve_movement_steady(setup.grid, setup.sbar.sbar, setup.law, alpha, mu, M);
                u = std::move(st.u_inf);
                pt.K = st.K;
                pt.residual = st.flux_residual;
                break;
            }
            case SolveMode::steady_logistic: {
                LogisticSteady st =
                    solve_logistic_steady(setup.grid, setup.s, setup.sbar.sbar, setup.law, alpha, mu);
                u = std::move(st.u_star);
                pt.residual = st.residual;
                break;
            }
        }
        pt.max_u = max_value(u);
        pt.argmax_x = setup.grid.centers[argmax_index(u)];
        pt.total_u = integrate(setup.grid, u);
        pt.ok = true;
    } catch (const std::exception& e) {
        pt.ok = false;
        pt.error = e.what();
    }
    return pt;
}

struct LingeringReport {
    std::vector<double> mu_grid;
    std::vector<SweepPoint> points;

    double argmax_mu_peak() const {
        double best = std::numeric_limits<double>::quiet_NaN(), best_v = -1.0;
        for (const auto& p : points)
            if (p.ok && p.max_u > best_v) {
                best_v = p.max_u;
                best = p.mu;
            }
        return best;
    }
    double argmax_mu_mass() const {
        double best = std::numeric_limits<double>::quiet_NaN(), best_v = -1.0;
        for (const auto& p : points)
            if (p.ok && p.total_u > best_v) {
                best_v = p.total_u;
                best = p.mu;
            }
        return best;
    }
    // max_u nonincreasing along the mu grid, allowing `slack` per step
    bool peak_monotone_nonincreasing(double slack = 1e-6) const {
        double prev = std::numeric_limits<double>::infinity();
        for (const auto& p : points) {
            if (!p.ok) continue;
            if (p.max_u > prev + slack) return false;
            prev = p.max_u;
        }
        return true;
    }
    bool peak_is_interior() const {
        if (points.size() < 3) return false;
        std::size_t k = 0;
        for (std::size_t i = 1; i < points.size(); ++i)
            if (points[i].ok && points[i].max_u > points[k].max_u) k = i;
        return k > 0 && k + 1 < points.size();
    }
};

// Runs the chosen solver for each mu; failures are recorded per point and the
// sweep continues. Points are independent, so they can run on several threads;
// the report order always follows mu_values.
inline LingeringReport lingering_sweep(const RunSetup& setup, double alpha,
                                       const std::vector<double>& mu_values, int workers = 1) {
    require(!mu_values.empty(), "lingering_sweep: mu_values must be nonempty");
    LingeringReport report;
    report.mu_grid = mu_values;
    report.points.resize(mu_values.size());
    detail::parallel_for_index(mu_values.size(), workers, [&](std::size_t i) {
        report.points[i] = run_sweep_point(setup, alpha, mu_values[i]);
    });
    return report;
}

struct EigenResult {
    double lambda1 = 0.0;
    long long iterations = 0;
};

// Largest eigenvalue of gamma0 * Lap_N + diag(s) by power iteration on the
// Gershgorin-shifted operator. O(n) memory; the dense route stays in the test
// oracles.
inline EigenResult principal_eigenvalue(const Grid1D& grid, const Field& s, double gamma0) {
    const std::size_t n = s.size();
    require(n == static_cast<std::size_t>(grid.n_cells), "principal_eigenvalue: size mismatch");
    require(gamma0 > 0.0, "principal_eigenvalue: gamma0 must be positive");
    for (double v : s) require(v > 0.0, "principal_eigenvalue: s must be positive");

    const double ih2 = 1.0 / (grid.h * grid.h);
    const double shift = 4.0 * gamma0 * ih2;

    Field v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    Field av(n);
    const auto apply = [&](const Field& x, Field& out) {
        double flux_left = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double flux_right = (i + 1 < n) ? (x[i + 1] - x[i]) : 0.0;
            out[i] = gamma0 * (flux_right - flux_left) * ih2 + s[i] * x[i];
            flux_left = flux_right;
        }
    };

    EigenResult res;
    const long long max_iters = 20000000;
    double lambda = 0.0;
    for (long long it = 0; it < max_iters; ++it) {
        apply(v, av);
        lambda = 0.0;
        for (std::size_t i = 0; i < n; ++i) lambda += v[i] * av[i];  // Rayleigh quotient
        double r2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = av[i] - lambda * v[i];
            r2 += r * r;
        }
        res.iterations = it + 1;
        if (std::sqrt(r2) <= 1e-10 * std::max(1.0, std::abs(lambda))) {
            res.lambda1 = lambda;
            return res;
        }
        double norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            av[i] += shift * v[i];
            norm2 += av[i] * av[i];
        }
        const double inv_norm = 1.0 / std::sqrt(norm2);
        for (std::size_t i = 0; i < n; ++i) v[i] = av[i] * inv_norm;
    }
    throw solver_error("principal_eigenvalue: power iteration did not converge within " +
                       std::to_string(max_iters) + " iterations");
}

struct MassComparison {
    double total_u = 0.0;
    double total_s = 0.0;
    bool exceeds = false;  // total_u > total_s
};

inline MassComparison mass_comparison(const Grid1D& grid, const Field& u, const Field& s) {
    MassComparison out;
    out.total_u = integrate(grid, u);
    out.total_s = integrate(grid, s);
    out.exceeds = out.total_u > out.total_s;
    return out;
}

} // namespace cogmap

#endif
