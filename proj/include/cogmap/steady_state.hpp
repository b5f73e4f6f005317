#ifndef COGMAP_STEADY_STATE_HPP
#define COGMAP_STEADY_STATE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "cogmap/grid.hpp"
#include "cogmap/motility.hpp"

namespace cogmap {

// Stationary state of the movement-only system: gamma(m)u = K with
// m = alpha*sbar*u/(u+mu) and h*sum(u) = M.
struct MovementSteady {
    Field u_inf;
    Field m_inf;
    double K = 0.0;
    double M = 0.0;
    double flux_residual = 0.0;  // max |gamma(m)u - K| / K
    double mass_residual = 0.0;  // |integrate(u) - M| / M
    int outer_iterations = 0;
};

// Stationary state of the logistic system in the U = gamma(m)u variable.
struct LogisticSteady {
    Field u_star;
    Field m_star;
    Field U_star;
    double residual = 0.0;  // ||R(U)||_inf
    int newton_iterations = 0;
    long long pseudo_time_steps = 0;
    bool used_fallback = false;
    ConditionCheck existence;
    ConditionCheck uniqueness;
};

namespace detail {

// Smallest root in [0, alpha*sbar] of F(m) = m - alpha*sbar*U/(U + mu*gamma(m)).
// F(0) <= 0 and F(alpha*sbar) >= 0 always; a coarse upward scan brackets the
// first crossing so that a multi-root F (condition violated) still resolves to
// the branch reached from m = 0.
inline double memory_root(double U, double sbar_x, const MotilityLaw& law, double alpha,
                          double mu) {
    const double m_cap = alpha * sbar_x;
    if (m_cap <= 0.0) return 0.0;
    auto F = [&](double m) { return m - m_cap * U / (U + mu * gamma(law, m)); };
    const int n_scan = 64;
    double a = 0.0, fa = F(0.0), b = m_cap;
    if (fa > 0.0) throw solver_error("memory_root: no sign change on [0, alpha*sbar]");
    bool bracketed = false;
    for (int j = 1; j <= n_scan; ++j) {
        const double m = m_cap * static_cast<double>(j) / n_scan;
        const double fm = F(m);
        if (fm >= 0.0) {
            b = m;
            bracketed = true;
            break;
        }
        a = m;
        fa = fm;
    }
    if (!bracketed) throw solver_error("memory_root: no sign change on [0, alpha*sbar]");
    for (int it = 0; it < 200 && (b - a) > 1e-13; ++it) {
        const double mid = 0.5 * (a + b);
        if (F(mid) < 0.0)
            a = mid;
        else
            b = mid;
    }
    return 0.5 * (a + b);
}

} // namespace detail

// m solving the stationary memory relation for a given U = gamma(m)u value.
inline double solve_memory_given_U(double U, double sbar_x, const MotilityLaw& law, double alpha,
                                   double mu) {
    require(U >= 0.0, "solve_memory_given_U: U must be nonnegative");
    require(mu > 0.0 || U > 0.0, "solve_memory_given_U: need mu > 0 or U > 0");
    if (U == 0.0) return 0.0;
    if (mu == 0.0) return alpha * sbar_x;
    return detail::memory_root(U, sbar_x, law, alpha, mu);
}

namespace detail {

// u-based memory equilibrium m(u) = alpha*sbar*u/(u+mu).
inline double memory_of_u(double u, double sbar_x, double alpha, double mu) {
    const double lambda = u + mu;
    return lambda > 0.0 ? alpha * sbar_x * u / lambda : 0.0;
}

// Per-cell inner solve: u in [K/gamma(0), K/gamma(alpha*sbar)] with
// gamma(m(u))u = K, by bisection. The bracket endpoints have opposite signs
// because m(u) stays inside [0, alpha*sbar].
inline double movement_cell_solve(double K, double sbar_x, const MotilityLaw& law, double alpha,
                                  double mu) {
    double lo = K / gamma(law, 0.0);
    double hi = K / gamma(law, alpha * sbar_x);
    if (hi <= lo) return 0.5 * (lo + hi);
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
        const double u = 0.5 * (lo + hi);
        const double g = gamma(law, memory_of_u(u, sbar_x, alpha, mu)) * u;
        if (g < K)
            lo = u;
        else
            hi = u;
    }
    return 0.5 * (lo + hi);
}

inline void check_inner_monotone(double K_lo, double K_hi, double sbar_max,
                                 const MotilityLaw& law, double alpha, double mu) {
    const double u_lo = K_lo / gamma(law, 0.0);
    const double u_hi = K_hi / gamma(law, alpha * sbar_max);
    const int n_scan = 256;
    double prev = 0.0;
    for (int j = 0; j <= n_scan; ++j) {
        const double u = u_lo + (u_hi - u_lo) * static_cast<double>(j) / n_scan;
        const double g = gamma(law, memory_of_u(u, sbar_max, alpha, mu)) * u;
        if (j > 0 && g < prev - 1e-12 * std::max(1.0, prev))
            throw solver_error(
                "movement steady state: u -> gamma(m(u))u is not monotone on the bracket "
                "(existence condition violated badly); multiple roots possible");
        prev = g;
    }
}

} // namespace detail

// Nested bisection for the movement-only steady state. The outer loop matches
// the conserved mass M; the inner loop inverts gamma(m(u))u = K cellwise.
// mu = 0 collapses to the closed form m = alpha*sbar, u = K/gamma(alpha*sbar).
inline MovementSteady solve_movement_steady(const Grid1D& grid, const Field& sbar,
                                            const MotilityLaw& law, double alpha, double mu,
                                            double M) {
    const std::size_t n = static_cast<std::size_t>(grid.n_cells);
    require(sbar.size() == n, "solve_movement_steady: field/grid size mismatch");
    require(M > 0.0, "solve_movement_steady: M must be positive");
    require(alpha >= 0.0 && mu >= 0.0, "solve_movement_steady: alpha, mu must be nonnegative");

    MovementSteady out;
    out.M = M;
    out.u_inf.assign(n, 0.0);
    out.m_inf.assign(n, 0.0);

    const double sbar_max = max_value(sbar);
    const double domain = grid.length();

    if (mu == 0.0) {
        double inv_gamma_sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            out.m_inf[i] = alpha * sbar[i];
            inv_gamma_sum += 1.0 / gamma(law, out.m_inf[i]);
        }
        out.K = M / (grid.h * inv_gamma_sum);
        for (std::size_t i = 0; i < n; ++i) out.u_inf[i] = out.K / gamma(law, out.m_inf[i]);
    } else {
        double K_lo = gamma(law, alpha * sbar_max) * M / domain;
        double K_hi = gamma(law, 0.0) * M / domain;
        detail::check_inner_monotone(K_lo, K_hi, sbar_max, law, alpha, mu);

        auto mass_of = [&](double K, Field& u) {
            for (std::size_t i = 0; i < n; ++i)
                u[i] = detail::movement_cell_solve(K, sbar[i], law, alpha, mu);
            return integrate(grid, u);
        };

        Field u(n);
        int it = 0;
        for (; it < 200; ++it) {
            const double K = 0.5 * (K_lo + K_hi);
            const double mass = mass_of(K, u);
            if (std::abs(mass - M) <= 1e-10 * M) {
                out.K = K;
                break;
            }
            if (mass < M)
                K_lo = K;
            else
                K_hi = K;
            if ((K_hi - K_lo) <= 1e-15 * K_hi) {
                out.K = 0.5 * (K_lo + K_hi);
                mass_of(out.K, u);
                break;
            }
        }
        if (out.K == 0.0) out.K = 0.5 * (K_lo + K_hi);
        out.outer_iterations = it + 1;
        out.u_inf = u;
        for (std::size_t i = 0; i < n; ++i)
            out.m_inf[i] = detail::memory_of_u(out.u_inf[i], sbar[i], alpha, mu);
    }

    out.mass_residual = std::abs(integrate(grid, out.u_inf) - M) / M;
    double max_flux_err = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        max_flux_err = std::max(max_flux_err,
                                std::abs(gamma(law, out.m_inf[i]) * out.u_inf[i] - out.K));
    out.flux_residual = max_flux_err / out.K;
    return out;
}

namespace detail {

// No-flux tridiagonal Laplacian applied to U, same flux stencil as the
// dynamics module.
inline void apply_neumann_laplacian(const Grid1D& grid, const Field& U, Field& out) {
    const std::size_t n = U.size();
    const double inv_h = 1.0 / grid.h;
    double flux_left = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double flux_right = (i + 1 < n) ? (U[i + 1] - U[i]) * inv_h : 0.0;
        out[i] = (flux_right - flux_left) * inv_h;
        flux_left = flux_right;
    }
}

// Reaction part of the U-equation at one cell: w(s - w) with w = U/gamma(m(U)).
inline double logistic_reaction(double U, double s_x, double sbar_x, const MotilityLaw& law,
                                double alpha, double mu) {
    const double m = (mu == 0.0) ? (U > 0.0 ? alpha * sbar_x : 0.0)
                                 : memory_root(U, sbar_x, law, alpha, mu);
    const double w = U / gamma(law, m);
    return w * (s_x - w);
}

// d/dU of the reaction term, differentiating through the memory relation.
// Falls back to central differences where the implicit-function denominator
// degenerates.
inline double logistic_reaction_derivative(double U, double s_x, double sbar_x,
                                           const MotilityLaw& law, double alpha, double mu) {
    double m, dm_dU;
    if (mu == 0.0) {
        m = (U > 0.0) ? alpha * sbar_x : 0.0;
        dm_dU = 0.0;
    } else {
        m = memory_root(U, sbar_x, law, alpha, mu);
        const double g = gamma(law, m);
        const double denom_lin = U + mu * g;
        const double Fm = 1.0 + alpha * sbar_x * U * mu * gamma_prime(law, m) / (denom_lin * denom_lin);
        if (Fm > 1e-10) {
            dm_dU = alpha * sbar_x * mu * g / (denom_lin * denom_lin * Fm);
        } else {
            const double dU = 1e-6 * std::max(1.0, U);
            return (logistic_reaction(U + dU, s_x, sbar_x, law, alpha, mu) -
                    logistic_reaction(std::max(0.0, U - dU), s_x, sbar_x, law, alpha, mu)) /
                   (U - dU >= 0.0 ? 2.0 * dU : dU);
        }
    }
    const double g = gamma(law, m);
    const double w = U / g;
    const double dw_dU = (g - U * gamma_prime(law, m) * dm_dU) / (g * g);
    return dw_dU * (s_x - 2.0 * w);
}

// Thomas algorithm for (L_N + diag(d)) x = rhs. Returns false on a vanishing
// pivot.
inline bool solve_jacobian_tridiagonal(const Grid1D& grid, const Field& d, const Field& rhs,
                                       Field& x) {
    const std::size_t n = d.size();
    const double ih2 = 1.0 / (grid.h * grid.h);
    std::vector<double> diag(n), upper(n, ih2), work(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lap_diag = (i == 0 || i + 1 == n) ? -ih2 : -2.0 * ih2;
        diag[i] = lap_diag + d[i];
    }
    // forward sweep
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(diag[i]) + 2.0 * ih2);
    if (std::abs(diag[0]) < 1e-14 * scale) return false;
    work[0] = upper[0] / diag[0];
    x[0] = rhs[0] / diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double lower = ih2;
        const double denom = diag[i] - lower * work[i - 1];
        if (std::abs(denom) < 1e-14 * scale) return false;
        work[i] = upper[i] / denom;
        x[i] = (rhs[i] - lower * x[i - 1]) / denom;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= work[i] * x[i + 1];
    return true;
}

} // namespace detail

// Damped Newton on the reduced semilinear U-equation
//   0 = Lap U + (U/gamma(m(U))) (s - U/gamma(m(U))),  no-flux boundaries,
// with a pseudo-time globalizer as fallback. The default initial guess takes
// u = s in the memory relation and sets U = gamma(m)s; U_init overrides it
// (uniqueness probes restart the solve from elsewhere).
inline LogisticSteady solve_logistic_steady(const Grid1D& grid, const Field& s, const Field& sbar,
                                            const MotilityLaw& law, double alpha, double mu,
                                            const Field* U_init = nullptr) {
    const std::size_t n = static_cast<std::size_t>(grid.n_cells);
    require(s.size() == n && sbar.size() == n, "solve_logistic_steady: field/grid size mismatch");
    require(alpha >= 0.0 && mu >= 0.0, "solve_logistic_steady: alpha, mu must be nonnegative");
    for (double v : s) require(v > 0.0, "solve_logistic_steady: s must be strictly positive");

    LogisticSteady out;
    const double M_band = alpha * max_value(sbar);
    if (M_band > 0.0) {
        out.existence = check_existence_condition(law, M_band);
        if (mu > 0.0) out.uniqueness = check_uniqueness_condition(law, M_band, mu, max_value(s));
    } else {
        out.existence.pass = true;
        out.existence.threshold = 0.0;
        out.uniqueness.pass = true;
    }

    Field U(n);
    if (U_init) {
        require(U_init->size() == n, "solve_logistic_steady: U_init size mismatch");
        for (double v : *U_init) require(v > 0.0, "solve_logistic_steady: U_init must be positive");
        U = *U_init;
    } else {
        for (std::size_t i = 0; i < n; ++i)
            U[i] = gamma(law, detail::memory_of_u(s[i], sbar[i], alpha, mu)) * s[i];
    }

    Field R(n), lap(n), d(n), delta(n), trial(n), trial_R(n);
    const auto residual = [&](const Field& V, Field& res) {
        detail::apply_neumann_laplacian(grid, V, res);
        for (std::size_t i = 0; i < n; ++i)
            res[i] += detail::logistic_reaction(V[i], s[i], sbar[i], law, alpha, mu);
    };

    constexpr double tol = 1e-10;
    const int max_newton = 60;
    const auto newton_loop = [&]() -> bool {
        residual(U, R);
        double rnorm = linf_norm(R);
        for (int it = 0; it < max_newton; ++it) {
            if (rnorm <= tol) {
                out.residual = rnorm;
                out.newton_iterations += it;
                return true;
            }
            for (std::size_t i = 0; i < n; ++i) {
                d[i] = detail::logistic_reaction_derivative(U[i], s[i], sbar[i], law, alpha, mu);
                R[i] = -R[i];
            }
            if (!detail::solve_jacobian_tridiagonal(grid, d, R, delta)) return false;
            double step = 1.0;
            bool accepted = false;
            for (int half = 0; half < 40; ++half) {
                bool positive = true;
                for (std::size_t i = 0; i < n; ++i) {
                    trial[i] = U[i] + step * delta[i];
                    if (trial[i] <= 0.0) {
                        positive = false;
                        break;
                    }
                }
                if (positive) {
                    residual(trial, trial_R);
                    const double tnorm = linf_norm(trial_R);
                    if (tnorm < rnorm) {
                        U = trial;
                        R = trial_R;
                        rnorm = tnorm;
                        accepted = true;
                        break;
                    }
                }
                step *= 0.5;
            }
            if (!accepted) return false;
        }
        out.residual = rnorm;
        return rnorm <= tol;
    };

    bool ok = newton_loop();
    if (!ok) {
        // pseudo-time march of U_t = Lap U + reaction, then retry Newton
        out.used_fallback = true;
        const double tau = 0.2 * grid.h * grid.h;
        const long long max_steps = 5000000;
        const long long check_every = 2000;
        for (long long step_count = 0; step_count < max_steps; ++step_count) {
            residual(U, R);
            if (step_count % check_every == 0 && linf_norm(R) < 1e-6) break;
            for (std::size_t i = 0; i < n; ++i) {
                U[i] += tau * R[i];
                if (U[i] < 1e-14) U[i] = 1e-14;
            }
            ++out.pseudo_time_steps;
        }
        ok = newton_loop();
        if (!ok) {
            residual(U, R);
            throw solver_error("solve_logistic_steady: Newton and pseudo-time both failed "
                               "(residual " + std::to_string(linf_norm(R)) + " after " +
                               std::to_string(out.pseudo_time_steps) + " pseudo-time steps)");
        }
    }

    out.U_star = U;
    out.u_star.assign(n, 0.0);
    out.m_star.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        out.m_star[i] = solve_memory_given_U(U[i], sbar[i], law, alpha, mu);
        out.u_star[i] = U[i] / gamma(law, out.m_star[i]);
    }
    return out;
}

} // namespace cogmap

#endif
