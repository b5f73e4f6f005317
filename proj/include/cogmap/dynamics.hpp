#ifndef COGMAP_DYNAMICS_HPP
#define COGMAP_DYNAMICS_HPP

#include <cmath>
#include <cstddef>
#include <iostream>
#include <string>
#include <vector>

#include "cogmap/grid.hpp"
#include "cogmap/motility.hpp"
#include "cogmap/perception.hpp"

namespace cogmap {

enum class GrowthKind { none, logistic };

struct SimState {
    Field u;
    Field m;
    double t = 0.0;
    PerceivedField sbar;  // frozen for the whole run
    double initial_mass = 0.0;
};

struct StepperConfig {
    double dt_safety = 0.4;     // fraction of the explicit diffusion limit
    double t_final = 0.0;
    GrowthKind growth = GrowthKind::none;
    double alpha = 0.0;
    double mu = 0.0;
    double record_every = 0.0;  // <= 0: snapshots at t = 0 and t_final only
};

struct Snapshot {
    double t = 0.0;
    Field u;
    Field m;
};

struct AdvanceResult {
    SimState state;
    std::vector<Snapshot> snapshots;
    double max_mass_drift = 0.0;  // max relative |mass(t) - mass(0)| over snapshots
    long long steps = 0;
};

namespace detail {

// e^{-x} for x >= 0. Small arguments take a degree-6 Taylor path whose
// truncation error is below one ulp for x <= 1/64; the stepper spends almost
// all its exp budget there.
inline double exp_neg(double x) {
    if (x < 0.015625) {
        return 1.0 + x * (-1.0 + x * (0.5 + x * (-1.0 / 6.0 + x * (1.0 / 24.0 +
               x * (-1.0 / 120.0 + x * (1.0 / 720.0))))));
    }
    return std::exp(-x);
}

// Exact solution at time dt of m' = (alpha*sbar - m) u - mu m with u frozen.
inline double memory_cell_update(double m, double u, double sbar, double alpha, double mu,
                                 double dt) {
    const double lambda = u + mu;
    if (lambda <= 0.0) return m;
    const double m_star = alpha * sbar * u / lambda;
    return m_star + (m - m_star) * exp_neg(lambda * dt);
}

} // namespace detail

// Conservative flux form of (gamma(m) u)'' with no-flux boundaries:
// rhs_i = (F_{i+1/2} - F_{i-1/2}) / h, F = (P_{i+1} - P_i)/h, P = gamma(m) u.
// h * sum(rhs) telescopes to zero.
inline Field diffusion_rhs(const Grid1D& grid, const Field& u, const Field& m,
                           const MotilityLaw& law) {
    const std::size_t n = static_cast<std::size_t>(grid.n_cells);
    require(u.size() == n && m.size() == n, "diffusion_rhs: field/grid size mismatch");
    Field p(n);
    for (std::size_t i = 0; i < n; ++i) {
        require(m[i] >= 0.0, "diffusion_rhs: m must be nonnegative");
        p[i] = gamma(law, m[i]) * u[i];
    }
    Field rhs(n);
    const double inv_h = 1.0 / grid.h;
    double flux_left = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double flux_right = (i + 1 < n) ? (p[i + 1] - p[i]) * inv_h : 0.0;
        rhs[i] = (flux_right - flux_left) * inv_h;
        flux_left = flux_right;
    }
    return rhs;
}

// Exact exponential update of the memory field over one step with u frozen.
inline Field memory_step(Field m, const Field& u, const Field& sbar, double alpha, double mu,
                         double dt) {
    require(dt >= 0.0, "memory_step: dt must be nonnegative");
    require(m.size() == u.size() && m.size() == sbar.size(), "memory_step: size mismatch");
    for (std::size_t i = 0; i < m.size(); ++i)
        m[i] = detail::memory_cell_update(m[i], u[i], sbar[i], alpha, mu, dt);
    return m;
}

inline Field growth_term(const Field& u, const Field& s, GrowthKind kind) {
    require(u.size() == s.size(), "growth_term: size mismatch");
    Field g(u.size(), 0.0);
    if (kind == GrowthKind::logistic)
        for (std::size_t i = 0; i < u.size(); ++i) g[i] = u[i] * (s[i] - u[i]);
    return g;
}

inline SimState make_state(const Grid1D& grid, Field u0, Field m0, PerceivedField sbar) {
    require(u0.size() == static_cast<std::size_t>(grid.n_cells), "make_state: u0 size mismatch");
    require(m0.size() == static_cast<std::size_t>(grid.n_cells), "make_state: m0 size mismatch");
    for (double v : u0) require(v >= 0.0, "make_state: u0 must be nonnegative");
    for (double v : m0) require(v >= 0.0, "make_state: m0 must be nonnegative");
    SimState st;
    st.initial_mass = integrate(grid, u0);
    st.u = std::move(u0);
    st.m = std::move(m0);
    st.sbar = std::move(sbar);
    st.t = 0.0;
    return st;
}

// Operator-split explicit march to cfg.t_final: Euler on u (diffusion +
// growth, m frozen), then the exact memory update with the new u frozen.
// dt never exceeds dt_safety * h^2 / (2 gamma(0)); gamma(0) bounds the
// diffusivity because gamma is decreasing and m stays nonnegative.
inline AdvanceResult advance(const Grid1D& grid, SimState state, const StepperConfig& cfg,
                             const MotilityLaw& law, const Field& s) {
    const std::size_t n = static_cast<std::size_t>(grid.n_cells);
    require(state.u.size() == n && state.m.size() == n && s.size() == n,
            "advance: field/grid size mismatch");
    require(state.sbar.sbar.size() == n, "advance: perceived field size mismatch");
    require(cfg.dt_safety > 0.0 && cfg.dt_safety <= 1.0, "advance: dt_safety must lie in (0, 1]");
    require(cfg.t_final >= 0.0 && is_finite(cfg.t_final), "advance: t_final must be finite");
    require(cfg.alpha >= 0.0 && cfg.mu >= 0.0, "advance: alpha and mu must be nonnegative");

    const Field& sbar = state.sbar.sbar;
    for (std::size_t i = 0; i < n; ++i) {
        if (state.m[i] > cfg.alpha * sbar[i]) {
            std::cerr << "advance: warning: m0 exceeds alpha*sbar at cell " << i
                      << "; the memory band becomes max(m0, alpha*sbar)\n";
            break;
        }
    }

    // snapshot times: 0, record_every, 2*record_every, ..., t_final
    std::vector<double> record_times{0.0};
    if (cfg.record_every > 0.0) {
        for (double t = cfg.record_every; t < cfg.t_final - 1e-12 * std::max(1.0, cfg.t_final);
             t += cfg.record_every)
            record_times.push_back(t);
    }
    if (cfg.t_final > 0.0) record_times.push_back(cfg.t_final);

    AdvanceResult out;
    out.snapshots.push_back({state.t, state.u, state.m});

    const double dt_max = cfg.dt_safety * grid.h * grid.h / (2.0 * gamma(law, 0.0));
    const double inv_h = 1.0 / grid.h;
    const bool logistic = cfg.growth == GrowthKind::logistic;
    Field p(n);

    for (std::size_t seg = 1; seg < record_times.size(); ++seg) {
        const double t_a = record_times[seg - 1];
        const double t_b = record_times[seg];
        const long long n_steps =
            std::max<long long>(1, static_cast<long long>(std::ceil((t_b - t_a) / dt_max - 1e-9)));
        const double dt = (t_b - t_a) / static_cast<double>(n_steps);
        const double dt_over_h = dt * inv_h;

        for (long long step = 0; step < n_steps; ++step) {
            for (std::size_t i = 0; i < n; ++i) p[i] = gamma(law, state.m[i]) * state.u[i];
            double flux_left = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double flux_right = (i + 1 < n) ? (p[i + 1] - p[i]) * inv_h : 0.0;
                double ui = state.u[i] + dt_over_h * (flux_right - flux_left);
                if (logistic) ui += dt * state.u[i] * (s[i] - state.u[i]);
                flux_left = flux_right;
                if (ui < 0.0) {
                    if (ui < -1e-13)
                        throw blowup_error("advance: negative density " + std::to_string(ui) +
                                           " at cell " + std::to_string(i) + ", t = " +
                                           std::to_string(t_a + dt * static_cast<double>(step)));
                    ui = 0.0;
                }
                if (!(ui <= 1e6))
                    throw blowup_error("advance: density blow-up (u = " + std::to_string(ui) +
                                       ") at cell " + std::to_string(i));
                state.u[i] = ui;
            }
            for (std::size_t i = 0; i < n; ++i)
                state.m[i] =
                    detail::memory_cell_update(state.m[i], state.u[i], sbar[i], cfg.alpha, cfg.mu, dt);
            ++out.steps;
        }
        state.t = t_b;
        out.snapshots.push_back({state.t, state.u, state.m});
        if (cfg.growth == GrowthKind::none && state.initial_mass > 0.0) {
            const double drift =
                std::abs(integrate(grid, state.u) - state.initial_mass) / state.initial_mass;
            out.max_mass_drift = std::max(out.max_mass_drift, drift);
        }
    }

    out.state = std::move(state);
    return out;
}

} // namespace cogmap

#endif
