#ifndef COGMAP_SWEEP_HPP
#define COGMAP_SWEEP_HPP

#include <cmath>
#include <string>
#include <vector>

#include "cogmap/config.hpp"
#include "cogmap/diagnostics.hpp"

namespace cogmap {

enum class SweepAxis { mu, alpha, R };

struct SweepPlan {
    RunConfig base;
    SweepAxis axis = SweepAxis::mu;
    std::vector<double> values;
    SolveMode mode = SolveMode::dynamics;
    int workers = 1;
};

// "start:step:end" (inclusive, step > 0) or a comma-separated list.
inline std::vector<double> parse_axis_values(const std::string& text) {
    const auto c1 = text.find(':');
    if (c1 != std::string::npos) {
        const auto c2 = text.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw config_error("sweep: range must be start:step:end, got '" + text + "'");
        const double start = detail::parse_double("sweep.values", text.substr(0, c1));
        const double step = detail::parse_double("sweep.values", text.substr(c1 + 1, c2 - c1 - 1));
        const double end = detail::parse_double("sweep.values", text.substr(c2 + 1));
        if (!(step > 0.0) || end < start)
            throw config_error("sweep: range needs step > 0 and end >= start");
        const int count = static_cast<int>(std::floor((end - start) / step + 1e-9)) + 1;
        std::vector<double> out(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = start + step * i;
        return out;
    }
    std::vector<double> out = detail::parse_double_list("sweep.values", text);
    if (out.empty()) throw config_error("sweep: values list is empty");
    return out;
}

inline SweepAxis parse_axis(const std::string& name) {
    if (name == "mu") return SweepAxis::mu;
    if (name == "alpha") return SweepAxis::alpha;
    if (name == "R") return SweepAxis::R;
    throw config_error("sweep: unknown axis '" + name + "' (expected mu, alpha or R)");
}

inline SolveMode parse_solve_mode(const std::string& name) {
    if (name == "dynamics") return SolveMode::dynamics;
    if (name == "steady_movement") return SolveMode::steady_movement;
    if (name == "steady_logistic") return SolveMode::steady_logistic;
    throw config_error("sweep: unknown mode '" + name +
                       "' (expected dynamics, steady_movement or steady_logistic)");
}

inline RunSetup setup_from_resolved(const ResolvedRun& run, SolveMode mode) {
    RunSetup setup;
    setup.grid = run.grid;
    setup.s = run.s;
    setup.sbar = run.sbar;
    setup.law = run.law;
    setup.mode = mode;
    setup.growth = run.stepper.growth;
    setup.t_final = run.stepper.t_final;
    setup.dt_safety = run.stepper.dt_safety;
    setup.u0 = run.u0;
    setup.m0 = run.m0;
    return setup;
}

// Executes the plan; points run concurrently up to plan.workers and the
// result order always follows plan.values, so the emitted report is
// byte-identical for any worker count.
inline std::vector<SweepPoint> run_sweep(const SweepPlan& plan) {
    require(!plan.values.empty(), "sweep: values must be nonempty");
    for (double v : plan.values)
        require(is_finite(v), "sweep: axis values must be finite");

    std::vector<SweepPoint> points(plan.values.size());

    if (plan.axis == SweepAxis::R) {
        // the kernel changes per point: rebuild the perception field each time
        detail::parallel_for_index(plan.values.size(), plan.workers, [&](std::size_t i) {
            try {
                RunConfig cfg = plan.base;
                cfg.kernel_R = plan.values[i];
                const ResolvedRun run = resolve(cfg);
                const RunSetup setup = setup_from_resolved(run, plan.mode);
                points[i] = run_sweep_point(setup, cfg.dynamics_alpha, cfg.dynamics_mu);
            } catch (const std::exception& e) {
                points[i].alpha = plan.base.dynamics_alpha;
                points[i].mu = plan.base.dynamics_mu;
                points[i].ok = false;
                points[i].error = e.what();
            }
        });
        return points;
    }

    const ResolvedRun run = resolve(plan.base);
    const RunSetup setup = setup_from_resolved(run, plan.mode);
    detail::parallel_for_index(plan.values.size(), plan.workers, [&](std::size_t i) {
        const double alpha =
            (plan.axis == SweepAxis::alpha) ? plan.values[i] : plan.base.dynamics_alpha;
        const double mu = (plan.axis == SweepAxis::mu) ? plan.values[i] : plan.base.dynamics_mu;
        points[i] = run_sweep_point(setup, alpha, mu);
    });
    return points;
}

} // namespace cogmap

#endif
