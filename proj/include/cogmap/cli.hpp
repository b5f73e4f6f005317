#ifndef COGMAP_CLI_HPP
#define COGMAP_CLI_HPP

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "cogmap/config.hpp"
#include "cogmap/csv.hpp"
#include "cogmap/diagnostics.hpp"
#include "cogmap/plot.hpp"
#include "cogmap/steady_state.hpp"
#include "cogmap/sweep.hpp"

namespace cogmap {

namespace cli_detail {

inline RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    RunConfig cfg = parse_config_file(path);
    for (const std::string& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw config_error("--set expects key=value, got '" + kv + "'");
        apply_config_key(cfg, detail::trim(kv.substr(0, eq)), kv.substr(eq + 1));
    }
    return cfg;
}

inline std::string replace_extension(const std::string& path, const std::string& ext) {
    const auto dot = path.find_last_of('.');
    const auto slash = path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + ext;
    return path.substr(0, dot) + ext;
}

inline int run_simulate(const RunConfig& cfg, const std::string& out, bool plot) {
    const ResolvedRun run = resolve(cfg);
    SimState state = make_state(run.grid, run.u0, run.m0, run.sbar);
    const AdvanceResult res = advance(run.grid, std::move(state), run.stepper, run.law, run.s);
    emit_profile_csv(out, run.grid, res.snapshots, run.sbar.sbar, run.s);
    std::cout << "simulate: t_final = " << format_double(res.state.t)
              << ", steps = " << res.steps
              << ", max u = " << format_double(max_value(res.state.u))
              << ", total u = " << format_double(integrate(run.grid, res.state.u));
    if (run.stepper.growth == GrowthKind::none)
        std::cout << ", mass drift = " << format_double(res.max_mass_drift);
    std::cout << ", wrote " << out << "\n";
    if (plot) {
        const Field& u = res.snapshots.back().u;
        write_svg_lineplot(replace_extension(out, ".svg"), run.grid.centers,
                           {u, run.s, run.sbar.sbar}, "u, s, sbar at t_final");
    }
    return 0;
}

inline int run_steady(const RunConfig& cfg, const std::string& out, const std::string& mode_name,
                      bool plot) {
    const ResolvedRun run = resolve(cfg);
    SolveMode mode;
    if (!mode_name.empty())
        mode = parse_solve_mode(mode_name);
    else
        mode = (run.stepper.growth == GrowthKind::logistic) ? SolveMode::steady_logistic
                                                            : SolveMode::steady_movement;
    if (mode == SolveMode::dynamics)
        throw config_error("steady: --mode must be steady_movement or steady_logistic");

    Field u, m;
    std::string metadata;
    if (mode == SolveMode::steady_movement) {
        const double M = integrate(run.grid, run.u0);
        const MovementSteady st = solve_movement_steady(run.grid, run.sbar.sbar, run.law,
                                                        run.stepper.alpha, run.stepper.mu, M);
        u = st.u_inf;
        m = st.m_inf;
        metadata = "K = " + format_double(st.K) + ", M = " + format_double(st.M) +
                   ", residual = " + format_double(st.flux_residual) +
                   ", iterations = " + std::to_string(st.outer_iterations);
    } else {
        const LogisticSteady st = solve_logistic_steady(run.grid, run.s, run.sbar.sbar, run.law,
                                                        run.stepper.alpha, run.stepper.mu);
        if (!st.existence.pass)
            std::cerr << "steady: warning: existence condition fails (sup|gamma'/gamma| = "
                      << format_double(st.existence.sup_ratio) << " >= "
                      << format_double(st.existence.threshold) << "); proceeding\n";
        u = st.u_star;
        m = st.m_star;
        metadata = "residual = " + format_double(st.residual) +
                   ", iterations = " + std::to_string(st.newton_iterations) +
                   ", fallback = " + (st.used_fallback ? std::string("yes") : std::string("no"));
    }
    emit_steady_csv(out, run.grid, u, m, run.sbar.sbar, run.s, metadata);
    std::cout << "steady: max u = " << format_double(max_value(u))
              << ", total u = " << format_double(integrate(run.grid, u)) << ", " << metadata
              << ", wrote " << out << "\n";
    if (plot)
        write_svg_lineplot(replace_extension(out, ".svg"), run.grid.centers, {u, run.s},
                           "steady u and s");
    return 0;
}

inline int run_sweep_cmd(const RunConfig& cfg, const std::string& out, const std::string& axis,
                         const std::string& values, const std::string& mode_name, int workers,
                         bool plot) {
    SweepPlan plan;
    plan.base = cfg;
    plan.axis = parse_axis(axis);
    plan.values = parse_axis_values(values);
    plan.mode = mode_name.empty() ? SolveMode::dynamics : parse_solve_mode(mode_name);
    plan.workers = workers;
    const std::vector<SweepPoint> points = run_sweep(plan);
    emit_report_csv(out, points);
    int failed = 0;
    for (const auto& p : points)
        if (!p.ok) ++failed;
    std::cout << "sweep: " << points.size() << " points, " << failed << " failed, wrote " << out
              << "\n";
    if (plot) {
        std::vector<double> ys;
        ys.reserve(points.size());
        for (const auto& p : points) ys.push_back(p.max_u);
        write_svg_lineplot(replace_extension(out, ".svg"), plan.values, {ys}, "max u vs " + axis);
    }
    return failed == 0 ? 0 : 2;
}

inline int run_diagnose(const RunConfig& cfg, const std::string& out) {
    const ResolvedRun run = resolve(cfg);
    const double M = integrate(run.grid, run.u0);
    const MovementSteady st = solve_movement_steady(run.grid, run.sbar.sbar, run.law,
                                                    run.stepper.alpha, run.stepper.mu, M);
    const DmuProfile prof =
        dmu_steady(st, run.grid, run.sbar.sbar, run.law, run.stepper.alpha, run.stepper.mu);
    const EigenResult eig = principal_eigenvalue(run.grid, run.s, gamma(run.law, 0.0));
    const MassComparison mc = mass_comparison(run.grid, st.u_inf, run.s);
    const Mu0SignReport sign =
        classify_mu0_sign(run.grid, run.sbar.sbar, run.law, run.stepper.alpha);

    std::string text;
    text += "# alpha = " + format_double(run.stepper.alpha) +
            ", mu = " + format_double(run.stepper.mu) + ", K = " + format_double(st.K) +
            ", M = " + format_double(st.M) + "\n";
    text += "# dKdmu = " + format_double(prof.dKdmu) + "\n";
    text += "# lambda1 = " + format_double(eig.lambda1) +
            ", lower_bound = " + format_double(integrate(run.grid, run.s) / run.grid.length()) +
            ", extinction_unstable = " + (eig.lambda1 > 0.0 ? std::string("yes") : std::string("no")) +
            "\n";
    text += "# total_u = " + format_double(mc.total_u) + ", total_s = " + format_double(mc.total_s) +
            ", exceeds = " + (mc.exceeds ? std::string("yes") : std::string("no")) + "\n";
    text += "# mu0_sign = " + std::to_string(sign.sign) +
            ", alpha1 = " + format_double(sign.alpha1) + ", alpha2 = " + format_double(sign.alpha2) +
            "\n";
    text += "x,u,m,dudmu\n";
    for (int i = 0; i < run.grid.n_cells; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        text += format_double(run.grid.centers[k]) + "," + format_double(st.u_inf[k]) + "," +
                format_double(st.m_inf[k]) + "," + format_double(prof.dudmu[k]) + "\n";
    }
    detail::write_text_file(out, text);
    std::cout << "diagnose: lambda1 = " << format_double(eig.lambda1)
              << ", total_u = " << format_double(mc.total_u)
              << ", total_s = " << format_double(mc.total_s) << ", wrote " << out << "\n";
    return 0;
}

} // namespace cli_detail

inline int cli_main(int argc, const char* const* argv) {
    CLI::App app{"memory-driven movement and population dynamics on 1D landscapes"};
    app.require_subcommand(1);

    std::string config_path, out_path, axis = "mu", values, mode_name;
    std::vector<std::string> overrides;
    int workers = 1;
    bool plot = false;

    const auto add_common = [&](CLI::App* cmd, bool with_plot = true) {
        cmd->add_option("--config", config_path, "config file (section.key = value)")->required();
        cmd->add_option("--out", out_path, "output path (overrides output.path)");
        cmd->add_option("--set", overrides, "override a config key, e.g. --set dynamics.mu=0.4");
        if (with_plot) cmd->add_flag("--plot", plot, "also write a small SVG line plot");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "march the coupled system to t_final");
    add_common(simulate);
    CLI::App* steady = app.add_subcommand("steady", "solve the stationary problem directly");
    add_common(steady);
    steady->add_option("--mode", mode_name, "steady_movement or steady_logistic");
    CLI::App* sweep = app.add_subcommand("sweep", "run a parameter sweep and tabulate the results");
    add_common(sweep);
    sweep->add_option("--axis", axis, "sweep axis: mu, alpha or R");
    sweep->add_option("--values", values, "start:step:end or comma list")->required();
    sweep->add_option("--mode", mode_name, "dynamics, steady_movement or steady_logistic");
    sweep->add_option("--workers", workers, "concurrent sweep points");
    CLI::App* diagnose =
        app.add_subcommand("diagnose", "steady profile, d u/d mu, lambda1 and mass comparison");
    add_common(diagnose, false);
    CLI::App* validate = app.add_subcommand("validate-config", "parse and echo the resolved config");
    add_common(validate, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const RunConfig cfg = cli_detail::load_config(config_path, overrides);
        const std::string out = out_path.empty() ? cfg.output_path : out_path;
        if (app.got_subcommand(simulate)) return cli_detail::run_simulate(cfg, out, plot);
        if (app.got_subcommand(steady)) return cli_detail::run_steady(cfg, out, mode_name, plot);
        if (app.got_subcommand(sweep))
            return cli_detail::run_sweep_cmd(cfg, out, axis, values, mode_name, workers, plot);
        if (app.got_subcommand(diagnose)) return cli_detail::run_diagnose(cfg, out);
        if (app.got_subcommand(validate)) {
            resolve(cfg);  // full validation, not just parsing
            std::cout << echo_config(cfg);
            return 0;
        }
    } catch (const blowup_error& e) {
        std::cerr << "numerical blow-up: " << e.what() << "\n";
        return 3;
    } catch (const solver_error& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 2;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace cogmap

#endif
