#ifndef COGMAP_CONFIG_HPP
#define COGMAP_CONFIG_HPP

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cogmap/dynamics.hpp"
#include "cogmap/format.hpp"
#include "cogmap/grid.hpp"
#include "cogmap/landscape.hpp"
#include "cogmap/motility.hpp"
#include "cogmap/perception.hpp"

namespace cogmap {

// Full run description. Parsed from `section.key = value` files with `#`
// comments; unknown keys are hard errors so misspellings cannot silently fall
// back to defaults.
struct RunConfig {
    double grid_ell = 5.0;
    int grid_n_cells = 512;

    std::string landscape_kind = "gaussian";
    double landscape_value = 1.0;
    double landscape_offset = 0.1;
    double landscape_peak1_amp = 0.6, landscape_peak1_center = -1.5, landscape_peak1_width = 0.8;
    double landscape_peak2_amp = 0.3, landscape_peak2_center = 2.0, landscape_peak2_width = 0.8;
    std::vector<double> landscape_table;

    std::string kernel_shape = "bump";
    double kernel_R = 1.5;
    std::string kernel_mode = "normalized";

    std::string motility_kind = "power";
    double motility_c = 1.0;
    double motility_k = 2.0;
    double motility_gamma0 = 1.0;

    double dynamics_alpha = 10.0;
    double dynamics_mu = 0.5;
    std::string dynamics_growth = "none";
    double dynamics_t_final = 500.0;
    double dynamics_dt_safety = 0.4;
    double dynamics_record_every = 0.0;

    std::string init_u0 = "landscape";
    double init_u0_value = 1.0;
    std::vector<double> init_u0_table;
    std::string init_m0 = "zero";
    std::vector<double> init_m0_table;

    std::string output_path = "out.csv";
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    double out = 0.0;
    const char* first = v.data();
    const char* last = v.data() + v.size();
    // std::from_chars does not accept a leading '+'
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last)
        throw config_error("config: key '" + key + "' has invalid numeric value '" + value + "'");
    return out;
}

inline int parse_int(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    int out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        throw config_error("config: key '" + key + "' has invalid integer value '" + value + "'");
    return out;
}

inline std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::string item;
    std::istringstream ss(value);
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw config_error("config: key '" + key + "' has an empty list entry");
        out.push_back(parse_double(key, item));
    }
    return out;
}

inline void check_choice(const std::string& key, const std::string& value,
                         std::initializer_list<const char*> choices) {
    for (const char* c : choices)
        if (value == c) return;
    std::string msg = "config: key '" + key + "' has invalid value '" + value + "' (expected one of";
    for (const char* c : choices) msg += std::string(" ") + c;
    throw config_error(msg + ")");
}

} // namespace detail

inline void apply_config_key(RunConfig& cfg, const std::string& key, const std::string& raw_value) {
    using detail::parse_double;
    using detail::parse_double_list;
    using detail::parse_int;
    const std::string value = detail::trim(raw_value);
    if (key == "grid.ell") cfg.grid_ell = parse_double(key, value);
    else if (key == "grid.n_cells") cfg.grid_n_cells = parse_int(key, value);
    else if (key == "landscape.kind") {
        detail::check_choice(key, value, {"constant", "gaussian", "sharp_gaussian", "asymmetric", "custom"});
        cfg.landscape_kind = value;
    }
    else if (key == "landscape.value") cfg.landscape_value = parse_double(key, value);
    else if (key == "landscape.offset") cfg.landscape_offset = parse_double(key, value);
    else if (key == "landscape.peak1_amp") cfg.landscape_peak1_amp = parse_double(key, value);
    else if (key == "landscape.peak1_center") cfg.landscape_peak1_center = parse_double(key, value);
    else if (key == "landscape.peak1_width") cfg.landscape_peak1_width = parse_double(key, value);
    else if (key == "landscape.peak2_amp") cfg.landscape_peak2_amp = parse_double(key, value);
    else if (key == "landscape.peak2_center") cfg.landscape_peak2_center = parse_double(key, value);
    else if (key == "landscape.peak2_width") cfg.landscape_peak2_width = parse_double(key, value);
    else if (key == "landscape.table") cfg.landscape_table = parse_double_list(key, value);
    else if (key == "kernel.shape") {
        detail::check_choice(key, value, {"bump", "top_hat"});
        cfg.kernel_shape = value;
    }
    else if (key == "kernel.R") cfg.kernel_R = parse_double(key, value);
    else if (key == "kernel.mode") {
        detail::check_choice(key, value, {"truncated", "normalized"});
        cfg.kernel_mode = value;
    }
    else if (key == "motility.kind") {
        detail::check_choice(key, value, {"power", "constant"});
        cfg.motility_kind = value;
    }
    else if (key == "motility.c") cfg.motility_c = parse_double(key, value);
    else if (key == "motility.k") cfg.motility_k = parse_double(key, value);
    else if (key == "motility.gamma0") cfg.motility_gamma0 = parse_double(key, value);
    else if (key == "dynamics.alpha") cfg.dynamics_alpha = parse_double(key, value);
    else if (key == "dynamics.mu") cfg.dynamics_mu = parse_double(key, value);
    else if (key == "dynamics.growth") {
        detail::check_choice(key, value, {"none", "logistic"});
        cfg.dynamics_growth = value;
    }
    else if (key == "dynamics.t_final") cfg.dynamics_t_final = parse_double(key, value);
    else if (key == "dynamics.dt_safety") cfg.dynamics_dt_safety = parse_double(key, value);
    else if (key == "dynamics.record_every") cfg.dynamics_record_every = parse_double(key, value);
    else if (key == "init.u0") {
        detail::check_choice(key, value, {"landscape", "constant", "tabulated"});
        cfg.init_u0 = value;
    }
    else if (key == "init.u0_value") cfg.init_u0_value = parse_double(key, value);
    else if (key == "init.u0_table") cfg.init_u0_table = parse_double_list(key, value);
    else if (key == "init.m0") {
        detail::check_choice(key, value, {"zero", "alpha_sbar", "tabulated"});
        cfg.init_m0 = value;
    }
    else if (key == "init.m0_table") cfg.init_m0_table = parse_double_list(key, value);
    else if (key == "output.path") cfg.output_path = value;
    else throw config_error("config: unknown key '" + key + "'");
}

inline RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config: line " + std::to_string(line_no) +
                               " is not of the form 'section.key = value'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = line.substr(eq + 1);
        apply_config_key(cfg, key, value);
    }
    return cfg;
}

inline RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

// --- resolution into model objects ---------------------------------------

struct ResolvedRun {
    Grid1D grid;
    LandscapeSpec landscape;
    Field s;
    KernelShape kernel;
    PerceptionMode mode = PerceptionMode::normalized;
    PerceivedField sbar;
    MotilityLaw law;
    StepperConfig stepper;
    Field u0;
    Field m0;
};

inline LandscapeSpec landscape_from_config(const RunConfig& cfg) {
    LandscapeSpec spec;
    if (cfg.landscape_kind == "constant") spec = LandscapeSpec::constant(cfg.landscape_value);
    else if (cfg.landscape_kind == "gaussian") spec = LandscapeSpec::gaussian(cfg.landscape_offset);
    else if (cfg.landscape_kind == "sharp_gaussian") spec = LandscapeSpec::sharp_gaussian(cfg.landscape_offset);
    else if (cfg.landscape_kind == "asymmetric") {
        spec = LandscapeSpec::asymmetric();
        spec.offset = cfg.landscape_offset;
        spec.peak1_amp = cfg.landscape_peak1_amp;
        spec.peak1_center = cfg.landscape_peak1_center;
        spec.peak1_width = cfg.landscape_peak1_width;
        spec.peak2_amp = cfg.landscape_peak2_amp;
        spec.peak2_center = cfg.landscape_peak2_center;
        spec.peak2_width = cfg.landscape_peak2_width;
    } else {
        spec = LandscapeSpec::custom(cfg.landscape_table);
    }
    return spec;
}

inline ResolvedRun resolve(const RunConfig& cfg) {
    ResolvedRun run;
    run.grid = make_grid(cfg.grid_ell, cfg.grid_n_cells);
    run.landscape = landscape_from_config(cfg);
    run.s = sample_landscape(run.landscape, run.grid);

    run.kernel.variant = (cfg.kernel_shape == "bump") ? KernelShape::Variant::bump
                                                      : KernelShape::Variant::top_hat;
    run.kernel.radius = cfg.kernel_R;
    run.mode = (cfg.kernel_mode == "truncated") ? PerceptionMode::truncated
                                                : PerceptionMode::normalized;
    run.sbar = perceive(run.grid, run.s, run.kernel, run.mode);

    run.law = (cfg.motility_kind == "power") ? MotilityLaw::power(cfg.motility_c, cfg.motility_k)
                                             : MotilityLaw::constant(cfg.motility_gamma0);

    if (cfg.dynamics_dt_safety <= 0.0 || cfg.dynamics_dt_safety > 1.0)
        throw config_error("config: dynamics.dt_safety must lie in (0, 1]");
    if (cfg.dynamics_alpha < 0.0) throw config_error("config: dynamics.alpha must be nonnegative");
    if (cfg.dynamics_mu < 0.0) throw config_error("config: dynamics.mu must be nonnegative");
    if (cfg.dynamics_t_final < 0.0 || !is_finite(cfg.dynamics_t_final))
        throw config_error("config: dynamics.t_final must be finite and nonnegative");
    run.stepper.alpha = cfg.dynamics_alpha;
    run.stepper.mu = cfg.dynamics_mu;
    run.stepper.growth = (cfg.dynamics_growth == "logistic") ? GrowthKind::logistic : GrowthKind::none;
    run.stepper.t_final = cfg.dynamics_t_final;
    run.stepper.dt_safety = cfg.dynamics_dt_safety;
    run.stepper.record_every = cfg.dynamics_record_every;

    const std::size_t n = static_cast<std::size_t>(run.grid.n_cells);
    if (cfg.init_u0 == "landscape") run.u0 = run.s;
    else if (cfg.init_u0 == "constant") run.u0.assign(n, cfg.init_u0_value);
    else {
        if (cfg.init_u0_table.size() != n)
            throw config_error("config: init.u0_table needs one value per cell");
        run.u0 = cfg.init_u0_table;
    }
    for (double v : run.u0)
        if (v < 0.0) throw config_error("config: init.u0 must be nonnegative");

    if (cfg.init_m0 == "zero") run.m0.assign(n, 0.0);
    else if (cfg.init_m0 == "alpha_sbar") {
        run.m0.resize(n);
        for (std::size_t i = 0; i < n; ++i) run.m0[i] = cfg.dynamics_alpha * run.sbar.sbar[i];
    } else {
        if (cfg.init_m0_table.size() != n)
            throw config_error("config: init.m0_table needs one value per cell");
        run.m0 = cfg.init_m0_table;
    }
    for (double v : run.m0)
        if (v < 0.0) throw config_error("config: init.m0 must be nonnegative");

    return run;
}

// Canonical `key = value` listing of every key, suitable for re-parsing.
// Parsing the echo reproduces the same resolved configuration.
inline std::string echo_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "dynamics.alpha = " << format_double(cfg.dynamics_alpha) << "\n"
        << "dynamics.dt_safety = " << format_double(cfg.dynamics_dt_safety) << "\n"
        << "dynamics.growth = " << cfg.dynamics_growth << "\n"
        << "dynamics.mu = " << format_double(cfg.dynamics_mu) << "\n"
        << "dynamics.record_every = " << format_double(cfg.dynamics_record_every) << "\n"
        << "dynamics.t_final = " << format_double(cfg.dynamics_t_final) << "\n"
        << "grid.ell = " << format_double(cfg.grid_ell) << "\n"
        << "grid.n_cells = " << cfg.grid_n_cells << "\n"
        << "init.m0 = " << cfg.init_m0 << "\n";
    if (!cfg.init_m0_table.empty())
        out << "init.m0_table = " << format_double_list(cfg.init_m0_table) << "\n";
    out << "init.u0 = " << cfg.init_u0 << "\n";
    if (!cfg.init_u0_table.empty())
        out << "init.u0_table = " << format_double_list(cfg.init_u0_table) << "\n";
    out << "init.u0_value = " << format_double(cfg.init_u0_value) << "\n"
        << "kernel.R = " << format_double(cfg.kernel_R) << "\n"
        << "kernel.mode = " << cfg.kernel_mode << "\n"
        << "kernel.shape = " << cfg.kernel_shape << "\n"
        << "landscape.kind = " << cfg.landscape_kind << "\n"
        << "landscape.offset = " << format_double(cfg.landscape_offset) << "\n"
        << "landscape.peak1_amp = " << format_double(cfg.landscape_peak1_amp) << "\n"
        << "landscape.peak1_center = " << format_double(cfg.landscape_peak1_center) << "\n"
        << "landscape.peak1_width = " << format_double(cfg.landscape_peak1_width) << "\n"
        << "landscape.peak2_amp = " << format_double(cfg.landscape_peak2_amp) << "\n"
        << "landscape.peak2_center = " << format_double(cfg.landscape_peak2_center) << "\n"
        << "landscape.peak2_width = " << format_double(cfg.landscape_peak2_width) << "\n";
    if (!cfg.landscape_table.empty())
        out << "landscape.table = " << format_double_list(cfg.landscape_table) << "\n";
    out << "landscape.value = " << format_double(cfg.landscape_value) << "\n"
        << "motility.c = " << format_double(cfg.motility_c) << "\n"
        << "motility.gamma0 = " << format_double(cfg.motility_gamma0) << "\n"
        << "motility.k = " << format_double(cfg.motility_k) << "\n"
        << "motility.kind = " << cfg.motility_kind << "\n"
        << "output.path = " << cfg.output_path << "\n";
    return out.str();
}

} // namespace cogmap

#endif
