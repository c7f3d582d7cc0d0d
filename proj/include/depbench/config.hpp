#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "depbench/power.hpp"
#include "depbench/scenarios.hpp"
#include "depbench/types.hpp"

namespace depbench {

// Resolved options for the `run` subcommand.
struct CliOptions {
    GridConfig grid;
    std::filesystem::path out_dir = "out";

    CliOptions() { grid.noise_grid = default_noise_grid(); }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline double parse_real_opt(std::string_view v, std::string_view what) {
    double out = 0.0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size())
        throw UsageError(std::string(what) + ": expected a real number, got '" + std::string(v) + "'");
    return out;
}

inline long long parse_int_opt(std::string_view v, std::string_view what) {
    long long out = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size())
        throw UsageError(std::string(what) + ": expected an integer, got '" + std::string(v) + "'");
    return out;
}

inline std::uint64_t parse_u64_opt(std::string_view v, std::string_view what) {
    std::uint64_t out = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size())
        throw UsageError(std::string(what) + ": expected an unsigned integer, got '" + std::string(v) + "'");
    return out;
}

inline std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string_view::npos) next = s.size();
        const std::string_view item = trim(s.substr(pos, next - pos));
        if (!item.empty()) out.push_back(item);
        pos = next + 1;
    }
    return out;
}

}  // namespace detail

inline std::vector<Scenario> parse_scenario_list(std::string_view v) {
    if (detail::trim(v) == "all") return {kAllScenarios, kAllScenarios + 8};
    std::vector<Scenario> out;
    for (std::string_view item : detail::split_list(v)) {
        const auto s = scenario_from_name(item);
        if (!s) throw UsageError("--scenarios: unknown scenario '" + std::string(item) + "'");
        out.push_back(*s);
    }
    if (out.empty()) throw UsageError("--scenarios: empty list");
    return out;
}

inline std::vector<MeasureId> parse_measure_list(std::string_view v) {
    if (detail::trim(v) == "all") return {kAllMeasures, kAllMeasures + 3};
    std::vector<MeasureId> out;
    for (std::string_view item : detail::split_list(v)) {
        const auto m = measure_from_name(item);
        if (!m) throw UsageError("--measures: unknown measure '" + std::string(item) + "'");
        out.push_back(*m);
    }
    if (out.empty()) throw UsageError("--measures: empty list");
    return out;
}

// Either an explicit comma list (0.25,0.5,1) or a range start:step:count.
inline std::vector<double> parse_noise_spec(std::string_view v) {
    v = detail::trim(v);
    if (v.find(':') != std::string_view::npos) {
        std::vector<std::string_view> parts;
        std::size_t pos = 0;
        while (pos <= v.size()) {
            std::size_t next = v.find(':', pos);
            if (next == std::string_view::npos) next = v.size();
            parts.push_back(detail::trim(v.substr(pos, next - pos)));
            pos = next + 1;
        }
        if (parts.size() != 3)
            throw UsageError("--noise: range form is start:step:count");
        const double start = detail::parse_real_opt(parts[0], "--noise start");
        const double step = detail::parse_real_opt(parts[1], "--noise step");
        const long long count = detail::parse_int_opt(parts[2], "--noise count");
        if (count < 1) throw UsageError("--noise: count must be >= 1");
        return noise_range(start, step, static_cast<int>(count));
    }
    std::vector<double> out;
    for (std::string_view item : detail::split_list(v))
        out.push_back(detail::parse_real_opt(item, "--noise"));
    if (out.empty()) throw UsageError("--noise: empty list");
    return out;
}

inline int parse_workers(std::string_view v) {
    if (detail::trim(v) == "auto") return 0;
    const long long w = detail::parse_int_opt(v, "--workers");
    if (w < 0) throw UsageError("--workers: must be >= 0 (0 = auto)");
    return static_cast<int>(w);
}

namespace detail {

// One key=value assignment, shared by config-file entries and flags. Keys
// match the long flag names without the leading dashes.
inline void apply_option(std::string_view key, std::string_view value, CliOptions& opts) {
    if (key == "scenarios")
        opts.grid.scenarios = parse_scenario_list(value);
    else if (key == "noise")
        opts.grid.noise_grid = parse_noise_spec(value);
    else if (key == "n")
        opts.grid.n = static_cast<int>(parse_int_opt(value, "--n"));
    else if (key == "reps")
        opts.grid.reps = static_cast<int>(parse_int_opt(value, "--reps"));
    else if (key == "null-reps")
        opts.grid.null_reps = static_cast<int>(parse_int_opt(value, "--null-reps"));
    else if (key == "alpha")
        opts.grid.alpha = parse_real_opt(value, "--alpha");
    else if (key == "measures")
        opts.grid.measures = parse_measure_list(value);
    else if (key == "seed")
        opts.grid.master_seed = parse_u64_opt(value, "--seed");
    else if (key == "workers")
        opts.grid.worker_count = parse_workers(value);
    else if (key == "out-dir")
        opts.out_dir = std::string(value);
    else if (key == "mic-exponent")
        opts.grid.mic_params.grid_budget_exponent = parse_real_opt(value, "--mic-exponent");
    else if (key == "mic-clump-factor")
        opts.grid.mic_params.clump_factor =
            static_cast<int>(parse_int_opt(value, "--mic-clump-factor"));
    else
        throw UsageError("unknown option '" + std::string(key) + "'");
}

}  // namespace detail

// Flat key=value lines; # starts a comment, blank lines are skipped.
inline void apply_config_stream(std::istream& is, CliOptions& opts) {
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string_view s(line);
        if (const std::size_t hash = s.find('#'); hash != std::string_view::npos)
            s = s.substr(0, hash);
        s = detail::trim(s);
        if (s.empty()) continue;
        const std::size_t eq = s.find('=');
        if (eq == std::string_view::npos)
            throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
        const std::string_view key = detail::trim(s.substr(0, eq));
        const std::string_view value = detail::trim(s.substr(eq + 1));
        if (key == "config")
            throw UsageError("config line " + std::to_string(lineno) + ": nested config not supported");
        detail::apply_option(key, value, opts);
    }
}

inline void apply_config_file(const std::filesystem::path& path, CliOptions& opts) {
    std::ifstream is(path);
    if (!is) throw UsageError("--config: cannot open " + path.string());
    apply_config_stream(is, opts);
}

// Flags for the `run` subcommand; flag values override config-file values,
// which override defaults.
inline CliOptions parse_run_args(const std::vector<std::string>& args) {
    // --config applies first regardless of its position among the flags
    CliOptions opts;
    auto flag_value = [&](std::size_t& i, std::string_view flag,
                          std::string_view inline_value, bool has_inline) -> std::string {
        if (has_inline) return std::string(inline_value);
        if (i + 1 >= args.size()) throw UsageError(std::string(flag) + ": missing value");
        return args[++i];
    };

    std::vector<std::pair<std::string, std::string>> assignments;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string_view arg(args[i]);
        if (arg.rfind("--", 0) != 0)
            throw UsageError("unexpected argument '" + std::string(arg) + "'");
        std::string_view name = arg.substr(2);
        std::string_view inline_value;
        bool has_inline = false;
        if (const std::size_t eq = name.find('='); eq != std::string_view::npos) {
            inline_value = name.substr(eq + 1);
            name = name.substr(0, eq);
            has_inline = true;
        }
        const std::string value = flag_value(i, arg, inline_value, has_inline);
        if (name == "config")
            apply_config_file(value, opts);
        else
            assignments.emplace_back(std::string(name), value);
    }
    for (const auto& [key, value] : assignments) detail::apply_option(key, value, opts);

    try {
        validate(opts.grid);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return opts;
}

// Two columns of reals, whitespace- or comma-separated; # starts a comment.
inline Dataset read_two_column(std::istream& is) {
    Dataset d;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string_view s(line);
        if (const std::size_t hash = s.find('#'); hash != std::string_view::npos)
            s = s.substr(0, hash);
        std::string cleaned(s);
        for (char& c : cleaned)
            if (c == ',' || c == '\t') c = ' ';
        std::istringstream ls(cleaned);
        double x, y;
        if (!(ls >> x)) continue;  // blank line
        if (!(ls >> y))
            throw std::runtime_error("line " + std::to_string(lineno) + ": expected two values");
        double extra;
        if (ls >> extra)
            throw std::runtime_error("line " + std::to_string(lineno) + ": expected two values");
        d.x.push_back(x);
        d.y.push_back(y);
    }
    return d;
}

inline Dataset read_two_column_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path.string());
    return read_two_column(is);
}

// Options for the `measure` subcommand: depbench measure <cor|dcor|mic> <file>.
struct MeasureCmdOptions {
    MeasureId measure = MeasureId::Cor;
    std::filesystem::path input;
    MicParams mic_params;
};

inline MeasureCmdOptions parse_measure_args(const std::vector<std::string>& args) {
    MeasureCmdOptions opts;
    std::vector<std::string> positional;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string_view arg(args[i]);
        if (arg == "--mic-exponent" || arg == "--mic-clump-factor") {
            if (i + 1 >= args.size()) throw UsageError(std::string(arg) + ": missing value");
            const std::string& value = args[++i];
            if (arg == "--mic-exponent")
                opts.mic_params.grid_budget_exponent = detail::parse_real_opt(value, arg);
            else
                opts.mic_params.clump_factor =
                    static_cast<int>(detail::parse_int_opt(value, arg));
        } else if (arg.rfind("--", 0) == 0) {
            throw UsageError("measure: unknown flag '" + std::string(arg) + "'");
        } else {
            positional.push_back(args[i]);
        }
    }
    if (positional.size() != 2)
        throw UsageError("measure: expected <cor|dcor|mic> <input-file>");
    const auto m = measure_from_name(positional[0]);
    if (!m) throw UsageError("measure: unknown measure '" + positional[0] + "'");
    opts.measure = *m;
    opts.input = positional[1];
    try {
        validate(opts.mic_params);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return opts;
}

// Options for the `null-cutoff` subcommand.
struct CutoffCmdOptions {
    Scenario scenario = Scenario::Linear;
    MeasureId measure = MeasureId::Cor;
    double sigma = 1.0;
    int n = 320;
    int reps = 500;
    double alpha = 0.05;
    std::uint64_t seed = 1;
    MicParams mic_params;
};

inline CutoffCmdOptions parse_cutoff_args(const std::vector<std::string>& args) {
    CutoffCmdOptions opts;
    bool have_scenario = false, have_measure = false;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string_view arg(args[i]);
        if (arg.rfind("--", 0) != 0)
            throw UsageError("null-cutoff: unexpected argument '" + std::string(arg) + "'");
        if (i + 1 >= args.size()) throw UsageError(std::string(arg) + ": missing value");
        const std::string& value = args[++i];
        if (arg == "--scenario") {
            const auto s = scenario_from_name(value);
            if (!s) throw UsageError("--scenario: unknown scenario '" + value + "'");
            opts.scenario = *s;
            have_scenario = true;
        } else if (arg == "--measure") {
            const auto m = measure_from_name(value);
            if (!m) throw UsageError("--measure: unknown measure '" + value + "'");
            opts.measure = *m;
            have_measure = true;
        } else if (arg == "--sigma") {
            opts.sigma = detail::parse_real_opt(value, arg);
        } else if (arg == "--n") {
            opts.n = static_cast<int>(detail::parse_int_opt(value, arg));
        } else if (arg == "--reps") {
            opts.reps = static_cast<int>(detail::parse_int_opt(value, arg));
        } else if (arg == "--alpha") {
            opts.alpha = detail::parse_real_opt(value, arg);
        } else if (arg == "--seed") {
            opts.seed = detail::parse_u64_opt(value, arg);
        } else if (arg == "--mic-exponent") {
            opts.mic_params.grid_budget_exponent = detail::parse_real_opt(value, arg);
        } else if (arg == "--mic-clump-factor") {
            opts.mic_params.clump_factor = static_cast<int>(detail::parse_int_opt(value, arg));
        } else {
            throw UsageError("null-cutoff: unknown flag '" + std::string(arg) + "'");
        }
    }
    if (!have_scenario) throw UsageError("null-cutoff: --scenario is required");
    if (!have_measure) throw UsageError("null-cutoff: --measure is required");
    if (!(opts.sigma >= 0.0)) throw UsageError("--sigma: must be >= 0");
    if (opts.reps < 20) throw UsageError("--reps: must be >= 20 for cutoff calibration");
    if (!(opts.alpha > 0.0 && opts.alpha < 1.0)) throw UsageError("--alpha: must be in (0,1)");
    if (opts.n < 2) throw UsageError("--n: must be >= 2");
    if (opts.measure == MeasureId::Mic && opts.n < 25)
        throw UsageError("--n: must be >= 25 for mic");
    try {
        validate(opts.mic_params);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return opts;
}

}  // namespace depbench
