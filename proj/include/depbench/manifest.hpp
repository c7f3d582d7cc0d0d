#pragma once

#include <charconv>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "depbench/csv.hpp"
#include "depbench/power.hpp"
#include "depbench/version.hpp"

namespace depbench {

namespace detail {

// Shortest representation that round-trips, for human-facing listings.
inline std::string format_real_short(double v) {
    char buf[48];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

}  // namespace detail

inline std::string utc_timestamp_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Everything needed to rerun the experiment: the resolved configuration, the
// tool version, timing, the files written, and any cells that failed.
struct RunManifest {
    GridConfig grid;
    int resolved_workers = 1;
    int resolved_null_reps = 0;
    std::string started_utc;
    std::string finished_utc;
    std::vector<std::string> outputs;
    std::vector<TaskError> errors;
};

inline void write_manifest(const RunManifest& m, std::ostream& os) {
    os << "tool: " << kToolName << ' ' << kToolVersion << '\n';
    os << "started: " << m.started_utc << '\n';
    os << "finished: " << m.finished_utc << '\n';

    os << "scenarios: ";
    for (std::size_t i = 0; i < m.grid.scenarios.size(); ++i)
        os << (i ? "," : "") << scenario_name(m.grid.scenarios[i]);
    os << '\n';
    os << "noise: ";
    for (std::size_t i = 0; i < m.grid.noise_grid.size(); ++i)
        os << (i ? "," : "") << detail::format_real_short(m.grid.noise_grid[i]);
    os << '\n';
    os << "n: " << m.grid.n << '\n';
    os << "reps: " << m.grid.reps << '\n';
    os << "null-reps: " << m.resolved_null_reps << '\n';
    os << "alpha: " << detail::format_real_short(m.grid.alpha) << '\n';
    os << "measures: ";
    for (std::size_t i = 0; i < m.grid.measures.size(); ++i)
        os << (i ? "," : "") << measure_name(m.grid.measures[i]);
    os << '\n';
    os << "seed: " << m.grid.master_seed << '\n';
    os << "workers: " << m.resolved_workers << '\n';
    os << "mic-exponent: " << detail::format_real_short(m.grid.mic_params.grid_budget_exponent)
       << '\n';
    os << "mic-clump-factor: " << m.grid.mic_params.clump_factor << '\n';

    os << "outputs: ";
    for (std::size_t i = 0; i < m.outputs.size(); ++i) os << (i ? "," : "") << m.outputs[i];
    os << '\n';
    os << "failed-cells: " << m.errors.size() << '\n';
    for (const TaskError& e : m.errors)
        os << "failed: " << scenario_name(e.scenario) << " sigma="
           << detail::format_real_short(e.sigma) << ' ' << measure_name(e.measure) << ": "
           << e.message << '\n';
}

inline void emit_manifest(const RunManifest& m, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("emit_manifest: cannot open " + path.string());
    write_manifest(m, os);
    os.flush();
    if (!os) throw std::runtime_error("emit_manifest: write failed for " + path.string());
}

}  // namespace depbench
