#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <thread>

#include "depbench/config.hpp"
#include "depbench/csv.hpp"
#include "depbench/manifest.hpp"
#include "depbench/power.hpp"
#include "depbench/svg.hpp"

namespace depbench {

struct RunArtifacts {
    GridRunOutcome outcome;
    RunManifest manifest;
    std::filesystem::path csv_path;
    std::filesystem::path svg_path;
    std::filesystem::path manifest_path;
    std::filesystem::path scenario_table_path;
};

// Full pipeline: run the grid, then write results.csv, power.svg,
// scenarios.json and manifest.txt into out_dir. When cells fail the
// remaining results are still written and the failures are listed in the
// manifest.
inline RunArtifacts run_and_emit(const CliOptions& opts) {
    validate(opts.grid);

    RunArtifacts a;
    a.manifest.grid = opts.grid;
    a.manifest.resolved_workers = opts.grid.worker_count > 0
                                      ? opts.grid.worker_count
                                      : std::max(1u, std::thread::hardware_concurrency());
    a.manifest.resolved_null_reps = opts.grid.null_reps > 0 ? opts.grid.null_reps : opts.grid.reps;
    a.manifest.started_utc = utc_timestamp_now();

    a.outcome = run_grid(opts.grid);

    std::filesystem::create_directories(opts.out_dir);
    a.csv_path = opts.out_dir / "results.csv";
    a.svg_path = opts.out_dir / "power.svg";
    a.manifest_path = opts.out_dir / "manifest.txt";
    a.scenario_table_path = opts.out_dir / "scenarios.json";

    if (!a.outcome.results.empty()) {
        emit_csv(a.outcome.results, a.csv_path);
        a.manifest.outputs.push_back(a.csv_path.string());
        emit_plots(a.outcome.results, a.svg_path);
        a.manifest.outputs.push_back(a.svg_path.string());
    }
    {
        std::ofstream os(a.scenario_table_path, std::ios::binary);
        if (!os)
            throw std::runtime_error("cannot open " + a.scenario_table_path.string());
        os << scenario_table_json();
        os.flush();
        if (!os)
            throw std::runtime_error("write failed for " + a.scenario_table_path.string());
        a.manifest.outputs.push_back(a.scenario_table_path.string());
    }

    a.manifest.errors = a.outcome.errors;
    a.manifest.finished_utc = utc_timestamp_now();
    emit_manifest(a.manifest, a.manifest_path);
    return a;
}

}  // namespace depbench
