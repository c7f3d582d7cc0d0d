#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "depbench/depbench.hpp"

namespace {

constexpr const char* kUsage = R"(usage: depbench <command> [options]

commands:
  run          calibrate null cutoffs and estimate power over the full
               (scenario x noise x measure) grid; writes results.csv,
               power.svg, scenarios.json and manifest.txt
  measure      evaluate one statistic on a two-column input file
  null-cutoff  calibrate a single null cutoff

run options (defaults in parentheses):
  --scenarios LIST     comma list or 'all' (all)
  --noise SPEC         comma list or start:step:count (0.1:0.1:30)
  --n N                sample size per dataset (320)
  --reps R             alternative replicates per cell (500)
  --null-reps R        calibration replicates (same as --reps)
  --alpha A            test level in (0,1) (0.05)
  --measures LIST      comma list or 'all' (all)
  --seed S             master seed (1)
  --workers W          worker threads, 0 or 'auto' = all cores (auto)
  --out-dir DIR        output directory (out)
  --config FILE        key=value file; flags override file values
  --mic-exponent E     grid budget exponent B = n^E (0.6)
  --mic-clump-factor C x-axis pre-partition cap, C times the column budget (15)

measure usage:
  depbench measure <cor|dcor|mic> <file> [--mic-exponent E] [--mic-clump-factor C]
  The file holds two columns of reals, whitespace- or comma-separated;
  '#' starts a comment. Degenerate inputs score 0 where the benchmark
  convention defines that (cor, dcor).

null-cutoff usage:
  depbench null-cutoff --scenario NAME --measure NAME [--sigma S=1]
            [--n N=320] [--reps R=500] [--alpha A=0.05] [--seed S=1]

scenarios: linear quadratic cubic sine_low sine_high root4 circle step
measures:  cor dcor mic

exit codes: 0 success, 1 usage error, 2 runtime or task error
)";

int cmd_run(const std::vector<std::string>& args) {
    const depbench::CliOptions opts = depbench::parse_run_args(args);
    const depbench::RunArtifacts arts = depbench::run_and_emit(opts);

    std::cout << "cells: " << arts.outcome.results.size() + arts.outcome.errors.size()
              << " ok: " << arts.outcome.results.size()
              << " failed: " << arts.outcome.errors.size() << '\n';
    for (const std::string& p : arts.manifest.outputs) std::cout << "wrote " << p << '\n';
    std::cout << "wrote " << arts.manifest_path.string() << '\n';
    if (!arts.outcome.errors.empty()) {
        for (const depbench::TaskError& e : arts.outcome.errors)
            std::cerr << "failed cell: " << depbench::scenario_name(e.scenario)
                      << " sigma=" << depbench::detail::format_real_short(e.sigma) << ' '
                      << depbench::measure_name(e.measure) << ": " << e.message << '\n';
        return 2;
    }
    return 0;
}

int cmd_measure(const std::vector<std::string>& args) {
    const depbench::MeasureCmdOptions opts = depbench::parse_measure_args(args);
    const depbench::Dataset d = depbench::read_two_column_file(opts.input);
    const double value = depbench::statistic(opts.measure, d, opts.mic_params);
    std::cout << depbench::format_real(value) << '\n';
    return 0;
}

int cmd_null_cutoff(const std::vector<std::string>& args) {
    const depbench::CutoffCmdOptions opts = depbench::parse_cutoff_args(args);
    depbench::RandomStream stream =
        depbench::cell_stream(opts.seed, opts.scenario, 0, opts.measure, 0);
    const double cutoff =
        depbench::null_cutoff(opts.measure, opts.scenario, opts.n, depbench::NoiseSpec{opts.sigma},
                              opts.reps, opts.alpha, stream, opts.mic_params);
    std::cout << depbench::format_real(cutoff) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        if (args.empty()) {
            std::cerr << kUsage;
            return 1;
        }
        const std::string cmd = args[0];
        const std::vector<std::string> rest(args.begin() + 1, args.end());
        if (cmd == "--help" || cmd == "-h" || cmd == "help") {
            std::cout << kUsage;
            return 0;
        }
        if (cmd == "--version") {
            std::cout << depbench::kToolName << ' ' << depbench::kToolVersion << '\n';
            return 0;
        }
        if (cmd == "run") return cmd_run(rest);
        if (cmd == "measure") return cmd_measure(rest);
        if (cmd == "null-cutoff") return cmd_null_cutoff(rest);
        throw depbench::UsageError("unknown command '" + cmd + "'");
    } catch (const depbench::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << "run 'depbench --help' for usage\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
