#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "depbench/measures.hpp"
#include "depbench/random.hpp"
#include "depbench/scenarios.hpp"
#include "depbench/types.hpp"

namespace depbench {

// One cell of the power grid.
struct PowerResult {
    Scenario scenario;
    double sigma;
    MeasureId measure;
    double cutoff;
    double power;
    int null_reps;
    int alt_reps;
    int n;
    double alpha;
    std::uint64_t master_seed;
};

// Full experiment description. worker_count 0 means one worker per hardware
// thread; null_reps 0 means use reps for calibration as well.
struct GridConfig {
    std::vector<Scenario> scenarios{kAllScenarios, kAllScenarios + 8};
    std::vector<double> noise_grid;
    int n = 320;
    int reps = 500;
    int null_reps = 0;
    double alpha = 0.05;
    std::vector<MeasureId> measures{kAllMeasures, kAllMeasures + 3};
    std::uint64_t master_seed = 1;
    MicParams mic_params;
    int worker_count = 0;
};

// sigma values start, start+step, ..., start+(count-1)*step.
inline std::vector<double> noise_range(double start, double step, int count) {
    std::vector<double> grid(count);
    for (int i = 0; i < count; ++i) grid[i] = start + i * step;
    return grid;
}

inline std::vector<double> default_noise_grid() { return noise_range(0.1, 0.1, 30); }

inline void validate(const GridConfig& c) {
    if (c.scenarios.empty()) throw std::invalid_argument("GridConfig: scenario set is empty");
    if (c.measures.empty()) throw std::invalid_argument("GridConfig: measure set is empty");
    for (std::size_t i = 0; i < c.scenarios.size(); ++i)
        for (std::size_t j = i + 1; j < c.scenarios.size(); ++j)
            if (c.scenarios[i] == c.scenarios[j])
                throw std::invalid_argument("GridConfig: duplicate scenario");
    for (std::size_t i = 0; i < c.measures.size(); ++i)
        for (std::size_t j = i + 1; j < c.measures.size(); ++j)
            if (c.measures[i] == c.measures[j])
                throw std::invalid_argument("GridConfig: duplicate measure");
    if (c.noise_grid.empty()) throw std::invalid_argument("GridConfig: noise grid is empty");
    for (std::size_t i = 0; i < c.noise_grid.size(); ++i) {
        if (!(c.noise_grid[i] >= 0.0) || !std::isfinite(c.noise_grid[i]))
            throw std::invalid_argument("GridConfig: noise levels must be finite and >= 0");
        if (i > 0 && !(c.noise_grid[i] > c.noise_grid[i - 1]))
            throw std::invalid_argument("GridConfig: noise grid must be strictly increasing");
    }
    if (c.n < 2) throw std::invalid_argument("GridConfig: n must be >= 2");
    for (MeasureId m : c.measures)
        if (m == MeasureId::Mic && c.n < 25)
            throw std::invalid_argument("GridConfig: n must be >= 25 when mic is enabled");
    if (c.reps < 1) throw std::invalid_argument("GridConfig: reps must be >= 1");
    if (c.null_reps < 0) throw std::invalid_argument("GridConfig: null_reps must be >= 0");
    if (!(c.alpha > 0.0 && c.alpha < 1.0))
        throw std::invalid_argument("GridConfig: alpha must be in (0,1)");
    if (c.worker_count < 0) throw std::invalid_argument("GridConfig: worker count must be >= 0");
    validate(c.mic_params);
}

// A failed grid cell, with enough coordinates to rerun it in isolation.
struct TaskError {
    Scenario scenario;
    double sigma;
    MeasureId measure;
    std::string message;
};

struct GridRunOutcome {
    std::vector<PowerResult> results;
    std::vector<TaskError> errors;
};

// Substream labels: one stream per (scenario, noise index, measure, phase),
// so every task owns private randomness regardless of scheduling. Phases 0
// and 1 are calibration and power; higher values are free for audits.
inline RandomStream cell_stream(std::uint64_t master_seed, Scenario s, int sigma_index,
                                MeasureId m, int phase) {
    return derive_stream(master_seed,
                         {static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(sigma_index),
                          static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(phase)});
}

namespace detail {

// Order statistic of rank ceil((1-alpha)*(reps+1)), clamped to [1, reps].
// With alpha=0.05 and reps=500 this is the 476th smallest value. Sorts in place.
inline double cutoff_rank_statistic(std::vector<double>& stats, double alpha) {
    const int reps = static_cast<int>(stats.size());
    int rank = static_cast<int>(std::ceil((1.0 - alpha) * (reps + 1)));
    rank = std::clamp(rank, 1, reps);
    std::sort(stats.begin(), stats.end());
    return stats[rank - 1];
}

inline double null_cutoff_impl(MeasureId m, Scenario s, int n, const NoiseSpec& noise, int reps,
                               double alpha, RandomStream& stream, const MicParams& mp) {
    std::vector<double> stats(reps);
    for (int r = 0; r < reps; ++r)
        stats[r] = statistic(m, generate_null(s, n, noise, stream), mp);
    return cutoff_rank_statistic(stats, alpha);
}

// Runs body(0..count-1) on the given number of workers. Tasks are claimed
// from a shared counter; the body must not throw.
template <typename Body>
inline void parallel_for(int count, int workers, Body&& body) {
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    auto drain = [&] {
        for (int i; (i = next.fetch_add(1)) < count;) body(i);
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int w = 1; w < workers; ++w) pool.emplace_back(drain);
    drain();
    for (std::thread& t : pool) t.join();
}

}  // namespace detail

// Statistic threshold whose exceedance under independence has probability at
// most alpha: the conservative order statistic of reps simulated nulls.
inline double null_cutoff(MeasureId m, Scenario s, int n, const NoiseSpec& noise, int reps,
                          double alpha, RandomStream& stream, const MicParams& mp = {}) {
    if (reps < 20) throw std::invalid_argument("null_cutoff: reps must be >= 20");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("null_cutoff: alpha must be in (0,1)");
    return detail::null_cutoff_impl(m, s, n, noise, reps, alpha, stream, mp);
}

// Fraction of reps alternative datasets whose statistic strictly exceeds the
// cutoff.
inline double estimate_power(MeasureId m, Scenario s, int n, const NoiseSpec& noise, int reps,
                             double cutoff, RandomStream& stream, const MicParams& mp = {}) {
    if (reps < 1) throw std::invalid_argument("estimate_power: reps must be >= 1");
    int hits = 0;
    for (int r = 0; r < reps; ++r)
        if (statistic(m, generate(s, n, noise, stream), mp) > cutoff) ++hits;
    return static_cast<double>(hits) / reps;
}

// The full experiment: calibrate a cutoff per cell, then estimate power per
// cell, both embarrassingly parallel at cell granularity. Output is a pure
// function of the config; worker count only changes the wall clock. Failed
// cells are reported, not fatal.
inline GridRunOutcome run_grid(const GridConfig& config) {
    validate(config);

    // Canonical cell order: scenario, then sigma, then measure, each by its
    // enum or grid position. Stream labels use the same coordinates, so the
    // order the caller listed scenarios or measures in cannot matter.
    std::vector<Scenario> scenarios = config.scenarios;
    std::sort(scenarios.begin(), scenarios.end());
    std::vector<MeasureId> measures = config.measures;
    std::sort(measures.begin(), measures.end());

    struct Cell {
        Scenario scenario;
        int sigma_index;
        MeasureId measure;
    };
    std::vector<Cell> cells;
    cells.reserve(scenarios.size() * config.noise_grid.size() * measures.size());
    for (Scenario s : scenarios)
        for (std::size_t g = 0; g < config.noise_grid.size(); ++g)
            for (MeasureId m : measures) cells.push_back({s, static_cast<int>(g), m});

    const int cell_count = static_cast<int>(cells.size());
    const int null_reps = config.null_reps > 0 ? config.null_reps : config.reps;
    int workers = config.worker_count;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());

    // Note: the sigma-index labels refer to positions in config.noise_grid,
    // so a cell's statistics depend on the grid it was requested through.
    std::vector<double> cutoffs(cell_count, 0.0);
    std::vector<double> powers(cell_count, 0.0);
    std::vector<std::optional<std::string>> failures(cell_count);

    detail::parallel_for(cell_count, workers, [&](int i) {
        const Cell& c = cells[i];
        const NoiseSpec noise{config.noise_grid[c.sigma_index]};
        try {
            RandomStream stream =
                cell_stream(config.master_seed, c.scenario, c.sigma_index, c.measure, 0);
            cutoffs[i] = detail::null_cutoff_impl(c.measure, c.scenario, config.n, noise,
                                                  null_reps, config.alpha, stream,
                                                  config.mic_params);
        } catch (const std::exception& e) {
            failures[i] = std::string("calibration: ") + e.what();
        }
    });

    detail::parallel_for(cell_count, workers, [&](int i) {
        if (failures[i]) return;
        const Cell& c = cells[i];
        const NoiseSpec noise{config.noise_grid[c.sigma_index]};
        try {
            RandomStream stream =
                cell_stream(config.master_seed, c.scenario, c.sigma_index, c.measure, 1);
            powers[i] = estimate_power(c.measure, c.scenario, config.n, noise, config.reps,
                                       cutoffs[i], stream, config.mic_params);
        } catch (const std::exception& e) {
            failures[i] = std::string("power: ") + e.what();
        }
    });

    GridRunOutcome out;
    for (int i = 0; i < cell_count; ++i) {
        const Cell& c = cells[i];
        const double sigma = config.noise_grid[c.sigma_index];
        if (failures[i]) {
            out.errors.push_back({c.scenario, sigma, c.measure, *failures[i]});
            continue;
        }
        out.results.push_back({c.scenario, sigma, c.measure, cutoffs[i], powers[i], null_reps,
                               config.reps, config.n, config.alpha, config.master_seed});
    }
    return out;
}

}  // namespace depbench
