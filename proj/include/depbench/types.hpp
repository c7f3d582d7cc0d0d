#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace depbench {

// Thrown when a statistic is undefined for the given input (e.g. Pearson
// correlation of a constant vector).
struct DegenerateInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a sample is too small for the requested statistic.
struct SampleTooSmall : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a sample is too large for a combinatorial search.
struct SampleTooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Bad command-line flags, config-file entries, or violated config bounds.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Paired real-valued sample (x_i, y_i), i = 0..n-1.
struct Dataset {
    std::vector<double> x;
    std::vector<double> y;

    std::size_t size() const { return x.size(); }
};

// Validates the Dataset contract: equal lengths, n >= 2, all entries finite.
inline void validate(const Dataset& d) {
    if (d.x.size() != d.y.size())
        throw std::invalid_argument("Dataset: x and y must have equal length");
    if (d.x.size() < 2)
        throw SampleTooSmall("Dataset: need at least 2 points");
    for (double v : d.x)
        if (!std::isfinite(v))
            throw std::invalid_argument("Dataset: non-finite value in x");
    for (double v : d.y)
        if (!std::isfinite(v))
            throw std::invalid_argument("Dataset: non-finite value in y");
}

// MIC tuning constants. The grid budget is B = max(4, floor(n^grid_budget_exponent));
// the x-axis pre-partition is capped at clump_factor times the column budget.
struct MicParams {
    double grid_budget_exponent = 0.6;
    int clump_factor = 15;
};

inline void validate(const MicParams& p) {
    if (!(p.grid_budget_exponent > 0.0 && p.grid_budget_exponent < 1.0))
        throw std::invalid_argument("MicParams: grid_budget_exponent must be in (0,1)");
    if (p.clump_factor < 1)
        throw std::invalid_argument("MicParams: clump_factor must be >= 1");
}

// Grid budget B for a sample of size n. Clamped so the 2x2 grid is always admissible.
inline int mic_grid_budget(std::size_t n, const MicParams& p) {
    int b = static_cast<int>(std::floor(std::pow(static_cast<double>(n), p.grid_budget_exponent)));
    return b < 4 ? 4 : b;
}

enum class MeasureId { Cor, Dcor, Mic };

inline constexpr MeasureId kAllMeasures[] = {MeasureId::Cor, MeasureId::Dcor, MeasureId::Mic};

inline std::string_view measure_name(MeasureId m) {
    switch (m) {
        case MeasureId::Cor: return "cor";
        case MeasureId::Dcor: return "dcor";
        case MeasureId::Mic: return "mic";
    }
    return "?";
}

inline std::optional<MeasureId> measure_from_name(std::string_view s) {
    for (MeasureId m : kAllMeasures)
        if (measure_name(m) == s) return m;
    return std::nullopt;
}

}  // namespace depbench
