#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "depbench/mic_grid.hpp"
#include "depbench/types.hpp"

namespace depbench {

// Product-moment correlation. Throws DegenerateInput when either variable is
// constant, since r is undefined there.
inline double pearson(const Dataset& d) {
    validate(d);
    const std::size_t n = d.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += d.x[i];
        my += d.y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = d.x[i] - mx;
        const double dy = d.y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw DegenerateInput("pearson: correlation undefined for a constant variable");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

// Benchmark statistic |r|, with constant input scored as 0 rather than an
// error: a degenerate draw carries no evidence of dependence.
inline double pearson_stat(const Dataset& d) {
    try {
        return std::abs(pearson(d));
    } catch (const DegenerateInput&) {
        return 0.0;
    }
}

// Distance correlation of Szekely, Rizzo and Bakirov, computed from
// double-centered pairwise distance matrices. Detects any kind of dependence
// in the large-sample limit, not just monotone association.
inline double distance_correlation(const Dataset& d) {
    validate(d);
    const std::size_t n = d.size();

    // Double-center |v_j - v_k|: subtract row and column means, add the grand
    // mean. Returns the centered matrix, flattened.
    auto centered = [n](const std::vector<double>& v) {
        std::vector<double> m(n * n);
        std::vector<double> rowmean(n, 0.0);
        double grand = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const double dist = std::abs(v[j] - v[k]);
                m[j * n + k] = dist;
                rowmean[j] += dist;
            }
        for (std::size_t j = 0; j < n; ++j) {
            rowmean[j] /= static_cast<double>(n);
            grand += rowmean[j];
        }
        grand /= static_cast<double>(n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                m[j * n + k] += grand - rowmean[j] - rowmean[k];
        return m;
    };

    const std::vector<double> a = centered(d.x);
    const std::vector<double> b = centered(d.y);

    double vxy = 0.0, vxx = 0.0, vyy = 0.0;
    for (std::size_t i = 0; i < n * n; ++i) {
        vxy += a[i] * b[i];
        vxx += a[i] * a[i];
        vyy += b[i] * b[i];
    }
    const double denom = std::sqrt(vxx * vyy);
    if (denom <= 0.0) return 0.0;  // a constant variable has zero distance variance
    const double r2 = vxy / denom;
    if (r2 <= 0.0) return 0.0;
    return std::min(std::sqrt(r2), 1.0);
}

// Maximal information coefficient: the largest entry of the characteristic
// matrix over all grids within the size budget.
inline double mic(const Dataset& d, const MicParams& p = {}) {
    return characteristic_matrix(d, p).max_value;
}

inline double statistic(MeasureId id, const Dataset& d, const MicParams& p = {}) {
    switch (id) {
        case MeasureId::Cor: return pearson_stat(d);
        case MeasureId::Dcor: return distance_correlation(d);
        case MeasureId::Mic: return mic(d, p);
    }
    throw std::invalid_argument("statistic: unknown measure id");
}

}  // namespace depbench
