#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "depbench/types.hpp"

namespace depbench {

// Histogram induced by a grid: counts[column][row], every entry >= 0.
struct ContingencyTable {
    std::vector<std::vector<int>> counts;

    long long total() const {
        long long t = 0;
        for (const auto& col : counts)
            for (int c : col) t += c;
        return t;
    }
};

// Mutual information of the table in bits: sum p_ij log2(p_ij / (p_i. p_.j)).
// Expressed in count form, I*n = sum L(c_ij) - sum L(c_i.) - sum L(c_.j) + L(n)
// with L(c) = c*log2(c), which is exactly zero for single-row and product tables.
inline double mutual_information(const ContingencyTable& t) {
    const long long n = t.total();
    if (n <= 0) return 0.0;
    auto L = [](double c) { return c > 0.0 ? c * std::log2(c) : 0.0; };

    const std::size_t cols = t.counts.size();
    const std::size_t rows = cols ? t.counts[0].size() : 0;
    double cells = 0.0, colsum = 0.0, rowsum = 0.0;
    std::vector<long long> row_tot(rows, 0);
    for (std::size_t i = 0; i < cols; ++i) {
        long long ci = 0;
        for (std::size_t j = 0; j < rows; ++j) {
            const int c = t.counts[i][j];
            ci += c;
            row_tot[j] += c;
            cells += L(static_cast<double>(c));
        }
        colsum += L(static_cast<double>(ci));
    }
    for (long long rj : row_tot) rowsum += L(static_cast<double>(rj));

    const double mi = (cells - colsum - rowsum + L(static_cast<double>(n))) / static_cast<double>(n);
    return mi > 0.0 ? mi : 0.0;
}

// Assignment of points to y-axis rows. row_of is indexed by original point
// index; indices are non-decreasing when points are sorted by y, and points
// with equal y always share a row.
struct RowAssignment {
    std::vector<int> row_of;
    int y_bins = 0;
};

// Contiguous x-order partition used by the column DP. Clump c spans x-sorted
// positions [offsets[c], offsets[c+1]); counts is clump-major (clump * y_bins + row).
struct ClumpPartition {
    int y_bins = 0;
    std::vector<int> offsets;  // size clump_count()+1, offsets[0]=0, back()=n
    std::vector<int> counts;

    int clump_count() const { return static_cast<int>(offsets.size()) - 1; }
    int total() const { return offsets.empty() ? 0 : offsets.back(); }

    // interior cut positions, strictly increasing
    std::vector<int> boundaries() const {
        return offsets.size() > 2 ? std::vector<int>(offsets.begin() + 1, offsets.end() - 1)
                                  : std::vector<int>{};
    }
};

namespace detail {

inline std::vector<int> argsort(std::span<const double> v) {
    std::vector<int> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return v[a] < v[b] || (v[a] == v[b] && a < b);
    });
    return order;
}

// Greedy size-balancing walk over tie groups in sorted order. A tie group is
// never split; the current row is closed before placing a group whenever doing
// so does not worsen the distance to the running target size. The target is
// recomputed from the remaining points and rows after each close.
inline std::vector<int> equipartition_ordered(std::span<const double> values,
                                              std::span<const int> order, int bins) {
    const int n = static_cast<int>(values.size());
    std::vector<int> row_of(n, 0);
    int row = 0, in_row = 0, placed = 0;
    double target = static_cast<double>(n) / bins;
    int g = 0;
    while (g < n) {
        int ge = g + 1;
        while (ge < n && values[order[ge]] == values[order[g]]) ++ge;
        const int gsize = ge - g;
        if (in_row > 0 && row < bins - 1 &&
            std::abs(in_row + gsize - target) >= std::abs(in_row - target)) {
            ++row;
            in_row = 0;
            target = static_cast<double>(n - placed) / (bins - row);
        }
        for (int i = g; i < ge; ++i) row_of[order[i]] = row;
        in_row += gsize;
        placed += gsize;
        g = ge;
    }
    return row_of;
}

// Initial clumps (maximal x-runs of points sharing a row, equal-x groups kept
// whole), coalesced to at most max_clumps by equipartitioning the clump-id
// sequence. Returns the clump id of each x-sorted position.
inline std::vector<int> clump_ids_ordered(std::span<const double> x, std::span<const int> order,
                                          std::span<const int> row_of, int max_clumps) {
    const int n = static_cast<int>(x.size());
    std::vector<int> id(n);
    int clump = -1;
    int run_row = -2;  // row of the current clump, -2 = none
    int i = 0;
    while (i < n) {
        int ae = i + 1;
        while (ae < n && x[order[ae]] == x[order[i]]) ++ae;
        bool pure = true;
        const int r0 = row_of[order[i]];
        for (int j = i + 1; j < ae; ++j)
            if (row_of[order[j]] != r0) { pure = false; break; }
        if (!pure) {
            ++clump;
            run_row = -2;  // a mixed equal-x group ends any run
        } else if (r0 != run_row) {
            ++clump;
            run_row = r0;
        }
        for (int j = i; j < ae; ++j) id[j] = clump;
        i = ae;
    }
    const int k = clump + 1;
    if (k <= max_clumps) return id;

    std::vector<double> as_value(id.begin(), id.end());
    std::vector<int> identity(n);
    std::iota(identity.begin(), identity.end(), 0);
    return equipartition_ordered(as_value, identity, max_clumps);
}

inline ClumpPartition build_clumps(std::span<const double> x, std::span<const int> x_order,
                                   const RowAssignment& rows, int max_clumps) {
    const int n = static_cast<int>(x.size());
    const std::vector<int> id = clump_ids_ordered(x, x_order, rows.row_of, max_clumps);
    const int k = id.empty() ? 0 : id.back() + 1;

    ClumpPartition out;
    out.y_bins = rows.y_bins;
    out.offsets.assign(k + 1, 0);
    out.counts.assign(static_cast<std::size_t>(k) * rows.y_bins, 0);
    for (int pos = 0; pos < n; ++pos) {
        out.offsets[id[pos] + 1] = pos + 1;
        out.counts[static_cast<std::size_t>(id[pos]) * rows.y_bins + rows.row_of[x_order[pos]]]++;
    }
    return out;
}

// Table of L[c] = c*log2(c) for integer counts, the only transcendental work
// the DP needs.
inline std::vector<double> count_log_table(int n) {
    std::vector<double> L(n + 1, 0.0);
    for (int c = 2; c <= n; ++c) L[c] = c * std::log2(static_cast<double>(c));
    return L;
}

// Prefix-partition dynamic program over clumps. For every column count
// m its score F_m[k] = max over partitions into m contiguous columns of
// sum_cols (sum_r L[c_r] - L[c_total]); mutual information follows as
// (F - sum_r L[N_r] + L[n]) / n. Returns best MI in bits for column budgets
// l = 2..max_x_bins (maximum over partitions into at most l columns).
inline std::vector<double> optimize_x_axis_impl(const ClumpPartition& cp, int max_x_bins,
                                                std::span<const double> L) {
    const int k = cp.clump_count();
    const int R = cp.y_bins;
    const int n = cp.total();

    // cum[t*R + r]: count of row r over clumps [0, t)
    std::vector<int> cum(static_cast<std::size_t>(k + 1) * R, 0);
    for (int t = 0; t < k; ++t)
        for (int r = 0; r < R; ++r)
            cum[static_cast<std::size_t>(t + 1) * R + r] =
                cum[static_cast<std::size_t>(t) * R + r] + cp.counts[static_cast<std::size_t>(t) * R + r];

    auto seg_score = [&](int s, int t) {
        const int* cs = &cum[static_cast<std::size_t>(s) * R];
        const int* ct = &cum[static_cast<std::size_t>(t) * R];
        double w = 0.0;
        for (int r = 0; r < R; ++r) w += L[ct[r] - cs[r]];
        return w - L[cp.offsets[t] - cp.offsets[s]];
    };

    double row_term = L[n];
    for (int r = 0; r < R; ++r) row_term -= L[cum[static_cast<std::size_t>(k) * R + r]];

    std::vector<double> prev(k + 1), cur(k + 1);
    for (int t = 1; t <= k; ++t) prev[t] = seg_score(0, t);

    std::vector<double> out(max_x_bins - 1, 0.0);
    double best = 0.0;  // m = 1 column gives MI exactly 0
    const int m_max = std::min(max_x_bins, k);
    for (int m = 2; m <= m_max; ++m) {
        for (int t = m; t <= k; ++t) {
            double f = -std::numeric_limits<double>::infinity();
            for (int s = m - 1; s < t; ++s) {
                const double cand = prev[s] + seg_score(s, t);
                if (cand > f) f = cand;
            }
            cur[t] = f;
        }
        const double mi = (cur[k] + row_term) / n;
        if (mi > best) best = mi;
        out[m - 2] = best;
        std::swap(prev, cur);
    }
    for (int l = m_max + 1; l <= max_x_bins; ++l) out[l - 2] = best;
    return out;
}

}  // namespace detail

// Rows as equal-sized as ties permit; tied y values are never split.
inline RowAssignment equipartition_y(std::span<const double> y, int y_bins) {
    if (y_bins < 2) throw std::invalid_argument("equipartition_y: y_bins must be >= 2");
    if (static_cast<int>(y.size()) < y_bins)
        throw std::invalid_argument("equipartition_y: need at least y_bins points");
    const std::vector<int> order = detail::argsort(y);
    return RowAssignment{detail::equipartition_ordered(y, order, y_bins), y_bins};
}

inline RowAssignment equipartition_y(const std::vector<double>& y, int y_bins) {
    return equipartition_y(std::span<const double>(y), y_bins);
}

// Maximal x-consecutive runs of points sharing a row (equal-x groups merged),
// coalesced to at most max_clumps.
inline ClumpPartition get_clumps(const Dataset& d, const RowAssignment& rows, int max_clumps) {
    if (max_clumps < 2) throw std::invalid_argument("get_clumps: max_clumps must be >= 2");
    const std::vector<int> order = detail::argsort(d.x);
    return detail::build_clumps(d.x, order, rows, max_clumps);
}

// Best mutual information over merges of the clumps into at most l contiguous
// columns, for each l = 2..max_x_bins. Exact with respect to the clump partition.
inline std::vector<double> optimize_x_axis(const ClumpPartition& cp, int max_x_bins) {
    if (max_x_bins < 2) throw std::invalid_argument("optimize_x_axis: max_x_bins must be >= 2");
    if (cp.clump_count() < 2) throw std::invalid_argument("optimize_x_axis: need at least 2 clumps");
    const std::vector<double> L = detail::count_log_table(cp.total());
    return detail::optimize_x_axis_impl(cp, max_x_bins, L);
}

struct CharacteristicMatrix {
    struct Entry {
        int x_bins;
        int y_bins;
        double value;
    };

    int n = 0;
    int grid_budget = 0;
    std::vector<Entry> entries;  // sorted by (x_bins, y_bins)
    double max_value = 0.0;

    const Entry* at(int x_bins, int y_bins) const {
        for (const Entry& e : entries)
            if (e.x_bins == x_bins && e.y_bins == y_bins) return &e;
        return nullptr;
    }
};

namespace detail {

// Shared driver for the approximate characteristic matrix. Evaluates both
// axis orientations and keeps the elementwise maximum, so swapping x and y
// leaves the matrix unchanged.
inline CharacteristicMatrix characteristic_matrix_impl(const Dataset& d, const MicParams& p) {
    const int n = static_cast<int>(d.size());
    const int budget = mic_grid_budget(n, p);
    const int half = budget / 2;

    const std::vector<double> L = count_log_table(n);
    const std::vector<int> order_x = argsort(d.x);
    const std::vector<int> order_y = argsort(d.y);

    std::vector<double> slot(static_cast<std::size_t>(half + 1) * (half + 1), -1.0);
    auto put = [&](int xb, int yb, double v) {
        double& s = slot[static_cast<std::size_t>(xb) * (half + 1) + yb];
        if (v > s) s = v;
    };

    for (int flip = 0; flip < 2; ++flip) {
        std::span<const double> xs(flip ? d.y : d.x);
        std::span<const double> ys(flip ? d.x : d.y);
        std::span<const int> ox(flip ? order_y : order_x);
        std::span<const int> oy(flip ? order_x : order_y);

        for (int l = 2; l <= half; ++l) {
            const int max_x = budget / l;
            // cap at n: a larger cap never coalesces anyway, and this keeps
            // clump_factor * max_x from overflowing
            const int max_clumps = static_cast<int>(
                std::min<long long>(static_cast<long long>(p.clump_factor) * max_x, n));
            RowAssignment rows{equipartition_ordered(ys, oy, l), l};
            const ClumpPartition cp = build_clumps(xs, ox, rows, max_clumps);
            std::vector<double> mi;
            if (cp.clump_count() >= 2)
                mi = optimize_x_axis_impl(cp, max_x, L);
            else
                mi.assign(max_x - 1, 0.0);
            for (int xb = 2; xb <= max_x; ++xb) {
                double v = mi[xb - 2] / std::log2(static_cast<double>(std::min(xb, l)));
                v = std::clamp(v, 0.0, 1.0);
                // In the flipped pass the columns partition the original y
                // axis, so the slot coordinates swap back.
                if (flip)
                    put(l, xb, v);
                else
                    put(xb, l, v);
            }
        }
    }

    CharacteristicMatrix out;
    out.n = n;
    out.grid_budget = budget;
    for (int xb = 2; xb <= half; ++xb)
        for (int yb = 2; xb * yb <= budget; ++yb) {
            const double v = slot[static_cast<std::size_t>(xb) * (half + 1) + yb];
            out.entries.push_back({xb, yb, v});
            if (v > out.max_value) out.max_value = v;
        }
    return out;
}

template <typename Fn>
inline void for_each_combination(int pool, int take, Fn&& fn) {
    std::vector<int> pick(take);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        fn(pick);
        int i = take - 1;
        while (i >= 0 && pick[i] == pool - take + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < take; ++j) pick[j] = pick[j - 1] + 1;
    }
}

}  // namespace detail

// Normalized-MI matrix whose maximum is the MIC statistic. Entry (x_bins,
// y_bins) is defined for x_bins*y_bins <= B, each >= 2.
inline CharacteristicMatrix characteristic_matrix(const Dataset& d, const MicParams& p = {}) {
    validate(d);
    validate(p);
    if (d.size() < 25)
        throw SampleTooSmall("characteristic_matrix: need n >= 25 (grid budget degenerates below)");
    return detail::characteristic_matrix_impl(d, p);
}

// Testing oracle: true maximum of normalized mutual information over every
// admissible grid size and every placement of cut points between consecutive
// distinct sorted values. Cuts can never separate equal values, matching the
// tie rules of the approximate path, whose search space this contains.
inline CharacteristicMatrix exhaustive_characteristic_matrix(const Dataset& d, const MicParams& p = {}) {
    validate(d);
    validate(p);
    const int n = static_cast<int>(d.size());
    if (n > 40) throw SampleTooLarge("exhaustive_characteristic_matrix: n must be <= 40");

    const int budget = mic_grid_budget(static_cast<std::size_t>(n), p);
    const std::vector<double> L = detail::count_log_table(n);
    const std::vector<int> order_x = detail::argsort(d.x);
    const std::vector<int> order_y = detail::argsort(d.y);

    // x-sorted / y-sorted position of each point, and the cut slots (gaps
    // between distinct consecutive values) on each axis.
    std::vector<int> xpos(n), ypos(n);
    for (int i = 0; i < n; ++i) xpos[order_x[i]] = i, ypos[order_y[i]] = i;
    std::vector<int> gaps_x, gaps_y;
    for (int i = 0; i + 1 < n; ++i) {
        if (d.x[order_x[i]] < d.x[order_x[i + 1]]) gaps_x.push_back(i);
        if (d.y[order_y[i]] < d.y[order_y[i + 1]]) gaps_y.push_back(i);
    }

    // bin id per sorted position for the cut set {gaps[pick...]}
    auto bins_for = [&](const std::vector<int>& gaps, const std::vector<int>& pick,
                        std::vector<int>& out) {
        int b = 0;
        std::size_t c = 0;
        for (int i = 0; i < n; ++i) {
            if (c < pick.size() && i > gaps[pick[c]]) ++b, ++c;
            out[i] = b;
        }
    };

    CharacteristicMatrix out;
    out.n = n;
    out.grid_budget = budget;

    std::vector<int> col_of(n), row_of(n), col_p(n);
    std::vector<int> table;
    for (int xb = 2; xb <= budget / 2; ++xb) {
        if (static_cast<int>(gaps_x.size()) < xb - 1) continue;
        for (int yb = 2; xb * yb <= budget; ++yb) {
            if (static_cast<int>(gaps_y.size()) < yb - 1) continue;

            // row id per point for every y-cut combination, precomputed
            std::vector<std::vector<int>> row_sets;
            detail::for_each_combination(static_cast<int>(gaps_y.size()), yb - 1,
                                         [&](const std::vector<int>& pick) {
                                             bins_for(gaps_y, pick, row_of);
                                             std::vector<int> per_point(n);
                                             for (int q = 0; q < n; ++q) per_point[q] = row_of[ypos[q]];
                                             row_sets.push_back(std::move(per_point));
                                         });

            const double norm = std::log2(static_cast<double>(std::min(xb, yb)));
            double best = 0.0;
            table.assign(static_cast<std::size_t>(xb) * yb, 0);
            detail::for_each_combination(
                static_cast<int>(gaps_x.size()), xb - 1, [&](const std::vector<int>& pick) {
                    bins_for(gaps_x, pick, col_of);
                    for (int q = 0; q < n; ++q) col_p[q] = col_of[xpos[q]];
                    for (const std::vector<int>& row_p : row_sets) {
                        std::fill(table.begin(), table.end(), 0);
                        for (int q = 0; q < n; ++q) table[col_p[q] * yb + row_p[q]]++;
                        double cells = 0.0, colsum = 0.0, rowsum = 0.0;
                        for (int ccol = 0; ccol < xb; ++ccol) {
                            int tot = 0;
                            for (int r = 0; r < yb; ++r) {
                                const int c = table[ccol * yb + r];
                                tot += c;
                                cells += L[c];
                            }
                            colsum += L[tot];
                        }
                        for (int r = 0; r < yb; ++r) {
                            int tot = 0;
                            for (int ccol = 0; ccol < xb; ++ccol) tot += table[ccol * yb + r];
                            rowsum += L[tot];
                        }
                        const double mi = (cells - colsum - rowsum + L[n]) / n;
                        if (mi > best) best = mi;
                    }
                });
            out.entries.push_back({xb, yb, std::clamp(best / norm, 0.0, 1.0)});
        }
    }
    std::sort(out.entries.begin(), out.entries.end(), [](const auto& a, const auto& b) {
        return a.x_bins != b.x_bins ? a.x_bins < b.x_bins : a.y_bins < b.y_bins;
    });
    for (const auto& e : out.entries)
        if (e.value > out.max_value) out.max_value = e.value;
    return out;
}

inline double mic_exhaustive(const Dataset& d, const MicParams& p = {}) {
    return exhaustive_characteristic_matrix(d, p).max_value;
}

}  // namespace depbench
