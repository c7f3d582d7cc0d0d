#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include "depbench/mic_grid.hpp"
#include "depbench/random.hpp"
#include "depbench/types.hpp"

using namespace depbench;

namespace {

// Independent mutual information in bits: direct p*log2 sums, no count-table
// tricks shared with the code under test.
double mi_oracle(const std::vector<std::vector<int>>& counts) {
    const std::size_t cols = counts.size(), rows = counts[0].size();
    double n = 0.0;
    std::vector<double> colsum(cols, 0.0), rowsum(rows, 0.0);
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = 0; j < rows; ++j) {
            n += counts[i][j];
            colsum[i] += counts[i][j];
            rowsum[j] += counts[i][j];
        }
    double mi = 0.0;
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = 0; j < rows; ++j) {
            if (counts[i][j] == 0) continue;
            const double pij = counts[i][j] / n;
            mi += pij * std::log2(pij * n * n / (colsum[i] * rowsum[j]));
        }
    return mi;
}

// Best MI over merges of clumps into at most max_cols contiguous columns,
// by enumerating every boundary subset.
double partition_oracle(const ClumpPartition& cp, int max_cols) {
    const int k = cp.clump_count(), rows = cp.y_bins;
    double best = 0.0;
    for (unsigned mask = 0; mask < (1u << (k - 1)); ++mask) {
        if (std::popcount(mask) + 1 > max_cols) continue;
        std::vector<std::vector<int>> counts(std::popcount(mask) + 1, std::vector<int>(rows, 0));
        int col = 0;
        for (int c = 0; c < k; ++c) {
            for (int r = 0; r < rows; ++r)
                counts[col][r] += cp.counts[static_cast<std::size_t>(c) * rows + r];
            if (c < k - 1 && ((mask >> c) & 1u)) ++col;
        }
        best = std::max(best, mi_oracle(counts));
    }
    return best;
}

ClumpPartition random_partition(RandomStream& rng, int k, int rows) {
    ClumpPartition cp;
    cp.y_bins = rows;
    cp.offsets.assign(k + 1, 0);
    cp.counts.assign(static_cast<std::size_t>(k) * rows, 0);
    for (int c = 0; c < k; ++c) {
        int total = 0;
        for (int r = 0; r < rows; ++r) {
            const int v = static_cast<int>(rng.next_u64() % 5);
            cp.counts[static_cast<std::size_t>(c) * rows + r] = v;
            total += v;
        }
        if (total == 0) {
            cp.counts[static_cast<std::size_t>(c) * rows + rng.next_u64() % rows] = 1;
            total = 1;
        }
        cp.offsets[c + 1] = cp.offsets[c] + total;
    }
    return cp;
}

Dataset diagonal_dataset(int n) {
    Dataset d;
    for (int i = 0; i < n; ++i) {
        d.x.push_back(i);
        d.y.push_back(i);
    }
    return d;
}

}  // namespace

TEST_CASE("mutual information matches hand-computed tables") {
    CHECK(mutual_information({{{1, 1}, {1, 1}}}) == 0.0);
    CHECK(mutual_information({{{2, 0}, {0, 2}}}) == Catch::Approx(1.0).margin(1e-12));
    // 2x2 table [[2,1],[0,1]]: I = 0.5*log2(4/3) + 0.25*log2(2/3) + 0.25*log2(2)
    CHECK(mutual_information({{{2, 1}, {0, 1}}}) ==
          Catch::Approx(0.31127812445913283).margin(1e-12));
}

TEST_CASE("mutual information of degenerate and product tables is zero") {
    // single row: identically zero, not just small
    CHECK(mutual_information({{{2}, {3}, {4}}}) == 0.0);
    // single column
    CHECK(mutual_information({{{2, 3, 4}}}) == 0.0);

    // product-form tables c_ij = a_i * b_j carry no association
    const int a[] = {1, 2, 3};
    const int b[] = {2, 1, 4};
    ContingencyTable t;
    t.counts.assign(3, std::vector<int>(3, 0));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t.counts[i][j] = b[i] * a[j];
    const double mi = mutual_information(t);
    CHECK(mi >= 0.0);
    CHECK(mi <= 1e-12);
}

TEST_CASE("mutual information agrees with the direct-definition oracle") {
    RandomStream rng(301);
    for (int trial = 0; trial < 50; ++trial) {
        const int cols = 2 + static_cast<int>(rng.next_u64() % 4);
        const int rows = 2 + static_cast<int>(rng.next_u64() % 4);
        ContingencyTable t;
        t.counts.assign(cols, std::vector<int>(rows, 0));
        for (auto& col : t.counts)
            for (int& c : col) c = static_cast<int>(rng.next_u64() % 6);
        t.counts[0][0] += 1;  // keep the table nonempty
        CHECK(mutual_information(t) == Catch::Approx(mi_oracle(t.counts)).margin(1e-9));
    }
}

TEST_CASE("equipartition splits cleanly and keeps ties together") {
    CHECK(equipartition_y(std::vector<double>{1, 2, 3, 4}, 2).row_of ==
          std::vector<int>{0, 0, 1, 1});
    CHECK(equipartition_y(std::vector<double>{1, 1, 1, 2}, 2).row_of ==
          std::vector<int>{0, 0, 0, 1});

    // constant y: every point lands in one row
    const RowAssignment all_same = equipartition_y(std::vector<double>{5, 5, 5, 5}, 2);
    CHECK(all_same.row_of == std::vector<int>{0, 0, 0, 0});

    // order of the input does not matter beyond the sort
    CHECK(equipartition_y(std::vector<double>{4, 1, 3, 2}, 2).row_of ==
          std::vector<int>{1, 0, 1, 0});
}

TEST_CASE("equipartition properties on random data with ties") {
    RandomStream rng(302);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 10 + static_cast<int>(rng.next_u64() % 50);
        const int bins = 2 + static_cast<int>(rng.next_u64() % 5);
        std::vector<double> y(n);
        for (double& v : y) v = static_cast<double>(rng.next_u64() % 12);  // many ties
        const RowAssignment r = equipartition_y(y, bins);

        REQUIRE(static_cast<int>(r.row_of.size()) == n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (y[i] == y[j]) CHECK(r.row_of[i] == r.row_of[j]);
                if (y[i] < y[j]) CHECK(r.row_of[i] <= r.row_of[j]);
            }
        for (int v : r.row_of) {
            CHECK(v >= 0);
            CHECK(v < bins);
        }
    }
}

TEST_CASE("equipartition balances row sizes when there are no ties") {
    std::vector<double> y(10);
    for (int i = 0; i < 10; ++i) y[i] = i;
    const RowAssignment r = equipartition_y(y, 3);
    std::vector<int> sizes(3, 0);
    for (int v : r.row_of) sizes[v]++;
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<int>{3, 3, 4});
}

TEST_CASE("clumps are maximal same-row runs in x order") {
    Dataset d;
    d.x = {1, 2, 3, 4};
    d.y = {0, 0, 0, 0};  // rows supplied explicitly below

    const ClumpPartition two = get_clumps(d, RowAssignment{{0, 0, 1, 1}, 2}, 15);
    CHECK(two.clump_count() == 2);
    CHECK(two.offsets == std::vector<int>{0, 2, 4});
    CHECK(two.boundaries() == std::vector<int>{2});

    const ClumpPartition four = get_clumps(d, RowAssignment{{0, 1, 0, 1}, 2}, 15);
    CHECK(four.clump_count() == 4);

    // an equal-x group spanning two rows is impure: it becomes its own clump
    Dataset tie;
    tie.x = {1, 1, 2};
    tie.y = {0, 0, 0};
    const ClumpPartition impure = get_clumps(tie, RowAssignment{{0, 1, 0}, 2}, 15);
    CHECK(impure.clump_count() == 2);
    CHECK(impure.offsets == std::vector<int>{0, 2, 3});
}

TEST_CASE("clump coalescing respects the cap and conserves points") {
    RandomStream rng(303);
    Dataset d;
    for (int i = 0; i < 50; ++i) {
        d.x.push_back(rng.next_uniform());
        d.y.push_back(rng.next_uniform());
    }
    const RowAssignment rows = equipartition_y(d.y, 4);
    const ClumpPartition cp = get_clumps(d, rows, 6);
    CHECK(cp.clump_count() <= 6);
    CHECK(cp.clump_count() >= 2);
    int total = 0;
    for (int c : cp.counts) {
        CHECK(c >= 0);
        total += c;
    }
    CHECK(total == 50);
    CHECK(cp.total() == 50);
}

TEST_CASE("equal x values never straddle a clump boundary") {
    RandomStream rng(304);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 20 + static_cast<int>(rng.next_u64() % 30);
        Dataset d;
        for (int i = 0; i < n; ++i) {
            d.x.push_back(static_cast<double>(rng.next_u64() % 8));  // heavy x ties
            d.y.push_back(rng.next_uniform());
        }
        const RowAssignment rows = equipartition_y(d.y, 3);
        const int cap = 2 + static_cast<int>(rng.next_u64() % 8);
        const ClumpPartition cp = get_clumps(d, rows, cap);
        CHECK(cp.clump_count() <= std::max(cap, 2));

        // recover each point's clump id through the x-sort
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return d.x[a] < d.x[b] || (d.x[a] == d.x[b] && a < b);
        });
        std::vector<int> clump_of(n);
        for (int pos = 0; pos < n; ++pos) {
            int c = 0;
            while (pos >= cp.offsets[c + 1]) ++c;
            clump_of[order[pos]] = c;
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (d.x[i] == d.x[j]) CHECK(clump_of[i] == clump_of[j]);
    }
}

TEST_CASE("column DP equals exhaustive boundary enumeration") {
    RandomStream rng(305);
    for (int trial = 0; trial < 25; ++trial) {
        const int k = 4 + static_cast<int>(rng.next_u64() % 7);  // up to 10 clumps
        const int rows = 2 + static_cast<int>(rng.next_u64() % 3);
        const ClumpPartition cp = random_partition(rng, k, rows);
        const int max_x = 2 + static_cast<int>(rng.next_u64() % 4);
        const std::vector<double> got = optimize_x_axis(cp, max_x);
        REQUIRE(static_cast<int>(got.size()) == max_x - 1);
        for (int l = 2; l <= max_x; ++l) {
            INFO("trial " << trial << " k=" << k << " rows=" << rows << " l=" << l);
            CHECK(got[l - 2] == Catch::Approx(partition_oracle(cp, l)).margin(1e-9));
        }
        for (int l = 3; l <= max_x; ++l) CHECK(got[l - 2] >= got[l - 3] - 1e-15);
    }
}

TEST_CASE("column DP handles the classic shapes") {
    // two clumps, rows perfectly separated: one boundary recovers 1 bit
    ClumpPartition diag;
    diag.y_bins = 2;
    diag.offsets = {0, 5, 10};
    diag.counts = {5, 0, 0, 5};
    CHECK(optimize_x_axis(diag, 2)[0] == Catch::Approx(1.0).margin(1e-12));

    // clumps proportional across rows: every merge is an independence table
    ClumpPartition flat;
    flat.y_bins = 2;
    flat.offsets = {0, 2, 4, 6};
    flat.counts = {1, 1, 1, 1, 1, 1};
    for (double v : optimize_x_axis(flat, 3)) CHECK(v == Catch::Approx(0.0).margin(1e-12));

    CHECK_THROWS_AS(optimize_x_axis(diag, 1), std::invalid_argument);
    ClumpPartition one;
    one.y_bins = 2;
    one.offsets = {0, 4};
    one.counts = {2, 2};
    CHECK_THROWS_AS(optimize_x_axis(one, 3), std::invalid_argument);
}

TEST_CASE("grid budget follows max(4, floor(n^0.6))") {
    const MicParams p;
    CHECK(mic_grid_budget(25, p) == 6);
    CHECK(mic_grid_budget(30, p) == 7);
    CHECK(mic_grid_budget(100, p) == 15);
    CHECK(mic_grid_budget(320, p) == 31);
    CHECK(mic_grid_budget(4, p) == 4);  // clamped
    MicParams loose;
    loose.grid_budget_exponent = 0.9;
    CHECK(mic_grid_budget(100, loose) == 63);
}

TEST_CASE("characteristic matrix covers exactly the admissible grid sizes") {
    RandomStream rng(306);
    Dataset d;
    for (int i = 0; i < 40; ++i) {
        d.x.push_back(rng.next_uniform());
        d.y.push_back(rng.next_uniform());
    }
    const CharacteristicMatrix m = characteristic_matrix(d);
    CHECK(m.n == 40);
    CHECK(m.grid_budget == mic_grid_budget(40, MicParams{}));

    std::size_t expected = 0;
    for (int xb = 2; xb <= m.grid_budget / 2; ++xb)
        for (int yb = 2; xb * yb <= m.grid_budget; ++yb) ++expected;
    CHECK(m.entries.size() == expected);
    for (const auto& e : m.entries) {
        CHECK(e.x_bins >= 2);
        CHECK(e.y_bins >= 2);
        CHECK(e.x_bins * e.y_bins <= m.grid_budget);
        CHECK(e.value >= 0.0);
        CHECK(e.value <= 1.0);
    }
    // max_value is the max entry
    double mx = 0.0;
    for (const auto& e : m.entries) mx = std::max(mx, e.value);
    CHECK(m.max_value == mx);
}

TEST_CASE("characteristic matrix is symmetric in x and y") {
    RandomStream rng(307);
    Dataset d;
    for (int i = 0; i < 30; ++i) {
        const double u = rng.next_uniform();
        d.x.push_back(u);
        d.y.push_back(u * u + 0.3 * rng.next_normal());
    }
    Dataset swapped;
    swapped.x = d.y;
    swapped.y = d.x;
    const CharacteristicMatrix a = characteristic_matrix(d);
    const CharacteristicMatrix b = characteristic_matrix(swapped);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        // entry (x,y) of one equals entry (y,x) of the other
        const auto* e = b.at(a.entries[i].y_bins, a.entries[i].x_bins);
        REQUIRE(e != nullptr);
        CHECK(a.entries[i].value == e->value);
    }
    CHECK(a.max_value == b.max_value);
}

TEST_CASE("characteristic matrix depends only on coordinate orderings") {
    RandomStream rng(308);
    Dataset d;
    for (int i = 0; i < 30; ++i) {
        d.x.push_back(rng.next_normal());
        d.y.push_back(rng.next_normal() + 0.5 * d.x.back());
    }
    // replace values by their ranks
    auto ranks = [](const std::vector<double>& v) {
        std::vector<int> order(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return v[a] < v[b]; });
        std::vector<double> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[order[i]] = static_cast<double>(i);
        return out;
    };
    Dataset r;
    r.x = ranks(d.x);
    r.y = ranks(d.y);
    const CharacteristicMatrix a = characteristic_matrix(d);
    const CharacteristicMatrix b = characteristic_matrix(r);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        CHECK(a.entries[i].value == b.entries[i].value);
}

TEST_CASE("noiseless monotone data maxes out the matrix") {
    const Dataset d = diagonal_dataset(30);

    // the exhaustive search, free to place cuts anywhere, saturates every
    // defined entry
    const CharacteristicMatrix ex = exhaustive_characteristic_matrix(d);
    REQUIRE(!ex.entries.empty());
    for (const auto& e : ex.entries) {
        INFO("entry (" << e.x_bins << "," << e.y_bins << ")");
        CHECK(e.value == Catch::Approx(1.0).margin(1e-12));
    }

    // the equipartition-constrained path still reaches 1.0 overall (through
    // the square grids), though individual non-square entries may fall short
    // of the oracle's free cut placement
    const CharacteristicMatrix ap = characteristic_matrix(d);
    CHECK(ap.max_value == Catch::Approx(1.0).margin(1e-12));
    const auto* sq = ap.at(2, 2);
    REQUIRE(sq != nullptr);
    CHECK(sq->value == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("exhaustive oracle dominates the approximate search") {
    RandomStream rng(309);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 25 + static_cast<int>(rng.next_u64() % 8);
        Dataset d;
        for (int i = 0; i < n; ++i) {
            double x = rng.next_uniform();
            if (trial % 3 == 1) x = std::floor(x * 6);  // inject x ties
            d.x.push_back(x);
            d.y.push_back(std::sin(3.0 * x) + rng.next_normal());
        }
        const double approx = characteristic_matrix(d).max_value;
        const double exact = mic_exhaustive(d);
        INFO("trial " << trial << " n=" << n);
        CHECK(approx <= exact + 1e-12);
    }
}

TEST_CASE("per-entry oracle dominance on tie-free data") {
    RandomStream rng(310);
    Dataset d;
    for (int i = 0; i < 28; ++i) {
        d.x.push_back(rng.next_normal());
        d.y.push_back(0.8 * d.x.back() + rng.next_normal());
    }
    const CharacteristicMatrix ap = characteristic_matrix(d);
    const CharacteristicMatrix ex = exhaustive_characteristic_matrix(d);
    for (const auto& e : ap.entries) {
        const auto* o = ex.at(e.x_bins, e.y_bins);
        REQUIRE(o != nullptr);
        INFO("entry (" << e.x_bins << "," << e.y_bins << ")");
        CHECK(e.value <= o->value + 1e-12);
    }
}

TEST_CASE("degenerate inputs and size limits") {
    Dataset flat;
    for (int i = 0; i < 30; ++i) {
        flat.x.push_back(i);
        flat.y.push_back(7.0);
    }
    CHECK(characteristic_matrix(flat).max_value == 0.0);
    CHECK(mic_exhaustive(flat) == 0.0);

    Dataset small = diagonal_dataset(24);
    CHECK_THROWS_AS(characteristic_matrix(small), SampleTooSmall);

    Dataset big = diagonal_dataset(41);
    CHECK_THROWS_AS(mic_exhaustive(big), SampleTooLarge);
    CHECK(mic_exhaustive(diagonal_dataset(40)) == Catch::Approx(1.0).margin(1e-12));
}
