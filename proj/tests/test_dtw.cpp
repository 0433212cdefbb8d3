#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "mldtw/dtw.hpp"
#include "mldtw/error.hpp"
#include "oracles.hpp"

using namespace mldtw;

namespace {

TimeSeries ts(std::vector<double> v) { return TimeSeries(std::move(v)); }

TimeSeries sine(std::size_t len, double cycles, double phase = 0.0) {
    std::vector<double> v(len);
    for (std::size_t t = 0; t < len; ++t)
        v[t] = std::sin(2.0 * std::numbers::pi * cycles * static_cast<double>(t) / static_cast<double>(len) + phase);
    return TimeSeries(std::move(v));
}

}  // namespace

TEST_CASE("point distance") {
    const std::vector<double> three{3.0}, one{1.0}, four{4.0};
    CHECK(point_distance(three, three) == 0.0);
    CHECK(point_distance(one, four) == 3.0);
    const std::vector<double> origin{0.0, 0.0}, p{3.0, 4.0};
    CHECK(point_distance(origin, p) == 5.0);
    CHECK_THROWS_AS(point_distance(origin, one), DimensionMismatch);
}

TEST_CASE("time series validation") {
    CHECK_THROWS_AS(ts({5.0}), InvalidArgument);
    CHECK_THROWS_AS(TimeSeries({1.0, 2.0, 3.0}, 2), InvalidArgument);
    CHECK_THROWS_AS(TimeSeries({1.0, 2.0}, 0), InvalidArgument);
    CHECK_THROWS_AS(ts({1.0, std::nan("")}), InvalidArgument);
    CHECK_THROWS_AS(ts({1.0, INFINITY}), InvalidArgument);
    const TimeSeries xy({0, 1, 2, 3, 4, 5}, 2, "xy");
    CHECK(xy.size() == 3);
    CHECK(xy.point(2)[1] == 5.0);
    CHECK(xy.id() == "xy");
    CHECK(xy.prefix(2).size() == 4);
    CHECK_THROWS_AS(xy.prefix(4), InvalidArgument);
}

TEST_CASE("cost matrix examples") {
    const CostMatrix same = full_cost_matrix(ts({1, 2, 3}), ts({1, 2, 3}));
    CHECK(same.distance() == 0.0);
    CHECK(full_cost_matrix(ts({0, 0}), ts({1, 1})).distance() == 2.0);
    const CostMatrix m = full_cost_matrix(ts({1, 2, 3}), ts({2, 2, 2, 3, 4}));
    CHECK(m.distance() == 2.0);
    CHECK(m.rows() == 4);
    CHECK(m.cols() == 6);

    // border
    CHECK(m(0, 0) == 0.0);
    for (std::size_t j = 1; j < m.cols(); ++j) CHECK(std::isinf(m(0, j)));
    for (std::size_t i = 1; i < m.rows(); ++i) CHECK(std::isinf(m(i, 0)));
    CHECK(m.computed_count() == 15);

    // hand-filled table
    const double expected[3][5] = {{1, 2, 3, 5, 8}, {1, 1, 1, 2, 4}, {2, 2, 2, 1, 2}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 5; ++j) CHECK(m(i + 1, j + 1) == expected[i][j]);
}

TEST_CASE("backtrack examples") {
    auto path_of = [](const CostMatrix& m) { return backtrack(m).pairs; };
    CHECK(path_of(full_cost_matrix(ts({1, 2, 3}), ts({1, 2, 3}))) == std::vector<Cell>{{1, 1}, {2, 2}, {3, 3}});
    CHECK(path_of(full_cost_matrix(ts({1, 2, 3}), ts({2, 2, 2, 3, 4}))) ==
          std::vector<Cell>{{1, 1}, {2, 2}, {2, 3}, {3, 4}, {3, 5}});
    CHECK(path_of(full_cost_matrix(ts({7, 8}), ts({7, 8}))) == std::vector<Cell>{{1, 1}, {2, 2}});
}

TEST_CASE("backtrack prefers diagonal, then left, then up on ties") {
    // All-equal series make every predecessor tie.
    const Alignment al = full_dtw(ts({1, 1, 1}), ts({1, 1, 1, 1}));
    CHECK(al.path.pairs == std::vector<Cell>{{1, 1}, {1, 2}, {2, 3}, {3, 4}});
    const Alignment tall = full_dtw(ts({1, 1, 1, 1}), ts({1, 1, 1}));
    CHECK(tall.path.pairs == std::vector<Cell>{{1, 1}, {2, 1}, {3, 2}, {4, 3}});
}

TEST_CASE("full_dtw examples") {
    const TimeSeries s = sine(200, 2.0, 0.3);
    CHECK(full_dtw(s, s).distance == 0.0);
    const Alignment al = full_dtw(ts({1, 2, 3}), ts({2, 2, 2, 3, 4}));
    CHECK(al.distance == 2.0);
    CHECK(al.path.size() == 5);
    CHECK(al.cells_computed == 15);
    CHECK(al.fill_time.count() >= 0);
}

TEST_CASE("full_dtw matches exhaustive path enumeration") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<std::size_t> len(2, 8);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t dim = trial % 5 == 0 ? 2 : 1;
        const TimeSeries a = oracle::random_series(rng, len(rng), -5, 5, dim);
        const TimeSeries b = oracle::random_series(rng, len(rng), -5, 5, dim);
        const double expected = oracle::enumerate_paths(a, b);
        const Alignment al = full_dtw(a, b);
        CHECK(oracle::rel_diff(al.distance, expected) <= 1e-9);
    }
}

TEST_CASE("warp path properties") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> len(2, 40);
    for (int trial = 0; trial < 100; ++trial) {
        const TimeSeries a = oracle::random_series(rng, len(rng));
        const TimeSeries b = oracle::random_series(rng, len(rng));
        const Alignment ab = full_dtw(a, b);
        const Alignment ba = full_dtw(b, a);
        REQUIRE(is_valid_warp_path(ab.path, a.size(), b.size()));
        CHECK(ab.path.pairs.front() == Cell{1, 1});
        CHECK(ab.path.pairs.back() == Cell{a.size(), b.size()});
        CHECK(oracle::rel_diff(path_cost(a, b, ab.path), ab.distance) <= 1e-9);
        CHECK(std::abs(ab.distance - ba.distance) <= 1e-12 * std::max(1.0, ab.distance));
        CHECK(full_dtw(a, a).distance == 0.0);
        CHECK(ab.cells_computed == a.size() * b.size());
    }
}

TEST_CASE("warp path validator rejects malformed paths") {
    CHECK(is_valid_warp_path(WarpPath{{{1, 1}, {2, 2}}}, 2, 2));
    CHECK_FALSE(is_valid_warp_path(WarpPath{}, 2, 2));
    CHECK_FALSE(is_valid_warp_path(WarpPath{{{1, 1}, {2, 1}}}, 2, 2));          // misses (n, m)
    CHECK_FALSE(is_valid_warp_path(WarpPath{{{1, 2}, {2, 2}}}, 2, 2));          // misses (1, 1)
    CHECK_FALSE(is_valid_warp_path(WarpPath{{{1, 1}, {1, 1}, {2, 2}}}, 2, 2));  // repeat
    CHECK_FALSE(is_valid_warp_path(WarpPath{{{1, 1}, {3, 3}}}, 3, 3));          // jump
    CHECK_FALSE(is_valid_warp_path(WarpPath{{{1, 1}, {2, 2}, {2, 1}, {2, 2}}}, 2, 2));
}

TEST_CASE("full_dtw rejects mixed dimensions") {
    const TimeSeries a({0, 1, 2, 3}, 2);
    const TimeSeries b({0, 1, 2, 3}, 1);
    CHECK_THROWS_AS(full_dtw(a, b), DimensionMismatch);
}

TEST_CASE("fill time grows quadratically") {
    std::mt19937_64 rng(3);
    auto min_fill = [&](std::size_t len) {
        const TimeSeries a = oracle::random_series(rng, len);
        const TimeSeries b = oracle::random_series(rng, len);
        std::vector<double> t;
        for (int r = 0; r < 9; ++r) t.push_back(static_cast<double>(full_dtw(a, b).fill_time.count()));
        std::sort(t.begin(), t.end());
        return t.front();
    };
    min_fill(256);  // warm-up
    const double ratio = min_fill(512) / min_fill(256);
    CHECK(ratio >= 3.0);
    CHECK(ratio <= 5.5);
}
