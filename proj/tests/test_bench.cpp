#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mldtw/banded.hpp"
#include "mldtw/bench.hpp"
#include "mldtw/datasets.hpp"
#include "mldtw/dtw.hpp"
#include "mldtw/error.hpp"
#include "oracles.hpp"

using namespace mldtw;
using namespace mldtw::bench;

namespace {

data::Corpus corpus_of(std::size_t count, std::size_t length, std::uint64_t seed) {
    data::SynthConfig c;
    c.count = count;
    c.length = length;
    c.seed = seed;
    return data::gen_synth(c);
}

const WaypointModelSet& tiny_models() {
    static const WaypointModelSet models = [] {
        const data::Corpus c = corpus_of(25, 60, 31);
        LabelConfig lc;
        lc.features = {10, 10, FeatureMode::raw_prefix};
        const LabelResult rows = build_training_set(c.series, lc);
        nn::TrainConfig tc;
        tc.hidden = {12};
        tc.max_epochs = 10;
        tc.seed = 1;
        return train_waypoint_models(rows.rows, tc, lc.features, 1, 5, "bench-test").models;
    }();
    return models;
}

// Sort-based median, kept apart from the library's selection-based one.
double sorted_median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("median") {
    CHECK(median({3, 1, 2}) == 2.0);
    CHECK(median({4, 1, 3, 2}) == 2.5);
    CHECK(median({7}) == 7.0);
    CHECK(std::isnan(median({})));
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int t = 0; t < 50; ++t) {
        std::vector<double> v(1 + t);
        for (double& x : v) x = u(rng);
        CHECK(median(v) == sorted_median(v));
    }
}

TEST_CASE("variant names") {
    for (Variant v : {Variant::full, Variant::band, Variant::ml}) CHECK(parse_variant(variant_name(v)) == v);
    CHECK_THROWS_AS(parse_variant("fast"), InvalidArgument);
}

TEST_CASE("budget-fair radius picks the closest mean band area") {
    const data::Corpus c = corpus_of(4, 50, 1);
    const std::vector<std::pair<std::size_t, std::size_t>> pairs{{0, 1}, {2, 3}};
    for (double target : {60.0, 300.0, 777.0, 1500.0, 2500.0}) {
        const std::size_t r = budget_fair_radius(c.series, pairs, target);
        const double got = std::abs(static_cast<double>(sakoe_chiba_region(50, 50, r).area()) - target);
        for (std::size_t other = 1; other <= 50; ++other) {
            const double alt = std::abs(static_cast<double>(sakoe_chiba_region(50, 50, other).area()) - target);
            CHECK(got <= alt);
            if (alt == got) CHECK(r <= other);
        }
    }
    CHECK(budget_fair_radius(c.series, pairs, 1e9) == 49);  // the smallest radius covering the matrix
    CHECK_THROWS_AS(budget_fair_radius(c.series, {}, 10.0), InvalidArgument);
}

TEST_CASE("bench records match direct computation and summaries match the CSV") {
    const auto dir = oracle::scratch_dir("bench_csv");
    const data::Corpus c = corpus_of(12, 60, 2);
    BenchConfig cfg;
    cfg.trials = 30;
    cfg.seed = 5;
    cfg.models = &tiny_models();
    const BenchReport r = run_bench(c.series, cfg);
    REQUIRE(r.trials.size() == 30);
    CHECK(r.summary.radius_mode == RadiusMode::budget_fair);
    for (std::size_t k = 0; k < 30; ++k) {
        const TrialRecord& t = r.trials[k];
        CHECK(t.index == k);
        CHECK(t.a != t.b);
        CHECK(t.exact == full_dtw(c.series[t.a], c.series[t.b]).distance);
        CHECK(t.get(Variant::full)->error_pct == 0.0);
        CHECK(t.get(Variant::band)->distance ==
              banded_dtw(c.series[t.a], c.series[t.b], r.summary.radius).distance);
        CHECK(t.get(Variant::ml)->error_pct >= 0.0);
    }
    write_trials_csv(dir / "t.csv", r);
    write_summary_json(dir / "s.json", r);
    const auto rows = read_csv(dir / "t.csv");
    REQUIRE(rows.size() == 31);
    const auto& header = rows[0];
    auto col = [&](const std::string& name) {
        return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
    };
    REQUIRE(col("ml_inference_s") < header.size());
    std::ifstream js(dir / "s.json");
    const nlohmann::json j = nlohmann::json::parse(js);
    CHECK(j["trials"] == 30);
    CHECK(j["config"]["radius"] == r.summary.radius);
    CHECK(j["config"]["radius_mode"] == "budget_fair");
    for (const char* v : {"full", "band", "ml"}) {
        std::vector<double> errs, fills, cells;
        for (std::size_t k = 1; k < rows.size(); ++k) {
            const double e = std::stod(rows[k][col(std::string(v) + "_error_pct")]);
            if (std::stod(rows[k][col("exact_distance")]) != 0.0 && std::isfinite(e)) errs.push_back(e);
            fills.push_back(std::stod(rows[k][col(std::string(v) + "_fill_s")]));
            cells.push_back(std::stod(rows[k][col(std::string(v) + "_cells")]));
        }
        CHECK(j["variants"][v]["median_error_pct"].get<double>() == sorted_median(errs));
        CHECK(j["variants"][v]["median_fill_s"].get<double>() == sorted_median(fills));
        CHECK(j["variants"][v]["median_cells"].get<double>() == sorted_median(cells));
        CHECK(j["variants"][v]["error_trials"] == errs.size());
    }
    std::ostringstream table;
    print_table(table, r);
    CHECK(table.str().find("band") != std::string::npos);
}

TEST_CASE("bench is reproducible and independent of the thread count") {
    const data::Corpus c = corpus_of(10, 50, 3);
    BenchConfig cfg;
    cfg.trials = 20;
    cfg.seed = 11;
    cfg.models = &tiny_models();
    const BenchReport one = run_bench(c.series, cfg);
    cfg.threads = 3;
    const BenchReport three = run_bench(c.series, cfg);
    REQUIRE(one.trials.size() == three.trials.size());
    CHECK(one.summary.radius == three.summary.radius);
    for (std::size_t k = 0; k < one.trials.size(); ++k) {
        CHECK(one.trials[k].a == three.trials[k].a);
        CHECK(one.trials[k].b == three.trials[k].b);
        for (Variant v : {Variant::full, Variant::band, Variant::ml}) {
            CHECK(one.trials[k].get(v)->distance == three.trials[k].get(v)->distance);
            CHECK(one.trials[k].get(v)->cells == three.trials[k].get(v)->cells);
        }
    }
    CHECK(one.summary.per_variant[2]->median_error_pct == three.summary.per_variant[2]->median_error_pct);
}

TEST_CASE("radius selection without ml") {
    const data::Corpus c = corpus_of(5, 47, 4);
    BenchConfig cfg;
    cfg.trials = 6;
    cfg.variants = {Variant::band};
    const BenchReport d = run_bench(c.series, cfg);
    CHECK(d.summary.radius == 5);  // 10% of 47, rounded
    CHECK(d.summary.radius_mode == RadiusMode::default_fraction);
    CHECK(!d.summary.per_variant[0]);
    cfg.radius = 47;
    const BenchReport wide = run_bench(c.series, cfg);
    for (const TrialRecord& t : wide.trials) CHECK(t.get(Variant::band)->error_pct == 0.0);
    CHECK(wide.summary.radius_mode == RadiusMode::fixed);
}

TEST_CASE("zero exact distances are excluded from error medians") {
    std::vector<TimeSeries> same{TimeSeries({1, 2, 3, 4}), TimeSeries({1, 2, 3, 4}), TimeSeries({1, 2, 3, 4})};
    BenchConfig cfg;
    cfg.trials = 6;
    cfg.variants = {Variant::full, Variant::band};
    const BenchReport r = run_bench(same, cfg);
    CHECK(r.summary.excluded == 6);
    CHECK(r.summary.per_variant[0]->error_count == 0);
    CHECK(std::isnan(r.summary.per_variant[0]->median_error_pct));
    const auto dir = oracle::scratch_dir("bench_zero");
    write_summary_json(dir / "s.json", r);
    std::ifstream js(dir / "s.json");
    CHECK(nlohmann::json::parse(js)["variants"]["full"]["median_error_pct"].is_null());
}

TEST_CASE("bench argument errors") {
    const data::Corpus c = corpus_of(3, 20, 5);
    BenchConfig cfg;
    cfg.variants = {Variant::full};
    cfg.trials = 0;
    CHECK_THROWS_AS(run_bench(c.series, cfg), InvalidArgument);
    cfg.trials = 7;
    CHECK_THROWS_AS(run_bench(c.series, cfg), InvalidArgument);
    cfg.trials = 6;
    CHECK(run_bench(c.series, cfg).trials.size() == 6);
    cfg.variants = {};
    CHECK_THROWS_AS(run_bench(c.series, cfg), InvalidArgument);
    cfg.variants = {Variant::ml};
    CHECK_THROWS_AS(run_bench(c.series, cfg), InvalidArgument);
    cfg.variants = {Variant::band};
    cfg.radius = 0;
    CHECK_THROWS_AS(run_bench(c.series, cfg), InvalidArgument);
}
