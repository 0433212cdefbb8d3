#include <doctest.h>

#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <sstream>

#include "mldtw/datasets.hpp"
#include "mldtw/error.hpp"
#include "oracles.hpp"

using namespace mldtw;
using namespace mldtw::data;

namespace {

// Naive DFT magnitude peak over bins 1..len/2.
std::size_t dominant_bin(std::span<const double> v) {
    const std::size_t n = v.size();
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t k = 1; k <= n / 2; ++k) {
        std::complex<double> acc{0, 0};
        for (std::size_t t = 0; t < n; ++t)
            acc += v[t] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k * t) / static_cast<double>(n));
        if (std::abs(acc) > best_mag) {
            best_mag = std::abs(acc);
            best = k;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("synth series oscillate at the drawn frequency") {
    SynthConfig cfg;
    cfg.count = 40;
    cfg.length = 200;
    cfg.seed = 17;
    const auto [corpus, params] = gen_synth_with_params(cfg);
    REQUIRE(corpus.size() == 40);
    for (std::size_t s = 0; s < corpus.size(); ++s) {
        const TimeSeries& ts = corpus.series[s];
        CHECK(ts.size() == 200);
        CHECK(ts.dim() == 1);
        CHECK(params[s].frequency >= 0.5);
        CHECK(params[s].frequency <= 3.0);
        const double bin = static_cast<double>(dominant_bin(ts.values()));
        CHECK(std::abs(bin - params[s].frequency) <= 1.0);
        for (double v : ts.values()) CHECK(std::abs(v) <= 1.0 + cfg.noise_frac);
    }
}

TEST_CASE("synth noise stays within its bound") {
    SynthConfig cfg;
    cfg.count = 5;
    cfg.length = 64;
    cfg.seed = 2;
    cfg.noise_frac = 0.0;
    const auto [clean, params] = gen_synth_with_params(cfg);
    for (std::size_t s = 0; s < 5; ++s)
        for (std::size_t t = 0; t < 64; ++t)
            CHECK(clean.series[s].values()[t] ==
                  std::sin(2.0 * std::numbers::pi * params[s].frequency * static_cast<double>(t) / 64.0 + params[s].phase));
}

TEST_CASE("synth is deterministic in its seed") {
    SynthConfig cfg;
    cfg.count = 6;
    cfg.length = 50;
    cfg.seed = 99;
    std::ostringstream a, b, c;
    write_series_csv(a, gen_synth(cfg));
    write_series_csv(b, gen_synth(cfg));
    cfg.seed = 100;
    write_series_csv(c, gen_synth(cfg));
    CHECK(a.str() == b.str());
    CHECK(a.str() != c.str());
}

TEST_CASE("synth rejects bad configurations") {
    SynthConfig cfg;
    cfg.count = 0;
    CHECK_THROWS_AS(gen_synth(cfg), InvalidArgument);
    cfg.count = 2;
    cfg.length = 7;
    CHECK_THROWS_AS(gen_synth(cfg), InvalidArgument);
    cfg.length = 8;
    cfg.noise_frac = -0.1;
    CHECK_THROWS_AS(gen_synth(cfg), InvalidArgument);
    cfg.noise_frac = std::nan("");
    CHECK_THROWS_AS(gen_synth(cfg), InvalidArgument);
}

TEST_CASE("CSV round trip preserves values exactly") {
    const auto dir = oracle::scratch_dir("datasets_roundtrip");
    SynthConfig cfg;
    cfg.count = 4;
    cfg.length = 30;
    cfg.seed = 5;
    const Corpus c = gen_synth(cfg);
    write_series_csv(dir / "s.csv", c);
    const Corpus back = load_series_csv(dir / "s.csv", CsvSchema::univariate);
    REQUIRE(back.size() == 4);
    for (std::size_t s = 0; s < 4; ++s) {
        const auto x = c.series[s].values();
        const auto y = back.series[s].values();
        CHECK(std::equal(x.begin(), x.end(), y.begin(), y.end()));
    }
}

TEST_CASE("univariate and xy schemas") {
    std::istringstream uni("value\n1\n2\n3\n\n4\n5\n");
    const Corpus u = parse_series_csv(uni, CsvSchema::univariate);
    REQUIRE(u.size() == 2);
    CHECK(u.series[0].size() == 3);
    CHECK(u.series[1].values()[1] == 5.0);

    std::istringstream xy("1,2\n3,4\n5,6\n");
    const Corpus p = parse_series_csv(xy, CsvSchema::xy);
    REQUIRE(p.size() == 1);
    CHECK(p.dim == 2);
    CHECK(p.series[0].size() == 3);
    CHECK(p.series[0].point(2)[1] == 6.0);
}

TEST_CASE("xyz schema reduces rows to magnitudes") {
    CHECK(acc_magnitude(3, 4, 12) == 13.0);
    CHECK(acc_magnitude(0, 0, 0) == 0.0);
    std::istringstream in("time,x,y,z\n0,3,4,0\n1,0,0,2\n2,1,2,2\n");
    const Corpus c = parse_series_csv(in, CsvSchema::xyz_magnitude);
    REQUIRE(c.size() == 1);
    const auto v = c.series[0].values();
    CHECK(v[0] == 5.0);
    CHECK(v[1] == 2.0);
    CHECK(v[2] == 3.0);
}

TEST_CASE("CSV errors carry kind and line") {
    auto kind_of = [](const std::string& text, CsvSchema schema) {
        std::istringstream in(text);
        try {
            parse_series_csv(in, schema);
        } catch (const CsvError& e) {
            return std::make_pair(e.kind(), e.line());
        }
        FAIL("expected CsvError");
        return std::make_pair(CsvError::Kind::empty_file, std::size_t{0});
    };
    CHECK(kind_of("", CsvSchema::univariate).first == CsvError::Kind::empty_file);
    CHECK(kind_of("\n\n", CsvSchema::univariate).first == CsvError::Kind::empty_file);
    CHECK(kind_of("1,2\n3\n", CsvSchema::xy) == std::make_pair(CsvError::Kind::ragged_row, std::size_t{2}));
    CHECK(kind_of("1\n2\nx\n", CsvSchema::univariate) == std::make_pair(CsvError::Kind::non_numeric, std::size_t{3}));
    CHECK(kind_of("1\nnan\n", CsvSchema::univariate).first == CsvError::Kind::non_numeric);
    CHECK(kind_of("0,1,2,3\n", CsvSchema::xyz_magnitude).first == CsvError::Kind::bad_header);
    CHECK(kind_of("1\n2\n\n3\n", CsvSchema::univariate) == std::make_pair(CsvError::Kind::short_series, std::size_t{4}));
    CHECK_THROWS_AS(load_series_csv(oracle::scratch_dir("datasets_missing") / "none.csv", CsvSchema::univariate),
                    IoError);
}

TEST_CASE("windowing") {
    Corpus c;
    c.series.emplace_back(std::vector<double>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    const Corpus w = window_corpus(c, 4, 3);
    REQUIRE(w.size() == 3);  // starts 0, 3, 6
    CHECK(w.series[2].values()[0] == 6.0);
    CHECK(w.series[2].values()[3] == 9.0);
    CHECK(window_corpus(c, 10, 1).size() == 1);
    CHECK_THROWS_AS(window_corpus(c, 11, 1), InvalidArgument);
    CHECK_THROWS_AS(window_corpus(c, 1, 1), InvalidArgument);
    CHECK_THROWS_AS(window_corpus(c, 4, 0), InvalidArgument);

    Corpus xy;
    xy.dim = 2;
    xy.series.emplace_back(std::vector<double>{0, 0, 1, 1, 2, 2, 3, 3}, 2);
    const Corpus wx = window_corpus(xy, 2, 2);
    REQUIRE(wx.size() == 2);
    CHECK(wx.series[1].dim() == 2);
    CHECK(wx.series[1].point(0)[0] == 2.0);
}
