#include <doctest.h>

#include <fstream>
#include <iterator>

#include "mldtw/banded.hpp"
#include "mldtw/dtw.hpp"
#include "mldtw/error.hpp"
#include "mldtw/heatmap.hpp"
#include "oracles.hpp"

using namespace mldtw;

TEST_CASE("heatmap dimensions and shading") {
    const TimeSeries a({1, 2, 3});
    const TimeSeries b({2, 2, 2, 3, 4});
    const CostMatrix m = full_cost_matrix(a, b);
    const GrayImage img = render_heatmap(m);
    CHECK(img.height == 4);
    CHECK(img.width == 6);
    CHECK(img.pixels.size() == 24);
    CHECK(img.at(0, 0) == 0);    // D(0,0) = 0 is the minimum
    CHECK(img.at(0, 3) == 255);  // border
    CHECK(img.at(2, 0) == 255);
    CHECK(img.at(1, 5) == 254);  // D(1,5) = 8 is the maximum
    CHECK(img.at(2, 4) == 64);   // D(2,4) = 2 -> round(254 * 2 / 8)
}

TEST_CASE("constant matrices and path overlay") {
    CostMatrix m(2, 2);
    m(1, 1) = m(1, 2) = m(2, 1) = m(2, 2) = 0.0;
    const GrayImage flat = render_heatmap(m);
    CHECK(flat.at(1, 1) == 128);
    CHECK(flat.at(0, 0) == 128);
    CHECK(flat.at(0, 1) == 255);

    const TimeSeries a({0, 1, 5, 2});
    const Alignment al = full_dtw(a, a);
    const CostMatrix full = full_cost_matrix(a, a);
    const GrayImage img = render_heatmap(full, &al.path);
    for (const Cell& c : al.path.pairs) CHECK(img.at(c.row, c.col) == 0);
    CHECK(img.at(1, 4) != 0);
}

TEST_CASE("banded matrix leaves outside cells white") {
    const TimeSeries a({0, 1, 2, 3, 4, 5});
    const TimeSeries b({0, 2, 1, 3, 5, 4});
    const CostMatrix m = constrained_cost_matrix(a, b, sakoe_chiba_region(6, 6, 1));
    const GrayImage img = render_heatmap(m);
    CHECK(img.at(1, 5) == 255);
    CHECK(img.at(6, 1) == 255);
    CHECK(img.at(3, 3) < 255);
}

TEST_CASE("PGM output") {
    const auto dir = oracle::scratch_dir("heatmap");
    const TimeSeries a({1, 2, 3});
    const TimeSeries b({2, 2, 2, 3, 4});
    const CostMatrix m = full_cost_matrix(a, b);
    heatmap_export(m, dir / "h.pgm");
    std::ifstream in(dir / "h.pgm", std::ios::binary);
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const std::string header = "P5\n6 4\n255\n";
    REQUIRE(bytes.size() == header.size() + 24);
    CHECK(bytes.substr(0, header.size()) == header);
    const GrayImage img = render_heatmap(m);
    CHECK(std::equal(img.pixels.begin(), img.pixels.end(), reinterpret_cast<const std::uint8_t*>(bytes.data()) + header.size()));
    CHECK_THROWS_AS(heatmap_export(m, dir / "missing_dir" / "h.pgm"), IoError);
}
