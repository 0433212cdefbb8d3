#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <string_view>

#include "mldtw/error.hpp"
#include "mldtw/pipeline.hpp"

namespace mldtw {

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) return out;
        start = comma + 1;
    }
}

}  // namespace

void write_training_csv(const std::filesystem::path& path, std::span<const LabeledRow> rows) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    const std::size_t width = rows.empty() ? 0 : rows.front().features.size();
    for (std::size_t f = 0; f < width; ++f) out << 'f' << f << ',';
    for (std::size_t k = 0; k < kWaypointCount; ++k)
        out << "wp" << k << "_row,wp" << k << "_col" << (k + 1 < kWaypointCount ? "," : "\n");
    char buf[32];
    for (const LabeledRow& row : rows) {
        if (row.features.size() != width) throw DimensionMismatch("labeled rows have differing feature counts");
        for (double v : row.features) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << buf << ',';
        }
        for (std::size_t k = 0; k < kWaypointCount; ++k)
            out << row.waypoints[k].row << ',' << row.waypoints[k].col << (k + 1 < kWaypointCount ? "," : "\n");
    }
    if (!out) throw IoError("failed writing " + path.string());
}

std::vector<LabeledRow> read_training_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw CsvError(CsvError::Kind::empty_file, 0, "training CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const auto header = split_commas(line);
    if (header.size() < 2 * kWaypointCount) throw CsvError(CsvError::Kind::bad_header, 1, "training CSV header too short");
    const std::size_t width = header.size() - 2 * kWaypointCount;
    for (std::size_t f = 0; f < width; ++f)
        if (header[f] != "f" + std::to_string(f))
            throw CsvError(CsvError::Kind::bad_header, 1, "expected feature column f" + std::to_string(f));
    for (std::size_t k = 0; k < kWaypointCount; ++k) {
        const std::string base = "wp" + std::to_string(k);
        if (header[width + 2 * k] != base + "_row" || header[width + 2 * k + 1] != base + "_col")
            throw CsvError(CsvError::Kind::bad_header, 1, "expected columns " + base + "_row," + base + "_col");
    }

    std::vector<LabeledRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_commas(line);
        if (cells.size() != header.size())
            throw CsvError(CsvError::Kind::ragged_row, line_no,
                           "expected " + std::to_string(header.size()) + " columns, found " + std::to_string(cells.size()));
        LabeledRow row;
        row.features.resize(width);
        for (std::size_t f = 0; f < width; ++f) {
            const auto cell = cells[f];
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), row.features[f]);
            if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(row.features[f]))
                throw CsvError(CsvError::Kind::non_numeric, line_no, "non-numeric feature '" + std::string(cell) + "'");
        }
        for (std::size_t k = 0; k < kWaypointCount; ++k) {
            int* targets[2] = {&row.waypoints[k].row, &row.waypoints[k].col};
            for (int c = 0; c < 2; ++c) {
                const auto cell = cells[width + 2 * k + static_cast<std::size_t>(c)];
                const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), *targets[c]);
                if (ec != std::errc() || ptr != cell.data() + cell.size())
                    throw CsvError(CsvError::Kind::non_numeric, line_no, "non-integer waypoint '" + std::string(cell) + "'");
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace mldtw
