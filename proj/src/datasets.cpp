#include "mldtw/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <string_view>

#include "mldtw/error.hpp"

namespace mldtw::data {

void SynthConfig::validate() const {
    if (count < 1) throw InvalidArgument("synth count must be >= 1");
    if (length < 8) throw InvalidArgument("synth length must be >= 8");
    if (!(noise_frac >= 0.0) || !std::isfinite(noise_frac)) throw InvalidArgument("synth noise must be >= 0");
    if (!(freq_lo > 0.0 && freq_hi >= freq_lo)) throw InvalidArgument("synth frequency range is empty");
}

std::pair<Corpus, std::vector<SynthParams>> gen_synth_with_params(const SynthConfig& config) {
    config.validate();
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> freq(config.freq_lo, config.freq_hi);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> noise(-config.noise_frac, config.noise_frac);

    Corpus corpus;
    corpus.dim = 1;
    corpus.source = CorpusSource::synth;
    corpus.seed = config.seed;
    std::vector<SynthParams> params;
    corpus.series.reserve(config.count);
    params.reserve(config.count);
    const auto len = static_cast<double>(config.length);
    for (std::size_t s = 0; s < config.count; ++s) {
        const SynthParams p{freq(rng), phase(rng)};
        std::vector<double> values(config.length);
        for (std::size_t t = 0; t < config.length; ++t) {
            const double clean = std::sin(2.0 * std::numbers::pi * p.frequency * static_cast<double>(t) / len + p.phase);
            values[t] = config.noise_frac > 0.0 ? clean + noise(rng) : clean;
        }
        corpus.series.emplace_back(std::move(values), 1, "synth-" + std::to_string(s));
        params.push_back(p);
    }
    return {std::move(corpus), std::move(params)};
}

Corpus gen_synth(const SynthConfig& config) { return gen_synth_with_params(config).first; }

double acc_magnitude(double ax, double ay, double az) noexcept { return std::sqrt(ax * ax + ay * ay + az * az); }

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

bool parse_double(std::string_view s, double& out) {
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

bool all_non_numeric(const std::vector<std::string_view>& cells) {
    double v;
    return std::none_of(cells.begin(), cells.end(), [&](std::string_view c) { return parse_double(c, v); });
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

Corpus parse_series_csv(std::istream& in, CsvSchema schema) {
    const std::size_t columns = schema == CsvSchema::univariate ? 1 : schema == CsvSchema::xy ? 2 : 4;
    const std::size_t dim = schema == CsvSchema::xy ? 2 : 1;

    Corpus corpus;
    corpus.dim = dim;
    corpus.source = CorpusSource::csv;

    std::vector<double> block;
    std::size_t block_start = 0;
    auto flush = [&]() {
        if (block.empty()) return;
        if (block.size() / dim < TimeSeries::min_length)
            throw CsvError(CsvError::Kind::short_series, block_start, "series has fewer than 2 points");
        corpus.series.emplace_back(std::move(block), dim, std::to_string(corpus.series.size()));
        block.clear();
    };

    std::string raw;
    std::size_t line_no = 0;
    bool seen_content = false;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty()) {
            flush();
            continue;
        }
        const auto cells = split(line);
        if (!seen_content) {
            seen_content = true;
            if (schema == CsvSchema::xyz_magnitude) {
                if (cells.size() != 4 || lower(cells[0]) != "time" || lower(cells[1]) != "x" ||
                    lower(cells[2]) != "y" || lower(cells[3]) != "z")
                    throw CsvError(CsvError::Kind::bad_header, line_no, "expected header 'time,x,y,z'");
                continue;
            }
            if (all_non_numeric(cells)) continue;  // optional header
        }
        if (cells.size() != columns)
            throw CsvError(CsvError::Kind::ragged_row, line_no,
                           "expected " + std::to_string(columns) + " columns, found " + std::to_string(cells.size()));
        double v[4];
        for (std::size_t c = 0; c < columns; ++c)
            if (!parse_double(cells[c], v[c]))
                throw CsvError(CsvError::Kind::non_numeric, line_no, "non-numeric cell '" + std::string(cells[c]) + "'");
        if (block.empty()) block_start = line_no;
        switch (schema) {
            case CsvSchema::univariate: block.push_back(v[0]); break;
            case CsvSchema::xy: block.insert(block.end(), {v[0], v[1]}); break;
            case CsvSchema::xyz_magnitude: block.push_back(acc_magnitude(v[1], v[2], v[3])); break;
        }
    }
    flush();
    if (corpus.series.empty()) throw CsvError(CsvError::Kind::empty_file, 0, "no series found in CSV input");
    return corpus;
}

Corpus load_series_csv(const std::filesystem::path& path, CsvSchema schema) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return parse_series_csv(in, schema);
}

void write_series_csv(std::ostream& out, const Corpus& corpus) {
    char buf[32];
    for (std::size_t s = 0; s < corpus.series.size(); ++s) {
        if (s > 0) out << '\n';
        const TimeSeries& ts = corpus.series[s];
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const Point p = ts.point(i);
            for (std::size_t d = 0; d < p.size(); ++d) {
                std::snprintf(buf, sizeof buf, "%.17g", p[d]);
                if (d > 0) out << ',';
                out << buf;
            }
            out << '\n';
        }
    }
}

void write_series_csv(const std::filesystem::path& path, const Corpus& corpus) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_series_csv(out, corpus);
    if (!out) throw IoError("failed writing " + path.string());
}

Corpus window_corpus(const Corpus& corpus, std::size_t length, std::size_t stride) {
    if (length < TimeSeries::min_length) throw InvalidArgument("window length must be >= 2");
    if (stride < 1) throw InvalidArgument("window stride must be >= 1");
    Corpus out;
    out.dim = corpus.dim;
    out.source = corpus.source;
    out.seed = corpus.seed;
    for (const TimeSeries& ts : corpus.series) {
        const auto values = ts.values();
        for (std::size_t start = 0; start + length <= ts.size(); start += stride) {
            std::vector<double> w(values.begin() + static_cast<std::ptrdiff_t>(start * ts.dim()),
                                  values.begin() + static_cast<std::ptrdiff_t>((start + length) * ts.dim()));
            out.series.emplace_back(std::move(w), ts.dim(), ts.id() + "@" + std::to_string(start));
        }
    }
    if (out.series.empty()) throw InvalidArgument("no window of the requested length fits any series");
    return out;
}

}  // namespace mldtw::data
