#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "mldtw/time_series.hpp"

namespace mldtw::data {

enum class CorpusSource { synth, csv };

/// Non-empty list of series sharing one point dimension.
struct Corpus {
    std::vector<TimeSeries> series;
    std::size_t dim = 1;
    CorpusSource source = CorpusSource::csv;
    std::optional<std::uint64_t> seed;

    std::size_t size() const noexcept { return series.size(); }
};

struct SynthConfig {
    std::size_t count = 10000;
    std::size_t length = 200;
    double noise_frac = 0.075;  // uniform noise bound, as a fraction of the unit amplitude
    std::uint64_t seed = 0;
    double freq_lo = 0.5;  // cycles per window
    double freq_hi = 3.0;

    void validate() const;
};

struct SynthParams {
    double frequency = 0.0;
    double phase = 0.0;
};

/// Noisy sines sin(2 pi f t / length + phase) + U(-noise, noise) with
/// f ~ U[freq_lo, freq_hi] and phase ~ U[0, 2 pi). Deterministic in the seed.
/// Throws InvalidArgument for count < 1, length < 8, negative noise or an
/// empty frequency range.
Corpus gen_synth(const SynthConfig& config);

/// Same corpus plus the drawn frequency and phase of every series.
std::pair<Corpus, std::vector<SynthParams>> gen_synth_with_params(const SynthConfig& config);

/// sqrt(ax^2 + ay^2 + az^2)
double acc_magnitude(double ax, double ay, double az) noexcept;

enum class CsvSchema {
    univariate,     // "v" per row, header optional
    xy,             // "x,y" per row -> dim-2 points, header optional
    xyz_magnitude,  // header "time,x,y,z" required; rows reduce to |a|
};

/// Parses series separated by blank lines. Throws CsvError whose kind()
/// distinguishes an empty file, a ragged row, a non-numeric cell, a missing
/// header, and a series shorter than two points; IoError if unreadable.
Corpus load_series_csv(const std::filesystem::path& path, CsvSchema schema);
Corpus parse_series_csv(std::istream& in, CsvSchema schema);

/// Writes one value row per point (comma-separated for dim > 1), blocks
/// separated by one blank line, 17 significant digits, no header.
void write_series_csv(const std::filesystem::path& path, const Corpus& corpus);
void write_series_csv(std::ostream& out, const Corpus& corpus);

/// Cuts every series into windows of `length` points taken every `stride`
/// points; trailing partial windows are dropped. Throws InvalidArgument if
/// length < 2, stride < 1, or no window fits.
Corpus window_corpus(const Corpus& corpus, std::size_t length, std::size_t stride);

}  // namespace mldtw::data
