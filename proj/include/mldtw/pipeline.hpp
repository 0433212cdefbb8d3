#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "mldtw/cost_matrix.hpp"
#include "mldtw/datasets.hpp"
#include "mldtw/nn/dense_net.hpp"
#include "mldtw/nn/train.hpp"
#include "mldtw/region.hpp"
#include "mldtw/search_region.hpp"
#include "mldtw/time_series.hpp"

namespace mldtw {

enum class FeatureMode : std::uint8_t {
    raw_prefix = 0,    // first L points of A then first W points of B
    matrix_block = 1,  // the L x W top-left block of the exact cost matrix
};

struct FeatureConfig {
    std::size_t prefix_a = 30;  // L
    std::size_t prefix_b = 30;  // W
    FeatureMode mode = FeatureMode::raw_prefix;

    std::size_t feature_count(std::size_t dim) const noexcept {
        return mode == FeatureMode::raw_prefix ? (prefix_a + prefix_b) * dim : prefix_a * prefix_b;
    }
};

/// Concatenated raw prefixes, multi-dimensional points flattened in point
/// order. Throws InvalidArgument if a series is shorter than its prefix.
std::vector<double> extract_features(const TimeSeries& a, const TimeSeries& b, std::size_t prefix_a,
                                     std::size_t prefix_b);

/// Accumulated costs D(i, j), i <= L, j <= W, listed column by column.
std::vector<double> extract_block_features(const TimeSeries& a, const TimeSeries& b, std::size_t prefix_a,
                                           std::size_t prefix_b);

std::vector<double> extract_features(const TimeSeries& a, const TimeSeries& b, const FeatureConfig& config);

/// For each interior column c_k = round(k m / 6): the (floored) mean 0-based
/// path row at that column, and c_k, both rounded to multiples of `quantum`.
/// Rows that would round past n-1 fall back to the largest multiple below n.
WaypointSet extract_waypoints(const WarpPath& path, std::size_t n, std::size_t m, int quantum = kDefaultQuantum);

struct LabeledRow {
    std::vector<double> features;
    WaypointSet waypoints{};
};

struct LabelConfig {
    FeatureConfig features;
    int quantum = static_cast<int>(kDefaultQuantum);
    std::size_t max_pairs = 0;  // 0: every ordered pair
    std::uint64_t seed = 0;     // pair sampling when max_pairs limits the set
    std::size_t threads = 1;
};

struct LabelResult {
    std::vector<LabeledRow> rows;
    std::size_t skipped = 0;  // pairs whose series are shorter than the prefixes
};

/// Runs exact DTW on ordered pairs (i != j) of the corpus and emits one
/// labeled row per pair, in (i, j) order. Throws InvalidArgument for fewer
/// than 2 series and DimensionMismatch for mixed dimensions.
LabelResult build_training_set(std::span<const TimeSeries> corpus, const LabelConfig& config);

/// Training CSV: header "f0,...,f{F-1},wp0_row,wp0_col,...,wp4_row,wp4_col",
/// one row per pair, '.' decimal, 17 significant digits.
void write_training_csv(const std::filesystem::path& path, std::span<const LabeledRow> rows);
std::vector<LabeledRow> read_training_csv(const std::filesystem::path& path);

/// Five classifiers, one per waypoint position, sharing one feature layout.
struct WaypointModelSet {
    std::array<nn::Classifier, kWaypointCount> models;
    FeatureConfig features;
    int quantum = static_cast<int>(kDefaultQuantum);
    std::size_t dim = 1;
    std::string dataset_id;

    struct Output {
        WaypointSet waypoints{};
        std::array<double, kWaypointCount> confidences{};
    };

    /// Throws DimensionMismatch if the series do not match the trained
    /// dimension, InvalidArgument if they are shorter than the prefixes.
    Output predict(const TimeSeries& a, const TimeSeries& b) const;
};

struct ModelSetTraining {
    WaypointModelSet models;
    std::array<nn::TrainHistory, kWaypointCount> histories;
    std::array<double, kWaypointCount> majority_baseline{};  // share of the most frequent label
};

/// Trains the five classifiers; model k uses seed config.seed + k. The label
/// alphabet of position k is the sorted set of its observed waypoints.
/// Throws InvalidArgument when any position has fewer than two labels.
ModelSetTraining train_waypoint_models(std::span<const LabeledRow> rows, const nn::TrainConfig& config,
                                       const FeatureConfig& features, std::size_t dim, int quantum,
                                       std::string dataset_id, std::size_t threads = 1);

/// Model set file: "MLDTWST1", u32 prefix_a, u32 prefix_b, u32 quantum,
/// u8 feature mode, u32 dim, u32 id length + id bytes, u32 model count, per
/// model u64 length + classifier bytes, then a CRC-32 trailer.
std::vector<std::uint8_t> encode_model_set(const WaypointModelSet& set);
WaypointModelSet decode_model_set(std::span<const std::uint8_t> bytes);
void save_model_set(const std::filesystem::path& path, const WaypointModelSet& set);
WaypointModelSet load_model_set(const std::filesystem::path& path);

struct RegionStats {
    std::size_t area = 0;
    WaypointSet waypoints{};
    std::array<double, kWaypointCount> confidences{};
    std::chrono::nanoseconds inference_time{0};
    std::chrono::nanoseconds fill_time{0};
};

struct MlAlignment {
    Alignment alignment;
    RegionStats stats;
};

/// Search region for predicted waypoints: center path, widths from the
/// confidences (with a leading 1.0 for the (0,0) anchor), per-row intervals.
SearchRegion ml_region(const WaypointSet& waypoints, std::span<const double> confidences, std::size_t n,
                       std::size_t m);

/// Predict, build the region, fill it and backtrack.
MlAlignment ml_dtw(const TimeSeries& a, const TimeSeries& b, const WaypointModelSet& models);

/// Region pipeline with caller-supplied waypoints, bypassing the classifiers.
Alignment ml_dtw_with_waypoints(const TimeSeries& a, const TimeSeries& b, const WaypointSet& waypoints,
                                std::span<const double> confidences);

/// 100 (d - exact) / exact. Identical zero distances give 0; a positive
/// distance against a zero exact distance gives +infinity, which callers
/// exclude from aggregates.
double percent_error(double distance, double exact) noexcept;

}  // namespace mldtw
