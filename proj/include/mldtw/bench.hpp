#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mldtw/pipeline.hpp"
#include "mldtw/time_series.hpp"

namespace mldtw::bench {

enum class Variant { full = 0, band = 1, ml = 2 };
inline constexpr std::size_t kVariantCount = 3;

const char* variant_name(Variant v) noexcept;
/// Parses "full", "band" or "ml"; throws InvalidArgument otherwise.
Variant parse_variant(const std::string& name);

struct VariantResult {
    double distance = 0.0;
    double error_pct = 0.0;  // +inf when the exact distance is 0 and this one is not
    double fill_seconds = 0.0;
    std::size_t cells = 0;
};

struct TrialRecord {
    std::size_t index = 0;
    std::size_t a = 0;
    std::size_t b = 0;
    std::string a_id;
    std::string b_id;
    double exact = 0.0;
    std::array<std::optional<VariantResult>, kVariantCount> variants;
    double ml_inference_seconds = 0.0;

    const std::optional<VariantResult>& get(Variant v) const { return variants[static_cast<std::size_t>(v)]; }
};

struct VariantSummary {
    double median_error_pct = 0.0;
    double median_fill_seconds = 0.0;
    double median_cells = 0.0;
    std::size_t error_count = 0;  // trials contributing to the error median
};

enum class RadiusMode { fixed, budget_fair, default_fraction };

struct BenchSummary {
    std::size_t trials = 0;
    std::size_t excluded = 0;  // trials with exact distance 0 (no error defined)
    std::uint64_t seed = 0;
    std::size_t radius = 0;
    RadiusMode radius_mode = RadiusMode::fixed;
    std::size_t threads = 1;
    std::vector<Variant> variants;
    std::array<std::optional<VariantSummary>, kVariantCount> per_variant;
    double median_ml_inference_seconds = 0.0;
};

struct BenchConfig {
    std::size_t trials = 100;
    std::vector<Variant> variants{Variant::full, Variant::band, Variant::ml};
    std::uint64_t seed = 0;
    std::optional<std::size_t> radius;  // unset: budget-fair with ml, else 10% of the longest series
    std::size_t threads = 1;
    const WaypointModelSet* models = nullptr;  // required for Variant::ml
};

struct BenchReport {
    std::vector<TrialRecord> trials;
    BenchSummary summary;
};

/// Median of the values (mean of the middle two for even counts); NaN if empty.
double median(std::vector<double> values);

/// Band radius whose mean cell count over the given pairs is closest to
/// `target_area` (ties go to the smaller radius).
std::size_t budget_fair_radius(std::span<const TimeSeries> corpus,
                               std::span<const std::pair<std::size_t, std::size_t>> pairs, double target_area);

/// Samples `trials` ordered pairs and runs every requested variant plus the
/// exact reference on each. Records are ordered by trial index regardless of
/// worker scheduling. Throws InvalidArgument for trials == 0, more trials than
/// ordered pairs, an empty variant list, or ml without models.
BenchReport run_bench(std::span<const TimeSeries> corpus, const BenchConfig& config);

/// Recomputes the summary from trial records.
BenchSummary summarize(std::span<const TrialRecord> trials, const BenchConfig& config, std::size_t radius,
                       RadiusMode mode);

void write_trials_csv(const std::filesystem::path& path, const BenchReport& report);
void write_summary_json(const std::filesystem::path& path, const BenchReport& report);
void print_table(std::ostream& out, const BenchReport& report);

}  // namespace mldtw::bench
