#include "mldtw/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>

#include "fill.hpp"
#include "mldtw/banded.hpp"
#include "mldtw/dtw.hpp"
#include "mldtw/error.hpp"
#include "mldtw/parallel.hpp"
#include "mldtw/sampling.hpp"

namespace mldtw {

std::size_t resolve_threads(std::size_t requested) noexcept {
    if (const char* env = std::getenv("MLDTW_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

namespace {

void require_prefix(const TimeSeries& s, std::size_t prefix, const char* which) {
    if (s.size() < prefix)
        throw InvalidArgument(std::string("series ") + which + " has " + std::to_string(s.size()) +
                              " points, shorter than the prefix of " + std::to_string(prefix));
}

}  // namespace

std::vector<double> extract_features(const TimeSeries& a, const TimeSeries& b, std::size_t prefix_a,
                                     std::size_t prefix_b) {
    detail::require_same_dim(a, b);
    require_prefix(a, prefix_a, "A");
    require_prefix(b, prefix_b, "B");
    const auto pa = a.prefix(prefix_a);
    const auto pb = b.prefix(prefix_b);
    std::vector<double> out;
    out.reserve(pa.size() + pb.size());
    out.insert(out.end(), pa.begin(), pa.end());
    out.insert(out.end(), pb.begin(), pb.end());
    return out;
}

std::vector<double> extract_block_features(const TimeSeries& a, const TimeSeries& b, std::size_t prefix_a,
                                           std::size_t prefix_b) {
    require_prefix(a, prefix_a, "A");
    require_prefix(b, prefix_b, "B");
    const auto pa = a.prefix(prefix_a);
    const auto pb = b.prefix(prefix_b);
    const CostMatrix block = full_cost_matrix(TimeSeries({pa.begin(), pa.end()}, a.dim()),
                                              TimeSeries({pb.begin(), pb.end()}, b.dim()));
    std::vector<double> out;
    out.reserve(prefix_a * prefix_b);
    for (std::size_t j = 1; j <= prefix_b; ++j)
        for (std::size_t i = 1; i <= prefix_a; ++i) out.push_back(block(i, j));
    return out;
}

std::vector<double> extract_features(const TimeSeries& a, const TimeSeries& b, const FeatureConfig& config) {
    return config.mode == FeatureMode::raw_prefix ? extract_features(a, b, config.prefix_a, config.prefix_b)
                                                  : extract_block_features(a, b, config.prefix_a, config.prefix_b);
}

WaypointSet extract_waypoints(const WarpPath& path, std::size_t n, std::size_t m, int quantum) {
    if (quantum < 1) throw InvalidArgument("quantization base must be >= 1");
    const auto cols = interior_columns(m);
    auto fit = [quantum](int q, std::size_t bound) {
        const int limit = static_cast<int>(bound) - 1;
        return q > limit ? (limit / quantum) * quantum : q;
    };
    WaypointSet out{};
    for (std::size_t k = 0; k < kWaypointCount; ++k) {
        long long sum = 0;
        long long count = 0;
        for (const Cell& c : path.pairs)
            if (static_cast<int>(c.col) - 1 == cols[k]) {
                sum += static_cast<long long>(c.row) - 1;
                ++count;
            }
        if (count == 0) throw InvalidArgument("warp path does not visit column " + std::to_string(cols[k]));
        const auto mean_row = static_cast<double>(sum / count);
        out[k] = {fit(quantize(mean_row, quantum), n), fit(quantize(cols[k], quantum), m)};
    }
    return out;
}

LabelResult build_training_set(std::span<const TimeSeries> corpus, const LabelConfig& config) {
    const std::size_t k = corpus.size();
    if (k < 2) throw InvalidArgument("labeling needs at least 2 series");
    for (const TimeSeries& s : corpus)
        if (s.dim() != corpus.front().dim()) throw DimensionMismatch("corpus mixes point dimensions");

    const auto pairs = sample_ordered_pairs(k, config.max_pairs, config.seed);

    std::vector<std::optional<LabeledRow>> slots(pairs.size());
    parallel_for(pairs.size(), config.threads, [&](std::size_t idx) {
        const auto [i, j] = pairs[idx];
        const TimeSeries& a = corpus[i];
        const TimeSeries& b = corpus[j];
        if (a.size() < config.features.prefix_a || b.size() < config.features.prefix_b) return;
        const Alignment exact = full_dtw(a, b);
        LabeledRow row;
        row.features = extract_features(a, b, config.features);
        row.waypoints = extract_waypoints(exact.path, a.size(), b.size(), config.quantum);
        slots[idx] = std::move(row);
    });

    LabelResult result;
    for (auto& slot : slots) {
        if (slot)
            result.rows.push_back(std::move(*slot));
        else
            ++result.skipped;
    }
    return result;
}

WaypointModelSet::Output WaypointModelSet::predict(const TimeSeries& a, const TimeSeries& b) const {
    if (a.dim() != dim || b.dim() != dim)
        throw DimensionMismatch("model set was trained on dim " + std::to_string(dim) + " series");
    const std::vector<double> x = extract_features(a, b, features);
    Output out;
    for (std::size_t k = 0; k < kWaypointCount; ++k) {
        const nn::Prediction p = nn::predict(models[k], x);
        out.waypoints[k] = p.waypoint;
        out.confidences[k] = p.confidence;
    }
    return out;
}

ModelSetTraining train_waypoint_models(std::span<const LabeledRow> rows, const nn::TrainConfig& config,
                                       const FeatureConfig& features, std::size_t dim, int quantum,
                                       std::string dataset_id, std::size_t threads) {
    config.validate();
    if (rows.size() < 2) throw InvalidArgument("training needs at least 2 labeled rows");
    const std::size_t width = rows.front().features.size();
    if (width != features.feature_count(dim))
        throw DimensionMismatch("labeled rows carry " + std::to_string(width) + " features, the feature layout needs " +
                                std::to_string(features.feature_count(dim)));
    nn::Matrix x(rows.size(), width);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].features.size() != width) throw DimensionMismatch("labeled rows have differing feature counts");
        std::copy(rows[r].features.begin(), rows[r].features.end(), x.row(r).begin());
    }

    std::array<std::vector<Waypoint>, kWaypointCount> alphabets;
    std::array<std::vector<int>, kWaypointCount> labels;
    for (std::size_t k = 0; k < kWaypointCount; ++k) {
        std::map<Waypoint, std::size_t> counts;
        for (const LabeledRow& row : rows) ++counts[row.waypoints[k]];
        if (counts.size() < 2)
            throw InvalidArgument("waypoint " + std::to_string(k) + " has a single label; nothing to learn");
        for (const auto& entry : counts) alphabets[k].push_back(entry.first);
        labels[k].reserve(rows.size());
        for (const LabeledRow& row : rows) {
            const auto it = std::lower_bound(alphabets[k].begin(), alphabets[k].end(), row.waypoints[k]);
            labels[k].push_back(static_cast<int>(it - alphabets[k].begin()));
        }
    }

    const nn::Scaler scaler = nn::Scaler::fit(x);
    const nn::Matrix scaled = scaler.transform(x);

    ModelSetTraining out;
    out.models.features = features;
    out.models.quantum = quantum;
    out.models.dim = dim;
    out.models.dataset_id = std::move(dataset_id);
    parallel_for(kWaypointCount, threads, [&](std::size_t k) {
        nn::TrainConfig cfg = config;
        cfg.seed = config.seed + k;
        nn::TrainResult trained = nn::train_classifier(scaled, labels[k], alphabets[k].size(), cfg);
        trained.net.set_label_map(alphabets[k]);
        out.models.models[k] = {scaler, std::move(trained.net)};
        out.histories[k] = std::move(trained.history);
        std::vector<std::size_t> freq(alphabets[k].size(), 0);
        for (int label : labels[k]) ++freq[static_cast<std::size_t>(label)];
        out.majority_baseline[k] =
            static_cast<double>(*std::max_element(freq.begin(), freq.end())) / static_cast<double>(rows.size());
    });
    return out;
}

SearchRegion ml_region(const WaypointSet& waypoints, std::span<const double> confidences, std::size_t n,
                       std::size_t m) {
    std::vector<double> anchored{1.0};
    anchored.insert(anchored.end(), confidences.begin(), confidences.end());
    const CenterPath path = center_path(waypoints, n, m);
    const WidthProfile widths = width_profile(anchored, n, m);
    return region_from_path(path, widths, n, m);
}

Alignment ml_dtw_with_waypoints(const TimeSeries& a, const TimeSeries& b, const WaypointSet& waypoints,
                                std::span<const double> confidences) {
    detail::require_same_dim(a, b);
    return detail::align_in_region(a, b, ml_region(waypoints, confidences, a.size(), b.size()));
}

MlAlignment ml_dtw(const TimeSeries& a, const TimeSeries& b, const WaypointModelSet& models) {
    detail::require_same_dim(a, b);
    const auto start = std::chrono::steady_clock::now();
    const WaypointModelSet::Output predicted = models.predict(a, b);
    const auto predicted_at = std::chrono::steady_clock::now();

    MlAlignment out;
    out.alignment = ml_dtw_with_waypoints(a, b, predicted.waypoints, predicted.confidences);
    out.stats.area = out.alignment.cells_computed;
    out.stats.waypoints = predicted.waypoints;
    out.stats.confidences = predicted.confidences;
    out.stats.inference_time = std::chrono::duration_cast<std::chrono::nanoseconds>(predicted_at - start);
    out.stats.fill_time = out.alignment.fill_time;
    return out;
}

double percent_error(double distance, double exact) noexcept {
    if (exact == 0.0) return distance == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return 100.0 * (distance - exact) / exact;
}

}  // namespace mldtw
