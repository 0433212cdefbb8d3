#include "mldtw/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>

#include <json.hpp>

#include "mldtw/banded.hpp"
#include "mldtw/dtw.hpp"
#include "mldtw/error.hpp"
#include "mldtw/parallel.hpp"
#include "mldtw/sampling.hpp"

namespace mldtw::bench {

namespace {

double seconds(std::chrono::nanoseconds ns) { return static_cast<double>(ns.count()) * 1e-9; }

VariantResult make_result(const Alignment& al, double exact) {
    return {al.distance, percent_error(al.distance, exact), seconds(al.fill_time), al.cells_computed};
}

const char* mode_name(RadiusMode m) {
    switch (m) {
        case RadiusMode::fixed: return "fixed";
        case RadiusMode::budget_fair: return "budget_fair";
        case RadiusMode::default_fraction: return "default_fraction";
    }
    return "?";
}

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

const char* variant_name(Variant v) noexcept {
    switch (v) {
        case Variant::full: return "full";
        case Variant::band: return "band";
        case Variant::ml: return "ml";
    }
    return "?";
}

Variant parse_variant(const std::string& name) {
    if (name == "full") return Variant::full;
    if (name == "band") return Variant::band;
    if (name == "ml") return Variant::ml;
    throw InvalidArgument("unknown variant '" + name + "' (expected full, band or ml)");
}

double median(std::vector<double> values) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1) return upper;
    const double lower = *std::max_element(values.begin(), values.begin() + mid);
    return 0.5 * (lower + upper);
}

std::size_t budget_fair_radius(std::span<const TimeSeries> corpus,
                               std::span<const std::pair<std::size_t, std::size_t>> pairs, double target_area) {
    if (pairs.empty()) throw InvalidArgument("budget-fair radius needs at least one pair");
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> shapes;
    std::size_t longest = 0;
    for (const auto& [i, j] : pairs) {
        ++shapes[{corpus[i].size(), corpus[j].size()}];
        longest = std::max({longest, corpus[i].size(), corpus[j].size()});
    }
    auto mean_area = [&](std::size_t r) {
        double total = 0.0;
        for (const auto& [shape, count] : shapes)
            total += static_cast<double>(sakoe_chiba_region(shape.first, shape.second, r).area()) *
                     static_cast<double>(count);
        return total / static_cast<double>(pairs.size());
    };
    // Mean area is non-decreasing in r; find the first r reaching the target.
    std::size_t lo = 1, hi = longest;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (mean_area(mid) >= target_area) hi = mid;
        else lo = mid + 1;
    }
    if (lo > 1 && std::abs(mean_area(lo - 1) - target_area) <= std::abs(mean_area(lo) - target_area)) return lo - 1;
    return lo;
}

BenchSummary summarize(std::span<const TrialRecord> trials, const BenchConfig& config, std::size_t radius,
                       RadiusMode mode) {
    BenchSummary s;
    s.trials = trials.size();
    s.seed = config.seed;
    s.radius = radius;
    s.radius_mode = mode;
    s.threads = config.threads;
    s.variants = config.variants;
    for (const TrialRecord& t : trials)
        if (t.exact == 0.0) ++s.excluded;
    for (const Variant v : config.variants) {
        std::vector<double> errors, fills, cells;
        for (const TrialRecord& t : trials) {
            const auto& r = t.get(v);
            if (!r) continue;
            fills.push_back(r->fill_seconds);
            cells.push_back(static_cast<double>(r->cells));
            if (t.exact != 0.0 && std::isfinite(r->error_pct)) errors.push_back(r->error_pct);
        }
        VariantSummary vs;
        vs.error_count = errors.size();
        vs.median_error_pct = median(errors);
        vs.median_fill_seconds = median(fills);
        vs.median_cells = median(cells);
        s.per_variant[static_cast<std::size_t>(v)] = vs;
    }
    const bool has_ml = std::find(config.variants.begin(), config.variants.end(), Variant::ml) != config.variants.end();
    if (has_ml) {
        std::vector<double> inf;
        for (const TrialRecord& t : trials) inf.push_back(t.ml_inference_seconds);
        s.median_ml_inference_seconds = median(inf);
    }
    return s;
}

BenchReport run_bench(std::span<const TimeSeries> corpus, const BenchConfig& config) {
    if (config.trials == 0) throw InvalidArgument("--trials must be positive");
    if (config.variants.empty()) throw InvalidArgument("no variants requested");
    if (corpus.size() < 2) throw InvalidArgument("benchmark corpus needs at least 2 series");
    for (const TimeSeries& s : corpus)
        if (s.dim() != corpus.front().dim()) throw DimensionMismatch("corpus mixes point dimensions");
    const std::uint64_t total = static_cast<std::uint64_t>(corpus.size()) * (corpus.size() - 1);
    if (config.trials > total)
        throw InvalidArgument("requested " + std::to_string(config.trials) + " trials but the corpus has only " +
                              std::to_string(total) + " ordered pairs");
    auto wants = [&](Variant v) {
        return std::find(config.variants.begin(), config.variants.end(), v) != config.variants.end();
    };
    if (wants(Variant::ml) && !config.models) throw InvalidArgument("the ml variant needs a model set");
    if (config.radius && *config.radius == 0) throw InvalidArgument("--radius must be positive");

    const auto pairs = sample_ordered_pairs(corpus.size(), config.trials, config.seed);
    const std::size_t threads = std::max<std::size_t>(1, config.threads);

    BenchReport report;
    report.trials.resize(pairs.size());
    // Pass 1: exact reference, full and ml variants.
    parallel_for(pairs.size(), threads, [&](std::size_t idx) {
        const auto [i, j] = pairs[idx];
        const TimeSeries& a = corpus[i];
        const TimeSeries& b = corpus[j];
        TrialRecord& t = report.trials[idx];
        t.index = idx;
        t.a = i;
        t.b = j;
        t.a_id = a.id();
        t.b_id = b.id();
        const Alignment exact = full_dtw(a, b);
        t.exact = exact.distance;
        if (wants(Variant::full)) t.variants[0] = make_result(exact, exact.distance);
        if (wants(Variant::ml)) {
            const MlAlignment ml = ml_dtw(a, b, *config.models);
            t.variants[2] = make_result(ml.alignment, exact.distance);
            t.ml_inference_seconds = seconds(ml.stats.inference_time);
        }
    });

    std::size_t radius = 0;
    RadiusMode mode = RadiusMode::fixed;
    if (config.radius) {
        radius = *config.radius;
    } else if (wants(Variant::ml)) {
        double area = 0.0;
        for (const TrialRecord& t : report.trials) area += static_cast<double>(t.variants[2]->cells);
        radius = budget_fair_radius(corpus, pairs, area / static_cast<double>(pairs.size()));
        mode = RadiusMode::budget_fair;
    } else {
        std::size_t longest = 0;
        for (const auto& [i, j] : pairs) longest = std::max({longest, corpus[i].size(), corpus[j].size()});
        radius = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(0.1 * static_cast<double>(longest))));
        mode = RadiusMode::default_fraction;
    }

    if (wants(Variant::band)) {
        parallel_for(pairs.size(), threads, [&](std::size_t idx) {
            const auto [i, j] = pairs[idx];
            TrialRecord& t = report.trials[idx];
            t.variants[1] = make_result(banded_dtw(corpus[i], corpus[j], radius), t.exact);
        });
    }

    report.summary = summarize(report.trials, config, radius, mode);
    return report;
}

void write_trials_csv(const std::filesystem::path& path, const BenchReport& report) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    const auto& variants = report.summary.variants;
    const bool has_ml = std::find(variants.begin(), variants.end(), Variant::ml) != variants.end();
    out << "trial,a,b,a_id,b_id,exact_distance";
    for (const Variant v : variants) {
        const std::string n = variant_name(v);
        out << ',' << n << "_distance," << n << "_error_pct," << n << "_fill_s," << n << "_cells";
    }
    if (has_ml) out << ",ml_inference_s";
    out << '\n';
    for (const TrialRecord& t : report.trials) {
        out << t.index << ',' << t.a << ',' << t.b << ',' << t.a_id << ',' << t.b_id << ',' << fmt_g(t.exact);
        for (const Variant v : variants) {
            const VariantResult& r = *t.get(v);
            out << ',' << fmt_g(r.distance) << ',' << fmt_g(r.error_pct) << ',' << fmt_g(r.fill_seconds) << ','
                << r.cells;
        }
        if (has_ml) out << ',' << fmt_g(t.ml_inference_seconds);
        out << '\n';
    }
    if (!out) throw IoError("failed writing " + path.string());
}

void write_summary_json(const std::filesystem::path& path, const BenchReport& report) {
    const BenchSummary& s = report.summary;
    using nlohmann::json;
    auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    json j;
    j["trials"] = s.trials;
    j["excluded"] = s.excluded;
    j["config"] = {{"seed", s.seed},
                   {"radius", s.radius},
                   {"radius_mode", mode_name(s.radius_mode)},
                   {"threads", s.threads}};
    json variants = json::object();
    for (const Variant v : s.variants) {
        const VariantSummary& vs = *s.per_variant[static_cast<std::size_t>(v)];
        variants[variant_name(v)] = {{"median_error_pct", num(vs.median_error_pct)},
                                     {"median_fill_s", num(vs.median_fill_seconds)},
                                     {"median_cells", num(vs.median_cells)},
                                     {"error_trials", vs.error_count}};
    }
    j["config"]["variants"] = json::array();
    for (const Variant v : s.variants) j["config"]["variants"].push_back(variant_name(v));
    j["variants"] = variants;
    if (s.per_variant[2]) j["ml_median_inference_s"] = num(s.median_ml_inference_seconds);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
    if (!out) throw IoError("failed writing " + path.string());
}

void print_table(std::ostream& out, const BenchReport& report) {
    const BenchSummary& s = report.summary;
    char line[160];
    std::snprintf(line, sizeof line, "trials: %zu (excluded from error: %zu)  seed: %llu  radius: %zu (%s)\n",
                  s.trials, s.excluded, static_cast<unsigned long long>(s.seed), s.radius, mode_name(s.radius_mode));
    out << line;
    std::snprintf(line, sizeof line, "%-8s %16s %18s %14s\n", "variant", "median fill (s)", "median error (%)",
                  "median cells");
    out << line;
    for (const Variant v : s.variants) {
        const VariantSummary& vs = *s.per_variant[static_cast<std::size_t>(v)];
        std::snprintf(line, sizeof line, "%-8s %16.6g %18.4f %14.0f\n", variant_name(v), vs.median_fill_seconds,
                      vs.median_error_pct, vs.median_cells);
        out << line;
    }
    if (s.per_variant[2]) {
        std::snprintf(line, sizeof line, "ml inference overhead (median): %.6g s\n", s.median_ml_inference_seconds);
        out << line;
    }
}

}  // namespace mldtw::bench
