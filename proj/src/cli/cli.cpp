#include "mldtw/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mldtw/banded.hpp"
#include "mldtw/bench.hpp"
#include "mldtw/datasets.hpp"
#include "mldtw/dtw.hpp"
#include "mldtw/error.hpp"
#include "mldtw/heatmap.hpp"
#include "mldtw/parallel.hpp"
#include "mldtw/pipeline.hpp"
#include "mldtw/simd/kernels.hpp"

namespace mldtw {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

const std::map<std::string, data::CsvSchema> kSchemas{
    {"univariate", data::CsvSchema::univariate},
    {"xy", data::CsvSchema::xy},
    {"xyz", data::CsvSchema::xyz_magnitude},
};

const std::map<std::string, FeatureMode> kFeatureModes{
    {"raw", FeatureMode::raw_prefix},
    {"block", FeatureMode::matrix_block},
};

struct CorpusArgs {
    std::string path;
    data::CsvSchema schema = data::CsvSchema::univariate;
    std::size_t window = 0;
    std::size_t stride = 0;
};

void add_corpus_options(CLI::App* cmd, CorpusArgs& args, const std::string& flag) {
    cmd->add_option(flag, args.path, "series CSV (blank-line separated blocks)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--schema", args.schema, "row layout: univariate, xy or xyz")
        ->transform(CLI::CheckedTransformer(kSchemas, CLI::ignore_case));
    cmd->add_option("--window", args.window, "cut each series into windows of this many points")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--stride", args.stride, "window stride (default: the window length)")
        ->check(CLI::NonNegativeNumber);
}

data::Corpus load_corpus(const CorpusArgs& args) {
    data::Corpus corpus = data::load_series_csv(args.path, args.schema);
    if (args.window > 0) corpus = data::window_corpus(corpus, args.window, args.stride ? args.stride : args.window);
    return corpus;
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

struct GenSynthArgs {
    data::SynthConfig config;
    std::string out;
};

int run_gen_synth(const GenSynthArgs& a, std::ostream& out) {
    const data::Corpus corpus = data::gen_synth(a.config);
    data::write_series_csv(a.out, corpus);
    out << "wrote " << corpus.size() << " series of length " << a.config.length << " to " << a.out << '\n';
    return kExitOk;
}

struct LabelArgs {
    CorpusArgs corpus;
    std::string out;
    std::size_t prefix = 30;
    int quantum = kDefaultQuantum;
    std::size_t max_pairs = 0;
    std::uint64_t seed = 0;
    FeatureMode features = FeatureMode::raw_prefix;
    std::size_t threads = 0;
};

int run_label(const LabelArgs& a, std::ostream& out) {
    const data::Corpus corpus = load_corpus(a.corpus);
    LabelConfig cfg;
    cfg.features = {a.prefix, a.prefix, a.features};
    cfg.quantum = a.quantum;
    cfg.max_pairs = a.max_pairs;
    cfg.seed = a.seed;
    cfg.threads = resolve_threads(a.threads);
    const LabelResult labeled = build_training_set(corpus.series, cfg);
    write_training_csv(a.out, labeled.rows);
    out << "wrote " << labeled.rows.size() << " labeled pairs to " << a.out;
    if (labeled.skipped) out << " (" << labeled.skipped << " pairs shorter than the prefix skipped)";
    out << '\n';
    return kExitOk;
}

struct TrainArgs {
    std::string in;
    std::string out_model;
    std::string history;
    std::size_t hidden = 300;
    std::size_t epochs = 200;
    std::size_t patience = 10;
    std::size_t batch = 32;
    double learning_rate = 1e-3;
    std::uint64_t seed = 0;
    std::size_t prefix = 30;
    FeatureMode features = FeatureMode::raw_prefix;
    std::size_t dim = 0;
    int quantum = kDefaultQuantum;
    std::string dataset_id;
    std::size_t threads = 0;
};

int run_train(const TrainArgs& a, std::ostream& out, std::ostream& err) {
    const std::vector<LabeledRow> rows = read_training_csv(a.in);
    if (rows.empty()) throw InvalidArgument("training CSV " + a.in + " has no rows");
    const FeatureConfig features{a.prefix, a.prefix, a.features};
    std::size_t dim = a.dim;
    const std::size_t width = rows.front().features.size();
    if (dim == 0) {
        if (a.features == FeatureMode::matrix_block) {
            dim = 1;
        } else {
            if (width % (2 * a.prefix) != 0)
                throw InvalidArgument("--prefix " + std::to_string(a.prefix) + " does not divide the " +
                                      std::to_string(width) + " feature columns");
            dim = width / (2 * a.prefix);
        }
    }
    nn::TrainConfig cfg;
    cfg.hidden = {a.hidden};
    cfg.max_epochs = a.epochs;
    cfg.patience = a.patience;
    cfg.batch_size = a.batch;
    cfg.learning_rate = a.learning_rate;
    cfg.seed = a.seed;
    const ModelSetTraining trained =
        train_waypoint_models(rows, cfg, features, dim, a.quantum, a.dataset_id, resolve_threads(a.threads));
    save_model_set(a.out_model, trained.models);

    out << "model  labels  best_epoch  epochs  val_loss  val_acc  majority\n";
    for (std::size_t k = 0; k < kWaypointCount; ++k) {
        const nn::TrainHistory& h = trained.histories[k];
        char line[128];
        std::snprintf(line, sizeof line, "%5zu  %6zu  %10zu  %6zu  %8.4f  %7.4f  %8.4f\n", k,
                      trained.models.models[k].net.output_dim(), h.best_epoch, h.epochs.size(), h.best().val_loss,
                      h.best().val_accuracy, trained.majority_baseline[k]);
        out << line;
    }
    out << "wrote model set to " << a.out_model << '\n';

    if (!a.history.empty()) {
        std::ofstream hist(a.history, std::ios::trunc);
        if (!hist) throw IoError("cannot open " + a.history + " for writing");
        hist << "model,epoch,train_loss,train_accuracy,val_loss,val_accuracy\n";
        for (std::size_t k = 0; k < kWaypointCount; ++k)
            for (const nn::EpochStats& e : trained.histories[k].epochs)
                hist << k << ',' << e.epoch << ',' << fmt("%.17g", e.train_loss) << ','
                     << fmt("%.17g", e.train_accuracy) << ',' << fmt("%.17g", e.val_loss) << ','
                     << fmt("%.17g", e.val_accuracy) << '\n';
        if (!hist) throw IoError("failed writing " + a.history);
    }
    (void)err;
    return kExitOk;
}

struct CompareArgs {
    CorpusArgs a;
    CorpusArgs b;
    std::size_t a_index = 0;
    std::size_t b_index = 0;
    bench::Variant variant = bench::Variant::full;
    std::size_t radius = 0;
    std::string model;
    std::string heatmap;
};

const TimeSeries& pick(const data::Corpus& c, std::size_t index, const char* flag) {
    if (index >= c.size())
        throw InvalidArgument(std::string(flag) + " " + std::to_string(index) + " is out of range (" +
                              std::to_string(c.size()) + " series)");
    return c.series[index];
}

int run_compare(const CompareArgs& args, std::ostream& out) {
    const data::Corpus ca = load_corpus(args.a);
    const data::Corpus cb = load_corpus(args.b);
    const TimeSeries& a = pick(ca, args.a_index, "--a-index");
    const TimeSeries& b = pick(cb, args.b_index, "--b-index");
    const Alignment exact = full_dtw(a, b);

    Alignment result;
    std::optional<SearchRegion> region;
    std::optional<RegionStats> stats;
    switch (args.variant) {
        case bench::Variant::full:
            result = exact;
            break;
        case bench::Variant::band: {
            const std::size_t r = args.radius
                                      ? args.radius
                                      : std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(
                                                                     0.1 * static_cast<double>(std::max(a.size(), b.size())))));
            region = sakoe_chiba_region(a.size(), b.size(), r);
            result = constrained_dtw(a, b, *region);
            break;
        }
        case bench::Variant::ml: {
            const WaypointModelSet models = load_model_set(args.model);
            MlAlignment ml = ml_dtw(a, b, models);
            region = ml_region(ml.stats.waypoints, ml.stats.confidences, a.size(), b.size());
            result = std::move(ml.alignment);
            stats = ml.stats;
            break;
        }
    }

    out << "variant: " << bench::variant_name(args.variant) << '\n';
    out << "distance: " << fmt("%.6g", result.distance) << '\n';
    out << "exact distance: " << fmt("%.6g", exact.distance) << '\n';
    out << "error: " << fmt("%.4f", percent_error(result.distance, exact.distance)) << "%\n";
    out << "fill time: " << fmt("%.6g", static_cast<double>(result.fill_time.count()) * 1e-9) << " s\n";
    out << "cells computed: " << result.cells_computed << " of " << a.size() * b.size() << '\n';
    if (stats) {
        out << "ml inference time: " << fmt("%.6g", static_cast<double>(stats->inference_time.count()) * 1e-9)
            << " s\n";
        out << "waypoints:";
        for (std::size_t k = 0; k < kWaypointCount; ++k)
            out << " (" << stats->waypoints[k].row << ',' << stats->waypoints[k].col << ")@"
                << fmt("%.3f", stats->confidences[k]);
        out << '\n';
    }
    if (!args.heatmap.empty()) {
        const CostMatrix matrix =
            region ? constrained_cost_matrix(a, b, *region) : full_cost_matrix(a, b);
        heatmap_export(matrix, args.heatmap, &result.path);
        out << "heatmap: " << args.heatmap << '\n';
    }
    return kExitOk;
}

struct BenchArgs {
    CorpusArgs corpus;
    std::size_t trials = 100;
    std::vector<std::string> variants{"full", "band", "ml"};
    std::uint64_t seed = 0;
    std::string json = "bench_summary.json";
    std::string csv = "bench_trials.csv";
    std::size_t radius = 0;
    std::string model;
    std::size_t threads = 0;
};

int run_bench_cmd(const BenchArgs& args, std::ostream& out) {
    bench::BenchConfig cfg;
    cfg.trials = args.trials;
    cfg.seed = args.seed;
    cfg.variants.clear();
    for (const std::string& v : args.variants) {
        const bench::Variant parsed = bench::parse_variant(v);
        if (std::find(cfg.variants.begin(), cfg.variants.end(), parsed) == cfg.variants.end())
            cfg.variants.push_back(parsed);
    }
    if (args.radius) cfg.radius = args.radius;
    cfg.threads = resolve_threads(args.threads);
    const bool wants_ml = std::find(cfg.variants.begin(), cfg.variants.end(), bench::Variant::ml) != cfg.variants.end();
    std::optional<WaypointModelSet> models;
    if (wants_ml) {
        if (args.model.empty()) throw InvalidArgument("--variants ml needs --model");
        models = load_model_set(args.model);
        cfg.models = &*models;
    }
    const data::Corpus corpus = load_corpus(args.corpus);
    const bench::BenchReport report = bench::run_bench(corpus.series, cfg);
    bench::write_trials_csv(args.csv, report);
    bench::write_summary_json(args.json, report);
    bench::print_table(out, report);
    out << "trials: " << args.csv << "\nsummary: " << args.json << '\n';
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Time-series alignment with learned search regions"};
    app.name("mldtw");
    app.require_subcommand(1);
    app.set_version_flag("--version", "mldtw 1.0");
    std::string simd = "auto";
    app.add_option("--simd", simd, "kernel set: auto, scalar or avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

    GenSynthArgs gen;
    auto* gen_cmd = app.add_subcommand("gen-synth", "generate the noisy sine corpus");
    gen_cmd->add_option("--count", gen.config.count, "number of series")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--length", gen.config.length, "points per series")->check(CLI::Range(2, 1 << 30));
    gen_cmd->add_option("--noise", gen.config.noise_frac, "uniform noise bound as a fraction of the amplitude")
        ->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("--seed", gen.config.seed, "generator seed");
    gen_cmd->add_option("--out", gen.out, "output CSV")->required();

    LabelArgs label;
    auto* label_cmd = app.add_subcommand("label", "align every ordered pair and write training rows");
    add_corpus_options(label_cmd, label.corpus, "--in");
    label_cmd->add_option("--out", label.out, "training CSV")->required();
    label_cmd->add_option("--prefix", label.prefix, "points of each series used as features")
        ->check(CLI::PositiveNumber);
    label_cmd->add_option("--quant", label.quantum, "waypoint quantum")->check(CLI::PositiveNumber);
    label_cmd->add_option("--max-pairs", label.max_pairs, "sample at most this many pairs (0: all)")
        ->check(CLI::NonNegativeNumber);
    label_cmd->add_option("--seed", label.seed, "pair sampling seed");
    label_cmd->add_option("--features", label.features, "feature layout: raw or block")
        ->transform(CLI::CheckedTransformer(kFeatureModes, CLI::ignore_case));
    label_cmd->add_option("--threads", label.threads, "worker threads (0: logical cores)")
        ->check(CLI::NonNegativeNumber);

    TrainArgs train;
    auto* train_cmd = app.add_subcommand("train", "train the five waypoint classifiers");
    train_cmd->add_option("--in", train.in, "training CSV")->required()->check(CLI::ExistingFile);
    train_cmd->add_option("--out-model", train.out_model, "model set file")->required();
    train_cmd->add_option("--history", train.history, "per-epoch loss and accuracy CSV");
    train_cmd->add_option("--hidden", train.hidden, "hidden layer width")->check(CLI::PositiveNumber);
    train_cmd->add_option("--epochs", train.epochs, "maximum epochs")->check(CLI::PositiveNumber);
    train_cmd->add_option("--patience", train.patience, "early stopping patience")->check(CLI::PositiveNumber);
    train_cmd->add_option("--batch", train.batch, "mini-batch size")->check(CLI::PositiveNumber);
    train_cmd->add_option("--lr", train.learning_rate, "Adam learning rate")->check(CLI::PositiveNumber);
    train_cmd->add_option("--seed", train.seed, "initialization and split seed");
    train_cmd->add_option("--prefix", train.prefix, "prefix length used when labeling")
        ->check(CLI::PositiveNumber);
    train_cmd->add_option("--features", train.features, "feature layout used when labeling: raw or block")
        ->transform(CLI::CheckedTransformer(kFeatureModes, CLI::ignore_case));
    train_cmd->add_option("--dim", train.dim, "point dimension (0: infer)")->check(CLI::NonNegativeNumber);
    train_cmd->add_option("--quant", train.quantum, "waypoint quantum used when labeling")
        ->check(CLI::PositiveNumber);
    train_cmd->add_option("--dataset-id", train.dataset_id, "identifier stored in the model file");
    train_cmd->add_option("--threads", train.threads, "worker threads (0: logical cores)")
        ->check(CLI::NonNegativeNumber);

    CompareArgs cmp;
    auto* cmp_cmd = app.add_subcommand("compare", "align one pair and report distance, error and cost");
    add_corpus_options(cmp_cmd, cmp.a, "--a");
    cmp_cmd->add_option("--b", cmp.b.path, "second series CSV")->required()->check(CLI::ExistingFile);
    cmp_cmd->add_option("--a-index", cmp.a_index, "series index within --a")->check(CLI::NonNegativeNumber);
    cmp_cmd->add_option("--b-index", cmp.b_index, "series index within --b")->check(CLI::NonNegativeNumber);
    cmp_cmd->add_option("--variant", cmp.variant, "full, band or ml")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, bench::Variant>{
                {"full", bench::Variant::full}, {"band", bench::Variant::band}, {"ml", bench::Variant::ml}},
            CLI::ignore_case));
    cmp_cmd->add_option("--radius", cmp.radius, "band radius (default: 10% of the longer series)")
        ->check(CLI::PositiveNumber);
    auto* model_opt = cmp_cmd->add_option("--model", cmp.model, "model set file")->check(CLI::ExistingFile);
    cmp_cmd->add_option("--heatmap", cmp.heatmap, "write the cost matrix as a PGM image");

    BenchArgs bn;
    auto* bench_cmd = app.add_subcommand("bench", "benchmark variants over sampled pairs");
    add_corpus_options(bench_cmd, bn.corpus, "--corpus");
    bench_cmd->add_option("--trials", bn.trials, "number of sampled ordered pairs")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--variants", bn.variants, "comma-separated subset of full,band,ml")
        ->delimiter(',')
        ->check(CLI::IsMember({"full", "band", "ml"}));
    bench_cmd->add_option("--seed", bn.seed, "pair sampling seed");
    bench_cmd->add_option("--json", bn.json, "summary JSON");
    bench_cmd->add_option("--csv", bn.csv, "per-trial CSV");
    bench_cmd->add_option("--radius", bn.radius, "band radius (default: budget-fair against ml)")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--model", bn.model, "model set file")->check(CLI::ExistingFile);
    bench_cmd->add_option("--threads", bn.threads, "worker threads (0: logical cores)")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
        cmp.b.schema = cmp.a.schema;
        cmp.b.window = cmp.a.window;
        cmp.b.stride = cmp.a.stride;
        if (*cmp_cmd && cmp.variant == bench::Variant::ml && model_opt->count() == 0)
            throw CLI::RequiredError("--model (required by --variant ml)");
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (simd == "scalar") simd::force_isa(simd::Isa::scalar);
        else if (simd == "avx2" && !simd::force_isa(simd::Isa::avx2)) throw Error("this CPU lacks AVX2");
        if (*gen_cmd) return run_gen_synth(gen, out);
        if (*label_cmd) return run_label(label, out);
        if (*train_cmd) return run_train(train, out, err);
        if (*cmp_cmd) return run_compare(cmp, out);
        if (*bench_cmd) return run_bench_cmd(bn, out);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}

int run_cli(int argc, const char* const* argv) { return run_cli(argc, argv, std::cout, std::cerr); }

}  // namespace mldtw
