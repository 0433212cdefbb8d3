#include "mldtw/nn/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <tuple>

#include "mldtw/error.hpp"
#include "mldtw/simd/kernels.hpp"

namespace mldtw::nn {

namespace {

constexpr double kProbFloor = 1e-300;

void check_labels(const Matrix& x, std::span<const int> y, std::size_t label_count) {
    if (x.rows != y.size())
        throw InvalidArgument("feature rows (" + std::to_string(x.rows) + ") and labels (" +
                              std::to_string(y.size()) + ") differ");
    for (int label : y)
        if (label < 0 || static_cast<std::size_t>(label) >= label_count)
            throw InvalidArgument("label " + std::to_string(label) + " outside [0, " + std::to_string(label_count) +
                                  ")");
}

// Activations of every layer for one batch; acts[0] is the input.
struct Pass {
    std::vector<Matrix> acts;
};

void forward_pass(const DenseNet& net, const Matrix& x, Pass& pass) {
    const simd::Kernels& k = simd::active();
    const auto& layers = net.layers();
    pass.acts.resize(layers.size() + 1);
    pass.acts[0] = x;
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const DenseLayer& layer = layers[l];
        const Matrix& in = pass.acts[l];
        Matrix& out = pass.acts[l + 1];
        if (out.rows != in.rows || out.cols != layer.outputs) out = Matrix(in.rows, layer.outputs);
        for (std::size_t r = 0; r < in.rows; ++r)
            std::copy(layer.biases.begin(), layer.biases.end(), out.row(r).begin());
        k.gemm_nn(in.rows, layer.outputs, layer.inputs, in.data.data(), in.cols, layer.weights.data(),
                  layer.outputs, out.data.data(), out.cols, true);
        if (layer.activation == Activation::relu)
            k.relu(out.data.data(), out.data.size());
        else
            for (std::size_t r = 0; r < out.rows; ++r) softmax_inplace(out.row(r));
    }
}

// Returns summed (not averaged) loss and the number of correct argmax hits.
std::pair<double, std::size_t> score(const Matrix& probs, std::span<const int> y) {
    double loss = 0.0;
    std::size_t hits = 0;
    for (std::size_t r = 0; r < probs.rows; ++r) {
        const auto row = probs.row(r);
        loss -= std::log(std::max(row[static_cast<std::size_t>(y[r])], kProbFloor));
        const auto best = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
        if (best == static_cast<std::size_t>(y[r])) ++hits;
    }
    return {loss, hits};
}

// Backpropagates mean cross-entropy through a completed forward pass.
void backward_pass(const DenseNet& net, const Pass& pass, std::span<const int> y, Gradients& grads) {
    const simd::Kernels& k = simd::active();
    const auto& layers = net.layers();
    const std::size_t batch = pass.acts[0].rows;
    grads.weights.resize(layers.size());
    grads.biases.resize(layers.size());

    Matrix delta = pass.acts.back();
    const double inv = 1.0 / static_cast<double>(batch);
    for (std::size_t r = 0; r < batch; ++r) delta(r, static_cast<std::size_t>(y[r])) -= 1.0;
    for (double& d : delta.data) d *= inv;

    Matrix transposed;
    for (std::size_t l = layers.size(); l-- > 0;) {
        const DenseLayer& layer = layers[l];
        const Matrix& in = pass.acts[l];
        auto& gw = grads.weights[l];
        auto& gb = grads.biases[l];
        gw.resize(layer.inputs * layer.outputs);
        gb.assign(layer.outputs, 0.0);
        k.gemm_tn(layer.inputs, layer.outputs, batch, in.data.data(), in.cols, delta.data.data(), delta.cols,
                  gw.data(), layer.outputs, false);
        for (std::size_t r = 0; r < batch; ++r)
            for (std::size_t c = 0; c < layer.outputs; ++c) gb[c] += delta(r, c);
        if (l == 0) break;

        transposed = Matrix(layer.outputs, layer.inputs);
        for (std::size_t i = 0; i < layer.inputs; ++i)
            for (std::size_t o = 0; o < layer.outputs; ++o)
                transposed(o, i) = layer.weights[i * layer.outputs + o];
        Matrix prev(batch, layer.inputs);
        k.gemm_nn(batch, layer.inputs, layer.outputs, delta.data.data(), delta.cols, transposed.data.data(),
                  transposed.cols, prev.data.data(), prev.cols, false);
        for (std::size_t idx = 0; idx < prev.data.size(); ++idx)
            if (!(in.data[idx] > 0.0)) prev.data[idx] = 0.0;
        delta = std::move(prev);
    }
}

struct AdamState {
    std::vector<std::vector<double>> mw, vw, mb, vb;
    std::size_t step = 0;

    explicit AdamState(const DenseNet& net) {
        for (const DenseLayer& layer : net.layers()) {
            mw.emplace_back(layer.weights.size(), 0.0);
            vw.emplace_back(layer.weights.size(), 0.0);
            mb.emplace_back(layer.biases.size(), 0.0);
            vb.emplace_back(layer.biases.size(), 0.0);
        }
    }

    void apply(DenseNet& net, const Gradients& g, const TrainConfig& cfg) {
        ++step;
        const double corr1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
        const double corr2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
        const simd::Kernels& k = simd::active();
        auto& layers = net.mutable_layers();
        for (std::size_t l = 0; l < layers.size(); ++l) {
            k.adam(layers[l].weights.data(), g.weights[l].data(), mw[l].data(), vw[l].data(),
                   layers[l].weights.size(), cfg.learning_rate, cfg.beta1, cfg.beta2, cfg.epsilon, corr1, corr2);
            k.adam(layers[l].biases.data(), g.biases[l].data(), mb[l].data(), vb[l].data(), layers[l].biases.size(),
                   cfg.learning_rate, cfg.beta1, cfg.beta2, cfg.epsilon, corr1, corr2);
        }
    }
};

std::pair<double, double> evaluate(const DenseNet& net, const Matrix& x, std::span<const int> y) {
    constexpr std::size_t chunk = 512;
    double loss = 0.0;
    std::size_t hits = 0;
    Pass pass;
    std::vector<std::size_t> idx;
    for (std::size_t start = 0; start < x.rows; start += chunk) {
        const std::size_t count = std::min(chunk, x.rows - start);
        idx.resize(count);
        std::iota(idx.begin(), idx.end(), start);
        forward_pass(net, x.select_rows(idx), pass);
        const auto [l, h] = score(pass.acts.back(), y.subspan(start, count));
        loss += l;
        hits += h;
    }
    const auto n = static_cast<double>(x.rows);
    return {loss / n, static_cast<double>(hits) / n};
}

}  // namespace

void TrainConfig::validate() const {
    if (max_epochs == 0) throw InvalidArgument("max_epochs must be positive");
    if (patience == 0) throw InvalidArgument("patience must be positive");
    if (batch_size == 0) throw InvalidArgument("batch_size must be positive");
    if (!(learning_rate > 0.0)) throw InvalidArgument("learning_rate must be positive");
    if (!(validation_fraction > 0.0 && validation_fraction <= 0.5))
        throw InvalidArgument("validation_fraction must lie in (0, 0.5]");
    if (hidden.empty()) throw InvalidArgument("at least one hidden layer is required");
    for (std::size_t h : hidden)
        if (h == 0) throw InvalidArgument("hidden layer width must be positive");
}

double cross_entropy(const DenseNet& net, const Matrix& x, std::span<const int> y, Gradients* grads) {
    check_labels(x, y, net.output_dim());
    if (x.rows == 0) throw InvalidArgument("empty batch");
    Pass pass;
    forward_pass(net, x, pass);
    const double loss = score(pass.acts.back(), y).first / static_cast<double>(x.rows);
    if (grads) backward_pass(net, pass, y, *grads);
    return loss;
}

double accuracy(const DenseNet& net, const Matrix& x, std::span<const int> y) {
    check_labels(x, y, net.output_dim());
    if (x.rows == 0) throw InvalidArgument("empty batch");
    return evaluate(net, x, y).second;
}

TrainResult train_classifier(const Matrix& x, std::span<const int> y, std::size_t label_count,
                             const TrainConfig& config) {
    config.validate();
    check_labels(x, y, label_count);
    if (x.rows < 2) throw InvalidArgument("training needs at least 2 rows");
    if (std::set<int>(y.begin(), y.end()).size() < 2)
        throw InvalidArgument("training needs at least 2 distinct labels");
    for (double v : x.data)
        if (!std::isfinite(v)) throw InvalidArgument("training features contain a non-finite value");

    std::mt19937_64 rng(config.seed);
    std::vector<std::size_t> order(x.rows);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t val_count = static_cast<std::size_t>(std::llround(config.validation_fraction * x.rows));
    val_count = std::clamp<std::size_t>(val_count, 1, x.rows - 1);
    std::vector<std::size_t> val_idx(order.begin(), order.begin() + val_count);
    std::vector<std::size_t> train_idx(order.begin() + val_count, order.end());

    const Matrix x_val = x.select_rows(val_idx);
    std::vector<int> y_val(val_count);
    for (std::size_t r = 0; r < val_count; ++r) y_val[r] = y[val_idx[r]];

    DenseNet net = DenseNet::initialized(x.cols, config.hidden, label_count, rng());
    AdamState adam(net);
    TrainResult result{net, {}};
    double best_loss = std::numeric_limits<double>::infinity();
    std::size_t since_best = 0;

    Pass pass;
    Gradients grads;
    Matrix batch_x;
    std::vector<int> batch_y;
    for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
        std::shuffle(train_idx.begin(), train_idx.end(), rng);
        double loss_sum = 0.0;
        std::size_t hits = 0;
        for (std::size_t start = 0; start < train_idx.size(); start += config.batch_size) {
            const std::size_t count = std::min(config.batch_size, train_idx.size() - start);
            const std::span<const std::size_t> rows(train_idx.data() + start, count);
            batch_x = x.select_rows(rows);
            batch_y.resize(count);
            for (std::size_t r = 0; r < count; ++r) batch_y[r] = y[rows[r]];

            forward_pass(net, batch_x, pass);
            const auto [l, h] = score(pass.acts.back(), batch_y);
            loss_sum += l;
            hits += h;
            backward_pass(net, pass, batch_y, grads);
            adam.apply(net, grads, config);
        }

        EpochStats stats;
        stats.epoch = epoch;
        stats.train_loss = loss_sum / static_cast<double>(train_idx.size());
        stats.train_accuracy = static_cast<double>(hits) / static_cast<double>(train_idx.size());
        std::tie(stats.val_loss, stats.val_accuracy) = evaluate(net, x_val, y_val);
        result.history.epochs.push_back(stats);

        if (stats.val_loss < best_loss) {
            best_loss = stats.val_loss;
            result.net = net;
            result.history.best_epoch = epoch;
            since_best = 0;
        } else if (++since_best >= config.patience) {
            result.history.stopped_early = true;
            break;
        }
    }
    if (result.history.best_epoch == 0) result.history.best_epoch = 1;  // every epoch produced NaN loss
    return result;
}

}  // namespace mldtw::nn
