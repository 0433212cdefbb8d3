#include "mldtw/nn/dense_net.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "mldtw/error.hpp"
#include "mldtw/simd/kernels.hpp"

namespace mldtw::nn {

std::vector<double> relu(std::span<const double> v) {
    std::vector<double> out(v.begin(), v.end());
    simd::active().relu(out.data(), out.size());
    return out;
}

void softmax_inplace(std::span<double> z) noexcept {
    if (z.empty()) return;
    const double top = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double& v : z) {
        v = std::exp(v - top);
        sum += v;
    }
    for (double& v : z) v /= sum;
}

std::vector<double> softmax(std::span<const double> z) {
    std::vector<double> out(z.begin(), z.end());
    softmax_inplace(out);
    return out;
}

DenseNet::DenseNet(std::vector<DenseLayer> layers, std::vector<Waypoint> label_map) : layers_(std::move(layers)) {
    if (layers_.empty()) throw InvalidArgument("network needs at least one layer");
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const DenseLayer& layer = layers_[l];
        if (layer.inputs == 0 || layer.outputs == 0) throw InvalidArgument("layer with zero width");
        if (layer.weights.size() != layer.inputs * layer.outputs || layer.biases.size() != layer.outputs)
            throw InvalidArgument("layer " + std::to_string(l) + " parameter count does not match its shape");
        if (l > 0 && layers_[l - 1].outputs != layer.inputs)
            throw InvalidArgument("layer " + std::to_string(l) + " does not chain with its predecessor");
        const bool last = l + 1 == layers_.size();
        if (last != (layer.activation == Activation::softmax))
            throw InvalidArgument("only the output layer may (and must) use softmax");
    }
    set_label_map(std::move(label_map));
}

DenseNet DenseNet::initialized(std::size_t inputs, std::span<const std::size_t> hidden, std::size_t outputs,
                               std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<DenseLayer> layers;
    std::size_t fan_in = inputs;
    auto make = [&](std::size_t out, Activation act) {
        DenseLayer layer{fan_in, out, std::vector<double>(fan_in * out), std::vector<double>(out, 0.0), act};
        const double limit = std::sqrt(6.0 / static_cast<double>(fan_in));
        std::uniform_real_distribution<double> dist(-limit, limit);
        for (double& w : layer.weights) w = dist(rng);
        layers.push_back(std::move(layer));
        fan_in = out;
    };
    for (std::size_t h : hidden) make(h, Activation::relu);
    make(outputs, Activation::softmax);
    return DenseNet(std::move(layers));
}

void DenseNet::set_label_map(std::vector<Waypoint> labels) {
    if (!labels.empty() && labels.size() != output_dim())
        throw InvalidArgument("label map has " + std::to_string(labels.size()) + " entries for " +
                              std::to_string(output_dim()) + " outputs");
    labels_ = std::move(labels);
}

std::vector<double> DenseNet::forward(std::span<const double> x) const {
    Matrix in(1, x.size());
    std::copy(x.begin(), x.end(), in.data.begin());
    return forward(in).data;
}

Matrix DenseNet::forward(const Matrix& x) const {
    if (x.cols != input_dim())
        throw DimensionMismatch("network expects " + std::to_string(input_dim()) + " inputs, got " +
                                std::to_string(x.cols));
    const simd::Kernels& k = simd::active();
    Matrix cur = x;
    for (const DenseLayer& layer : layers_) {
        Matrix next(cur.rows, layer.outputs);
        for (std::size_t r = 0; r < cur.rows; ++r) std::copy(layer.biases.begin(), layer.biases.end(), next.row(r).begin());
        k.gemm_nn(cur.rows, layer.outputs, layer.inputs, cur.data.data(), cur.cols, layer.weights.data(),
                  layer.outputs, next.data.data(), next.cols, true);
        if (layer.activation == Activation::relu)
            k.relu(next.data.data(), next.data.size());
        else
            for (std::size_t r = 0; r < next.rows; ++r) softmax_inplace(next.row(r));
        cur = std::move(next);
    }
    return cur;
}

Prediction predict(const DenseNet& net, const Scaler& scaler, std::span<const double> x) {
    if (net.label_map().empty()) throw InvalidArgument("network has no label map");
    if (x.size() != net.input_dim())
        throw DimensionMismatch("feature vector has " + std::to_string(x.size()) + " values, model expects " +
                                std::to_string(net.input_dim()));
    const std::vector<double> probs = net.forward(scaler.transform(x));
    const auto best = std::max_element(probs.begin(), probs.end());
    const auto idx = static_cast<std::size_t>(best - probs.begin());
    return {net.label_map()[idx], *best, idx};
}

}  // namespace mldtw::nn
