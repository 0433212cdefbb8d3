#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mldtw/nn/matrix.hpp"
#include "mldtw/nn/scaler.hpp"
#include "mldtw/region.hpp"

namespace mldtw::nn {

enum class Activation : std::uint8_t { relu = 0, softmax = 1 };

/// Fully connected layer y = act(x W + b); W is inputs x outputs, row-major.
struct DenseLayer {
    std::size_t inputs = 0;
    std::size_t outputs = 0;
    std::vector<double> weights;
    std::vector<double> biases;
    Activation activation = Activation::relu;

    friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

/// elementwise max(0, x)
std::vector<double> relu(std::span<const double> v);

/// exp(z_i) / sum_j exp(z_j), evaluated after subtracting max(z).
std::vector<double> softmax(std::span<const double> z);
void softmax_inplace(std::span<double> z) noexcept;

/// Feed-forward classifier: ReLU hidden layers, softmax output, and a label
/// map from output index to waypoint.
class DenseNet {
public:
    DenseNet() = default;

    /// Throws InvalidArgument unless the layers chain, only the last layer is
    /// softmax, and the label map (if non-empty) matches the output width.
    DenseNet(std::vector<DenseLayer> layers, std::vector<Waypoint> label_map = {});

    /// He-uniform weights (limit sqrt(6 / fan_in)) from a seeded generator;
    /// zero biases.
    static DenseNet initialized(std::size_t inputs, std::span<const std::size_t> hidden, std::size_t outputs,
                                std::uint64_t seed);

    std::size_t input_dim() const noexcept { return layers_.empty() ? 0 : layers_.front().inputs; }
    std::size_t output_dim() const noexcept { return layers_.empty() ? 0 : layers_.back().outputs; }

    const std::vector<DenseLayer>& layers() const noexcept { return layers_; }
    std::vector<DenseLayer>& mutable_layers() noexcept { return layers_; }

    const std::vector<Waypoint>& label_map() const noexcept { return labels_; }
    void set_label_map(std::vector<Waypoint> labels);

    /// Class probabilities for one (already scaled) input.
    std::vector<double> forward(std::span<const double> x) const;

    /// Class probabilities for every row of `x`.
    Matrix forward(const Matrix& x) const;

    friend bool operator==(const DenseNet&, const DenseNet&) = default;

private:
    std::vector<DenseLayer> layers_;
    std::vector<Waypoint> labels_;
};

/// A trained waypoint classifier with its input standardization.
struct Classifier {
    Scaler scaler;
    DenseNet net;
};

struct Prediction {
    Waypoint waypoint;
    double confidence = 0.0;  // max class probability, in (0, 1]
    std::size_t label_index = 0;
};

/// Scales `x`, runs the net, and returns the most probable label (lowest
/// index on ties) with its probability. Throws DimensionMismatch when `x`
/// has the wrong length and InvalidArgument when the net has no label map.
Prediction predict(const DenseNet& net, const Scaler& scaler, std::span<const double> x);
inline Prediction predict(const Classifier& c, std::span<const double> x) { return predict(c.net, c.scaler, x); }

}  // namespace mldtw::nn
