#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mldtw/nn/dense_net.hpp"
#include "mldtw/nn/matrix.hpp"

namespace mldtw::nn {

struct TrainConfig {
    std::size_t max_epochs = 200;
    std::size_t patience = 10;
    std::size_t batch_size = 32;
    double learning_rate = 1e-3;
    double validation_fraction = 0.2;
    std::uint64_t seed = 0;
    std::vector<std::size_t> hidden{300};

    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    /// Throws InvalidArgument when a field is out of range.
    void validate() const;
};

struct EpochStats {
    std::size_t epoch = 0;  // 1-based
    double train_loss = 0.0;
    double train_accuracy = 0.0;
    double val_loss = 0.0;
    double val_accuracy = 0.0;
};

struct TrainHistory {
    std::vector<EpochStats> epochs;
    std::size_t best_epoch = 0;  // 1-based epoch whose weights were returned
    bool stopped_early = false;

    const EpochStats& best() const { return epochs.at(best_epoch - 1); }
};

struct TrainResult {
    DenseNet net;  // weights of the best validation epoch, no label map
    TrainHistory history;
};

/// Minimizes mean categorical cross-entropy with mini-batch Adam. A seeded
/// random split holds out `validation_fraction` of the rows; training stops
/// once validation loss has not improved for `patience` epochs.
///
/// `y[r]` is the class of row r in [0, label_count). Throws InvalidArgument on
/// fewer than two distinct labels, non-finite features, or mismatched sizes.
TrainResult train_classifier(const Matrix& x, std::span<const int> y, std::size_t label_count,
                             const TrainConfig& config);

/// Parameter gradients, shaped like the network's layers.
struct Gradients {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;
};

/// Mean cross-entropy of `net` on (x, y); fills `grads` with its analytic
/// gradient when non-null.
double cross_entropy(const DenseNet& net, const Matrix& x, std::span<const int> y, Gradients* grads = nullptr);

/// Fraction of rows whose argmax class equals y.
double accuracy(const DenseNet& net, const Matrix& x, std::span<const int> y);

}  // namespace mldtw::nn
