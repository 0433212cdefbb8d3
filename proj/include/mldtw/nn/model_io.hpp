#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "mldtw/nn/dense_net.hpp"

namespace mldtw::nn {

/// Binary classifier file, little-endian:
///
///   "MLDTWNN1"
///   u32 feature_dim, f64[feature_dim] means, f64[feature_dim] stds
///   u32 layer_count
///   per layer: u32 rows, u32 cols, u8 activation (0 relu, 1 softmax),
///              f64[rows*cols] weights (row-major), f64[cols] biases
///   u32 label_count, per label: i32 row, i32 col
///   u32 CRC-32 of every preceding byte
inline constexpr char kModelMagic[8] = {'M', 'L', 'D', 'T', 'W', 'N', 'N', '1'};

std::vector<std::uint8_t> encode_classifier(const Classifier& model);

/// Throws ModelVersionError (magic of another format version),
/// ModelFormatError (not a model / inconsistent contents),
/// ModelTruncatedError (payload shorter than its declared shapes), or
/// ModelChecksumError. Never returns a partially decoded model.
Classifier decode_classifier(std::span<const std::uint8_t> bytes);

void save_model(const std::filesystem::path& path, const Classifier& model);
Classifier load_model(const std::filesystem::path& path);

}  // namespace mldtw::nn
