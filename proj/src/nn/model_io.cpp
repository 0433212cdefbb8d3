#include "mldtw/nn/model_io.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>

#include "../byte_io.hpp"

namespace mldtw {

namespace detail {

std::uint32_t crc32(std::span<const std::uint8_t> bytes) noexcept {
    uLong crc = ::crc32(0L, Z_NULL, 0);
    std::size_t pos = 0;
    while (pos < bytes.size()) {
        const auto chunk = static_cast<uInt>(std::min<std::size_t>(bytes.size() - pos, 1u << 30));
        crc = ::crc32(crc, bytes.data() + pos, chunk);
        pos += chunk;
    }
    return static_cast<std::uint32_t>(crc);
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("failed reading " + path.string());
    return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace detail

namespace nn {

std::vector<std::uint8_t> encode_classifier(const Classifier& model) {
    detail::ByteWriter w;
    w.bytes(kModelMagic, sizeof kModelMagic);
    w.u32(static_cast<std::uint32_t>(model.scaler.dim()));
    w.f64s(model.scaler.means);
    w.f64s(model.scaler.stds);
    w.u32(static_cast<std::uint32_t>(model.net.layers().size()));
    for (const DenseLayer& layer : model.net.layers()) {
        w.u32(static_cast<std::uint32_t>(layer.inputs));
        w.u32(static_cast<std::uint32_t>(layer.outputs));
        w.u8(static_cast<std::uint8_t>(layer.activation));
        w.f64s(layer.weights);
        w.f64s(layer.biases);
    }
    w.u32(static_cast<std::uint32_t>(model.net.label_map().size()));
    for (const Waypoint& label : model.net.label_map()) {
        w.i32(label.row);
        w.i32(label.col);
    }
    return w.finish();
}

Classifier decode_classifier(std::span<const std::uint8_t> bytes) {
    detail::ByteReader r(bytes);
    if (bytes.size() < sizeof kModelMagic) throw ModelFormatError("not a classifier file: too short for magic");
    const auto magic = r.take(sizeof kModelMagic);
    if (!std::equal(magic.begin(), magic.end(), kModelMagic)) {
        if (std::equal(magic.begin(), magic.end() - 1, kModelMagic))
            throw ModelVersionError("unsupported classifier format version '" +
                                    std::string(1, static_cast<char>(magic.back())) + "'");
        throw ModelFormatError("not a classifier file: bad magic bytes");
    }

    Classifier out;
    const std::uint32_t dim = r.u32();
    out.scaler.means = r.f64s(dim);
    out.scaler.stds = r.f64s(dim);

    const std::uint32_t layer_count = r.u32();
    if (layer_count == 0) throw ModelFormatError("classifier has no layers");
    std::vector<DenseLayer> layers;
    std::vector<std::uint8_t> activations;
    for (std::uint32_t l = 0; l < layer_count; ++l) {
        DenseLayer layer;
        layer.inputs = r.u32();
        layer.outputs = r.u32();
        activations.push_back(r.u8());
        layer.weights = r.f64s(static_cast<std::size_t>(layer.inputs) * layer.outputs);
        layer.biases = r.f64s(layer.outputs);
        layers.push_back(std::move(layer));
    }
    const std::uint32_t label_count = r.u32();
    if (label_count > r.remaining() / 8) throw ModelTruncatedError("model file truncated: label map");
    std::vector<Waypoint> labels(label_count);
    for (Waypoint& label : labels) {
        label.row = r.i32();
        label.col = r.i32();
    }
    // Structure is intact; corruption inside it is reported by the checksum
    // before any semantic check can misattribute it.
    r.verify_trailer();

    for (double s : out.scaler.stds)
        if (!(s > 0.0) || !std::isfinite(s)) throw ModelFormatError("scaler std must be positive");
    for (std::size_t l = 0; l < layers.size(); ++l) {
        if (activations[l] > 1) throw ModelFormatError("unknown activation code " + std::to_string(activations[l]));
        layers[l].activation = static_cast<Activation>(activations[l]);
    }
    try {
        out.net = DenseNet(std::move(layers), std::move(labels));
    } catch (const InvalidArgument& e) {
        throw ModelFormatError(std::string("inconsistent classifier: ") + e.what());
    }
    if (out.net.input_dim() != dim) throw ModelFormatError("scaler width does not match network input");
    return out;
}

void save_model(const std::filesystem::path& path, const Classifier& model) {
    detail::write_file(path, encode_classifier(model));
}

Classifier load_model(const std::filesystem::path& path) { return decode_classifier(detail::read_file(path)); }

}  // namespace nn
}  // namespace mldtw
