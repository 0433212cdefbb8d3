#include <string>

#include "byte_io.hpp"
#include "mldtw/nn/model_io.hpp"
#include "mldtw/pipeline.hpp"

namespace mldtw {

namespace {
constexpr char kSetMagic[8] = {'M', 'L', 'D', 'T', 'W', 'S', 'T', '1'};
}

std::vector<std::uint8_t> encode_model_set(const WaypointModelSet& set) {
    detail::ByteWriter w;
    w.bytes(kSetMagic, sizeof kSetMagic);
    w.u32(static_cast<std::uint32_t>(set.features.prefix_a));
    w.u32(static_cast<std::uint32_t>(set.features.prefix_b));
    w.u32(static_cast<std::uint32_t>(set.quantum));
    w.u8(static_cast<std::uint8_t>(set.features.mode));
    w.u32(static_cast<std::uint32_t>(set.dim));
    w.u32(static_cast<std::uint32_t>(set.dataset_id.size()));
    w.bytes(set.dataset_id.data(), set.dataset_id.size());
    w.u32(static_cast<std::uint32_t>(set.models.size()));
    for (const nn::Classifier& model : set.models) {
        const std::vector<std::uint8_t> blob = nn::encode_classifier(model);
        w.u64(blob.size());
        w.bytes(blob.data(), blob.size());
    }
    return w.finish();
}

WaypointModelSet decode_model_set(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < sizeof kSetMagic) throw ModelFormatError("not a model set file: too short for magic");
    detail::ByteReader r(bytes);
    const auto magic = r.take(sizeof kSetMagic);
    if (!std::equal(magic.begin(), magic.end(), kSetMagic)) {
        if (std::equal(magic.begin(), magic.end() - 1, kSetMagic))
            throw ModelVersionError("unsupported model set format version");
        throw ModelFormatError("not a model set file: bad magic bytes");
    }
    WaypointModelSet set;
    set.features.prefix_a = r.u32();
    set.features.prefix_b = r.u32();
    set.quantum = static_cast<int>(r.u32());
    const std::uint8_t mode = r.u8();
    set.dim = r.u32();
    const std::uint32_t id_len = r.u32();
    const auto id = r.take(id_len);
    set.dataset_id.assign(id.begin(), id.end());
    const std::uint32_t count = r.u32();
    if (count != kWaypointCount)
        throw ModelFormatError("model set holds " + std::to_string(count) + " classifiers, expected 5");
    std::vector<std::span<const std::uint8_t>> blobs;
    for (std::uint32_t k = 0; k < count; ++k) {
        const std::uint64_t len = r.u64();
        if (len > r.remaining()) throw ModelTruncatedError("model set truncated inside classifier " + std::to_string(k));
        blobs.push_back(r.take(static_cast<std::size_t>(len)));
    }
    r.verify_trailer();

    if (mode > 1) throw ModelFormatError("unknown feature mode " + std::to_string(mode));
    set.features.mode = static_cast<FeatureMode>(mode);
    const std::size_t width = set.features.feature_count(set.dim);
    for (std::size_t k = 0; k < kWaypointCount; ++k) {
        set.models[k] = nn::decode_classifier(blobs[k]);
        if (set.models[k].net.input_dim() != width)
            throw ModelFormatError("classifier " + std::to_string(k) + " input width does not match the feature layout");
    }
    return set;
}

void save_model_set(const std::filesystem::path& path, const WaypointModelSet& set) {
    detail::write_file(path, encode_model_set(set));
}

WaypointModelSet load_model_set(const std::filesystem::path& path) {
    return decode_model_set(detail::read_file(path));
}

}  // namespace mldtw
