#pragma once

// Little-endian byte encoding helpers for the binary model formats.

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mldtw/error.hpp"

namespace mldtw::detail {

static_assert(std::endian::native == std::endian::little, "model I/O assumes a little-endian host");

std::uint32_t crc32(std::span<const std::uint8_t> bytes) noexcept;

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

class ByteWriter {
public:
    void bytes(const void* data, std::size_t size) {
        const auto* p = static_cast<const std::uint8_t*>(data);
        buf_.insert(buf_.end(), p, p + size);
    }
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u32(std::uint32_t v) { bytes(&v, sizeof v); }
    void i32(std::int32_t v) { bytes(&v, sizeof v); }
    void u64(std::uint64_t v) { bytes(&v, sizeof v); }
    void f64s(std::span<const double> v) { bytes(v.data(), v.size_bytes()); }

    /// Appends the CRC-32 of everything written so far and returns the buffer.
    std::vector<std::uint8_t> finish() {
        u32(crc32(buf_));
        return std::move(buf_);
    }

private:
    std::vector<std::uint8_t> buf_;
};

class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

    std::size_t remaining() const noexcept { return data_.size() - pos_; }
    std::size_t position() const noexcept { return pos_; }

    std::span<const std::uint8_t> take(std::size_t size) {
        if (size > remaining())
            throw ModelTruncatedError("model file truncated: needed " + std::to_string(size) + " bytes at offset " +
                                      std::to_string(pos_) + ", " + std::to_string(remaining()) + " left");
        auto out = data_.subspan(pos_, size);
        pos_ += size;
        return out;
    }
    template <class T>
    T scalar() {
        T v;
        std::memcpy(&v, take(sizeof(T)).data(), sizeof(T));
        return v;
    }
    std::uint8_t u8() { return scalar<std::uint8_t>(); }
    std::uint32_t u32() { return scalar<std::uint32_t>(); }
    std::int32_t i32() { return scalar<std::int32_t>(); }
    std::uint64_t u64() { return scalar<std::uint64_t>(); }

    std::vector<double> f64s(std::size_t count) {
        if (count > remaining() / sizeof(double))
            throw ModelTruncatedError("model file truncated: declared " + std::to_string(count) +
                                      " values exceed the remaining payload");
        std::vector<double> v(count);
        std::memcpy(v.data(), take(count * sizeof(double)).data(), count * sizeof(double));
        return v;
    }

    /// Requires that exactly the 4-byte CRC trailer remains and that it matches.
    void verify_trailer() {
        if (remaining() < 4) throw ModelTruncatedError("model file truncated: missing checksum");
        if (remaining() > 4) throw ModelFormatError("model file has trailing bytes after its payload");
        const std::uint32_t expected = crc32(data_.first(pos_));
        if (u32() != expected) throw ModelChecksumError("model file checksum mismatch");
    }

private:
    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

}  // namespace mldtw::detail
