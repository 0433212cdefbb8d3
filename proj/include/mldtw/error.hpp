#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mldtw {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates a documented precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Two series (or a series and a model) disagree on point dimension or length.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// The bottom-right cell of a constrained cost matrix was never reached.
class DisconnectedRegion : public Error {
public:
    DisconnectedRegion() : Error("disconnected region: no warp path reaches (n, m)") {}
};

/// A file could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Persisted model errors. Each failure mode has its own type so callers and
/// tests can tell a wrong file from a damaged one.
class ModelFormatError : public Error {
public:
    using Error::Error;
};
class ModelVersionError : public ModelFormatError {
public:
    using ModelFormatError::ModelFormatError;
};
class ModelTruncatedError : public ModelFormatError {
public:
    using ModelFormatError::ModelFormatError;
};
class ModelChecksumError : public ModelFormatError {
public:
    using ModelFormatError::ModelFormatError;
};

/// CSV parse failure carrying the 1-based line it occurred on (0 when the
/// failure is not tied to a line, e.g. an empty file).
class CsvError : public Error {
public:
    enum class Kind { empty_file, ragged_row, non_numeric, bad_header, short_series };

    CsvError(Kind kind, std::size_t line, const std::string& what)
        : Error(line ? what + " (line " + std::to_string(line) + ")" : what), kind_(kind), line_(line) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }

private:
    Kind kind_;
    std::size_t line_;
};

}  // namespace mldtw
