#pragma once

#include <stdexcept>
#include <string>

namespace hsseg {

enum class ErrorCode {
    usage = 2,
    io = 3,
    format = 4,
    dimension_mismatch = 5,
    degenerate_marginal = 6,
    region_too_large = 7,
};

/// Base of every error raised by the library. The code doubles as the CLI
/// exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error(ErrorCode::usage, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

/// Malformed file content. `offset` is the byte position where parsing failed.
class FormatError : public Error {
public:
    enum class Kind { bad_magic, truncated, zero_dims, bad_dtype, bad_header };

    FormatError(Kind kind, std::size_t offset, const std::string& what)
        : Error(ErrorCode::format, what + " (at byte " + std::to_string(offset) + ")"),
          kind_(kind), offset_(offset) {}

    /// Same error with `prefix` (typically the file name) in front of the message.
    FormatError(const std::string& prefix, const FormatError& inner)
        : Error(ErrorCode::format, prefix + inner.what()), kind_(inner.kind_),
          offset_(inner.offset_) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    Kind kind_;
    std::size_t offset_;
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what)
        : Error(ErrorCode::dimension_mismatch, what) {}
};

/// Chi-squared requested on a cube with a zero pixel or band marginal.
class DegenerateMarginal : public Error {
public:
    enum class Axis { pixel, band };

    DegenerateMarginal(Axis axis, std::size_t index)
        : Error(ErrorCode::degenerate_marginal,
                std::string("chi-squared marginal is zero for ") +
                    (axis == Axis::pixel ? "pixel " : "band ") + std::to_string(index)),
          axis_(axis), index_(index) {}

    Axis axis() const noexcept { return axis_; }
    std::size_t index() const noexcept { return index_; }

private:
    Axis axis_;
    std::size_t index_;
};

class RegionTooLarge : public Error {
public:
    RegionTooLarge(std::size_t size, std::size_t cap)
        : Error(ErrorCode::region_too_large,
                "region of " + std::to_string(size) + " pixels exceeds the cap of " +
                    std::to_string(cap) + " for exact cumulative distances"),
          size_(size) {}

    std::size_t size() const noexcept { return size_; }

private:
    std::size_t size_;
};

}  // namespace hsseg
