/**
 * @file core.hpp
 * @brief Spectral cube, pixel grid adjacency and label maps.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hsseg/error.hpp"

namespace hsseg {

/// W x H grid of L-band spectra, stored row-major by pixel then band.
/// Immutable after construction.
class SpectralCube {
public:
    /// Throws UsageError on zero dimensions, wrong data length or non-finite values.
    SpectralCube(std::size_t width, std::size_t height, std::size_t bands,
                 std::vector<double> data);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t bands() const noexcept { return bands_; }
    std::size_t pixel_count() const noexcept { return width_ * height_; }

    std::span<const double> spectrum(std::size_t pixel) const noexcept {
        return {data_.data() + pixel * bands_, bands_};
    }
    double at(std::size_t x, std::size_t y, std::size_t band) const noexcept {
        return data_[(y * width_ + x) * bands_ + band];
    }
    std::span<const double> data() const noexcept { return data_; }

    friend bool operator==(const SpectralCube&, const SpectralCube&) = default;

private:
    std::size_t width_;
    std::size_t height_;
    std::size_t bands_;
    std::vector<double> data_;
};

struct PixelIndex {
    std::size_t x = 0;
    std::size_t y = 0;

    std::size_t flat(std::size_t width) const noexcept { return y * width + x; }
    static PixelIndex from_flat(std::size_t index, std::size_t width) noexcept {
        return {index % width, index / width};
    }

    friend bool operator==(const PixelIndex&, const PixelIndex&) = default;
};

enum class Connectivity { four = 4, eight = 8 };

namespace detail {

struct Offset {
    int dx;
    int dy;
};

// N, S, W, E, then NW, NE, SW, SE.
inline constexpr Offset kNeighborOffsets[8] = {
    {0, -1}, {0, 1}, {-1, 0}, {1, 0}, {-1, -1}, {1, -1}, {-1, 1}, {1, 1},
};

}  // namespace detail

/// Calls f(neighbor_flat_index, slot) for every in-bounds neighbor of `pixel`,
/// where slot indexes the fixed N, S, W, E, NW, NE, SW, SE order.
template <typename F>
inline void for_each_neighbor(std::size_t pixel, std::size_t width, std::size_t height,
                              Connectivity conn, F&& f) {
    const auto x = static_cast<long long>(pixel % width);
    const auto y = static_cast<long long>(pixel / width);
    const int n = static_cast<int>(conn);
    for (int slot = 0; slot < n; ++slot) {
        const auto nx = x + detail::kNeighborOffsets[slot].dx;
        const auto ny = y + detail::kNeighborOffsets[slot].dy;
        if (nx < 0 || ny < 0 || nx >= static_cast<long long>(width) ||
            ny >= static_cast<long long>(height)) {
            continue;
        }
        f(static_cast<std::size_t>(ny) * width + static_cast<std::size_t>(nx), slot);
    }
}

/// In-bounds neighbors of p in deterministic order. Throws UsageError when p is
/// outside the w x h grid.
std::vector<PixelIndex> neighbors(PixelIndex p, Connectivity conn, std::size_t width,
                                  std::size_t height);

/// Partition of the pixel grid. Labels are dense ({0..count-1}); every
/// LabelMap built by the library is also in first raster-appearance order.
class LabelMap {
public:
    LabelMap() = default;

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept { return labels_.size(); }
    std::size_t count() const noexcept { return count_; }

    std::uint32_t operator[](std::size_t pixel) const noexcept { return labels_[pixel]; }
    std::uint32_t at(std::size_t x, std::size_t y) const noexcept {
        return labels_[y * width_ + x];
    }
    std::span<const std::uint32_t> labels() const noexcept { return labels_; }

    /// Pixel count of every class, indexed by label.
    std::vector<std::size_t> sizes() const;
    /// Members of every class in raster order, indexed by label.
    std::vector<std::vector<std::size_t>> classes() const;

    friend bool operator==(const LabelMap&, const LabelMap&) = default;
    friend LabelMap relabel_dense(std::size_t, std::size_t, std::span<const std::uint64_t>);

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::size_t count_ = 0;
    std::vector<std::uint32_t> labels_;
};

/// Renumbers provisional labels to {0..count-1} in first raster appearance.
LabelMap relabel_dense(std::size_t width, std::size_t height,
                       std::span<const std::uint64_t> raw);

/// Convenience overload for 32-bit provisional labels.
LabelMap relabel_dense(std::size_t width, std::size_t height,
                       std::span<const std::uint32_t> raw);

/// True iff every class of `fine` lies inside one class of `coarse`.
bool is_refinement(const LabelMap& fine, const LabelMap& coarse);

/// Number of connected components of every class under `conn`, indexed by label.
std::vector<std::size_t> class_component_counts(const LabelMap& labels, Connectivity conn);

/// True iff every class is a single connected component under `conn`.
bool classes_connected(const LabelMap& labels, Connectivity conn);

}  // namespace hsseg
