#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "hsseg/core.hpp"

namespace hsseg {

enum class MetricKind { euclidean, chi_squared };

std::string_view to_string(MetricKind kind) noexcept;
/// Accepts "euclidean" and "chi2" / "chi_squared"; throws UsageError otherwise.
MetricKind parse_metric_kind(std::string_view name);

/// A spectral distance bound to one cube. For chi-squared, the band and pixel
/// marginals are computed once at construction.
class Metric {
public:
    /// Throws UsageError on negative values for chi-squared and
    /// DegenerateMarginal on a zero pixel or band sum.
    Metric(const SpectralCube& cube, MetricKind kind);

    MetricKind kind() const noexcept { return kind_; }

    /// Distance between two pixels of the cube the metric was built on.
    double operator()(const SpectralCube& cube, std::size_t p, std::size_t q) const noexcept;

    double distance(const SpectralCube& cube, PixelIndex p, PixelIndex q) const;

    const std::vector<double>& band_sums() const noexcept { return band_sums_; }
    const std::vector<double>& pixel_sums() const noexcept { return pixel_sums_; }
    double grand_total() const noexcept { return grand_total_; }

    /// Throws UsageError unless the cube has the shape this metric was built on.
    void check_compatible(const SpectralCube& cube) const;

private:
    MetricKind kind_;
    std::size_t width_;
    std::size_t height_;
    std::size_t bands_;
    std::vector<double> band_sums_;
    std::vector<double> pixel_sums_;
    std::vector<double> band_weights_;  // N / band_sums_[j]
    double grand_total_ = 0.0;
};

/// Per-edge distances for every adjacent pixel pair, computed once and shared by
/// passes that reuse the same cube and metric.
class EdgeWeights {
public:
    EdgeWeights(const SpectralCube& cube, const Metric& metric, Connectivity conn);

    Connectivity connectivity() const noexcept { return conn_; }
    /// Weight of the edge from `pixel` through neighbor slot `slot`.
    double operator()(std::size_t pixel, int slot) const noexcept {
        return weights_[pixel * stride_ + static_cast<std::size_t>(slot)];
    }

private:
    Connectivity conn_;
    std::size_t stride_;
    std::vector<double> weights_;
};

/// Edge-cost functor used by the segmentation passes: cached when an
/// EdgeWeights instance is available, computed on demand otherwise.
class EdgeCost {
public:
    EdgeCost(const SpectralCube& cube, const Metric& metric, const EdgeWeights* cache)
        : cube_(cube), metric_(metric), cache_(cache) {}

    double operator()(std::size_t p, std::size_t q, int slot) const noexcept {
        return cache_ ? (*cache_)(p, slot) : metric_(cube_, p, q);
    }

private:
    const SpectralCube& cube_;
    const Metric& metric_;
    const EdgeWeights* cache_;
};

}  // namespace hsseg
