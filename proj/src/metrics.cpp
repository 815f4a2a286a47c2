#include "hsseg/metrics.hpp"

#include <cmath>
#include <string>

namespace hsseg {

std::string_view to_string(MetricKind kind) noexcept {
    return kind == MetricKind::euclidean ? "euclidean" : "chi2";
}

MetricKind parse_metric_kind(std::string_view name) {
    if (name == "euclidean") return MetricKind::euclidean;
    if (name == "chi2" || name == "chi_squared") return MetricKind::chi_squared;
    throw UsageError("unknown metric '" + std::string(name) + "'");
}

Metric::Metric(const SpectralCube& cube, MetricKind kind)
    : kind_(kind), width_(cube.width()), height_(cube.height()), bands_(cube.bands()) {
    if (kind_ != MetricKind::chi_squared) return;

    const std::size_t n = cube.pixel_count();
    band_sums_.assign(bands_, 0.0);
    pixel_sums_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto s = cube.spectrum(i);
        // The pixel marginal runs over all L bands.
        for (std::size_t j = 0; j < bands_; ++j) {
            if (s[j] < 0.0) {
                throw UsageError("chi-squared requires non-negative values; pixel " +
                                 std::to_string(i) + ", band " + std::to_string(j) +
                                 " is negative");
            }
            band_sums_[j] += s[j];
            pixel_sums_[i] += s[j];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (pixel_sums_[i] <= 0.0) throw DegenerateMarginal(DegenerateMarginal::Axis::pixel, i);
    }
    for (std::size_t j = 0; j < bands_; ++j) {
        if (band_sums_[j] <= 0.0) throw DegenerateMarginal(DegenerateMarginal::Axis::band, j);
        grand_total_ += band_sums_[j];
    }
    band_weights_.resize(bands_);
    for (std::size_t j = 0; j < bands_; ++j) band_weights_[j] = grand_total_ / band_sums_[j];
}

double Metric::operator()(const SpectralCube& cube, std::size_t p,
                          std::size_t q) const noexcept {
    const auto a = cube.spectrum(p);
    const auto b = cube.spectrum(q);
    double acc = 0.0;
    if (kind_ == MetricKind::euclidean) {
        for (std::size_t j = 0; j < bands_; ++j) {
            const double d = a[j] - b[j];
            acc += d * d;
        }
    } else {
        const double sa = pixel_sums_[p];
        const double sb = pixel_sums_[q];
        for (std::size_t j = 0; j < bands_; ++j) {
            const double d = a[j] / sa - b[j] / sb;
            acc += band_weights_[j] * d * d;
        }
    }
    return std::sqrt(acc);
}

double Metric::distance(const SpectralCube& cube, PixelIndex p, PixelIndex q) const {
    check_compatible(cube);
    if (p.x >= width_ || p.y >= height_ || q.x >= width_ || q.y >= height_) {
        throw UsageError("distance: pixel outside the grid");
    }
    return (*this)(cube, p.flat(width_), q.flat(width_));
}

void Metric::check_compatible(const SpectralCube& cube) const {
    if (cube.width() != width_ || cube.height() != height_ || cube.bands() != bands_) {
        throw UsageError("metric was built on a cube of a different shape");
    }
}

EdgeWeights::EdgeWeights(const SpectralCube& cube, const Metric& metric, Connectivity conn)
    : conn_(conn), stride_(static_cast<std::size_t>(conn)) {
    metric.check_compatible(cube);
    const std::size_t n = cube.pixel_count();
    weights_.assign(n * stride_, 0.0);
    for (std::size_t p = 0; p < n; ++p) {
        for_each_neighbor(p, cube.width(), cube.height(), conn, [&](std::size_t q, int slot) {
            // Slots come in opposite pairs (N/S, W/E, NW/SE, NE/SW); compute each
            // edge once from its lower-index end.
            if (q < p) return;
            const double w = metric(cube, p, q);
            weights_[p * stride_ + static_cast<std::size_t>(slot)] = w;
            static constexpr int opposite[8] = {1, 0, 3, 2, 7, 6, 5, 4};
            weights_[q * stride_ + static_cast<std::size_t>(opposite[slot])] = w;
        });
    }
}

}  // namespace hsseg
