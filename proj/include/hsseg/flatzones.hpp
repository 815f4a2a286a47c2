#pragma once

#include "hsseg/core.hpp"
#include "hsseg/metrics.hpp"

namespace hsseg {

struct LambdaParams {
    /// Inclusive bound on adjacent-pixel distance. May be +infinity.
    double lambda = 0.0;
    Connectivity connectivity = Connectivity::four;
};

/// Lambda-flat zones: two pixels share a label iff some path joins them whose
/// every step has distance <= lambda. Labels follow raster first appearance.
LabelMap lambda_flat_zones(const SpectralCube& cube, const Metric& metric,
                           const LambdaParams& params, const EdgeWeights* edges = nullptr);

/// Same partition, flooding from unvisited pixels in `scan_order` instead of
/// raster order. `scan_order` must be a permutation of the pixel indices.
LabelMap lambda_flat_zones(const SpectralCube& cube, const Metric& metric,
                           const LambdaParams& params, std::span<const std::size_t> scan_order,
                           const EdgeWeights* edges = nullptr);

}  // namespace hsseg
