#pragma once

#include "hsseg/core.hpp"
#include "hsseg/metrics.hpp"
#include "hsseg/seeds.hpp"

namespace hsseg {

struct EtaParams {
    /// Inclusive bound on the distance from a region's seed to any member.
    double eta = 0.0;
    SeedOrder order = SeedOrder::median_first;
    Connectivity connectivity = Connectivity::four;
    SeedPolicy policy = SeedPolicy::zone_order;
    std::size_t region_cap = kDefaultRegionCap;
};

/// Splits every class of `flat` into eta-bounded regions.
///
/// Seeds are taken from the class's cumulative-distance ordering. Each region
/// grows breadth-first from its seed through not-yet-assigned pixels of the
/// same class whose distance to the seed is <= eta, so regions are connected,
/// disjoint, and cover the class. The result refines `flat` and is labeled in
/// raster first-appearance order.
LabelMap eta_bounded_regions(const SpectralCube& cube, const Metric& metric,
                             const LabelMap& flat, const EtaParams& params);

SeededLabelMap eta_bounded_regions_with_seeds(const SpectralCube& cube, const Metric& metric,
                                              const LabelMap& flat, const EtaParams& params);

}  // namespace hsseg
