#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hsseg/core.hpp"
#include "hsseg/metrics.hpp"
#include "hsseg/seeds.hpp"

namespace hsseg {

/// Which pixels geodesic paths may cross while growing a ball.
enum class BallDomain {
    /// Only still-unassigned pixels of the flat class. Balls are connected.
    residual,
    /// Every pixel of the flat class; only unassigned ones join the ball.
    /// Balls may come out disconnected. Kept for comparison runs.
    whole_class,
};

struct MuParams {
    /// Inclusive bound on the geodesic distance from a ball's seed.
    double mu = 0.0;
    SeedOrder order = SeedOrder::median_first;
    Connectivity connectivity = Connectivity::four;
    SeedPolicy policy = SeedPolicy::zone_order;
    BallDomain domain = BallDomain::residual;
    std::size_t region_cap = kDefaultRegionCap;
};

struct BallMember {
    std::size_t pixel;
    double distance;  // geodesic distance from the seed
};

/// Reusable Dijkstra workspace over the pixel graph of one cube. Edge weights
/// are the spectral distances between adjacent pixels.
class GeodesicBallSearch {
public:
    GeodesicBallSearch(const SpectralCube& cube, const Metric& metric, Connectivity conn,
                       const EdgeWeights* edges = nullptr);

    /// Pixels whose geodesic distance from `seed`, over paths inside
    /// `domain_mask` (non-zero entries), is <= radius; in pop order, i.e. by
    /// non-decreasing distance with ties in raster order. The seed comes first.
    std::vector<BallMember> run(std::size_t seed, double radius,
                                std::span<const std::uint8_t> domain_mask);

private:
    const SpectralCube& cube_;
    Connectivity conn_;
    EdgeCost cost_;
    std::vector<double> dist_;
    std::vector<std::uint8_t> done_;
    std::vector<std::size_t> touched_;
};

/// Geodesic ball of radius `mu` around `seed` restricted to `domain`.
/// Throws UsageError when the seed is not in the domain.
std::vector<BallMember> geodesic_ball(const SpectralCube& cube, const Metric& metric,
                                      std::span<const std::size_t> domain, std::size_t seed,
                                      double mu, Connectivity conn = Connectivity::four,
                                      const EdgeWeights* edges = nullptr);

/// Splits every class of `flat` into mu-geodesic balls grown from the class's
/// cumulative-distance seeds. The result refines `flat`.
LabelMap mu_geodesic_balls(const SpectralCube& cube, const Metric& metric,
                           const LabelMap& flat, const MuParams& params,
                           const EdgeWeights* edges = nullptr);

SeededLabelMap mu_geodesic_balls_with_seeds(const SpectralCube& cube, const Metric& metric,
                                            const LabelMap& flat, const MuParams& params,
                                            const EdgeWeights* edges = nullptr);

}  // namespace hsseg
