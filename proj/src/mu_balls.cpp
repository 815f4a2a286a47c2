#include "hsseg/mu_balls.hpp"

#include <functional>
#include <limits>
#include <queue>
#include <utility>

#include "refine_common.hpp"

namespace hsseg {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

GeodesicBallSearch::GeodesicBallSearch(const SpectralCube& cube, const Metric& metric,
                                       Connectivity conn, const EdgeWeights* edges)
    : cube_(cube), conn_(conn), cost_(cube, metric, edges),
      dist_(cube.pixel_count(), kInf), done_(cube.pixel_count(), 0) {
    metric.check_compatible(cube);
    if (edges && edges->connectivity() != conn) {
        throw UsageError("edge cache connectivity differs from the requested connectivity");
    }
}

std::vector<BallMember> GeodesicBallSearch::run(std::size_t seed, double radius,
                                                std::span<const std::uint8_t> domain_mask) {
    if (domain_mask.size() != cube_.pixel_count()) {
        throw UsageError("domain mask does not cover the grid");
    }
    if (seed >= cube_.pixel_count() || !domain_mask[seed]) {
        throw UsageError("geodesic ball seed " + std::to_string(seed) +
                         " is outside the domain");
    }
    if (!(radius >= 0.0)) throw UsageError("ball radius must be non-negative");

    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    std::vector<BallMember> members;

    dist_[seed] = 0.0;
    touched_.push_back(seed);
    heap.emplace(0.0, seed);
    while (!heap.empty()) {
        const auto [d, p] = heap.top();
        heap.pop();
        if (done_[p]) continue;  // stale entry
        done_[p] = 1;
        members.push_back({p, d});
        for_each_neighbor(p, cube_.width(), cube_.height(), conn_, [&](std::size_t q, int slot) {
            if (!domain_mask[q] || done_[q]) return;
            const double nd = d + cost_(p, q, slot);
            if (nd <= radius && nd < dist_[q]) {
                if (dist_[q] == kInf) touched_.push_back(q);
                dist_[q] = nd;
                heap.emplace(nd, q);
            }
        });
    }

    for (auto t : touched_) {
        dist_[t] = kInf;
        done_[t] = 0;
    }
    touched_.clear();
    return members;
}

std::vector<BallMember> geodesic_ball(const SpectralCube& cube, const Metric& metric,
                                      std::span<const std::size_t> domain, std::size_t seed,
                                      double mu, Connectivity conn, const EdgeWeights* edges) {
    std::vector<std::uint8_t> mask(cube.pixel_count(), 0);
    for (auto p : domain) {
        if (p >= cube.pixel_count()) throw UsageError("domain pixel outside the grid");
        mask[p] = 1;
    }
    GeodesicBallSearch search(cube, metric, conn, edges);
    return search.run(seed, mu, mask);
}

SeededLabelMap mu_geodesic_balls_with_seeds(const SpectralCube& cube, const Metric& metric,
                                            const LabelMap& flat, const MuParams& params,
                                            const EdgeWeights* edges) {
    if (!(params.mu >= 0.0)) throw UsageError("mu must be non-negative");
    detail::check_flat(cube, flat);

    GeodesicBallSearch search(cube, metric, params.connectivity, edges);
    std::vector<std::uint8_t> assigned(cube.pixel_count(), 0);
    std::vector<std::uint8_t> domain(cube.pixel_count(), 0);
    std::vector<std::uint32_t> out(cube.pixel_count(), 0);
    std::vector<std::size_t> seeds;
    const bool residual = params.domain == BallDomain::residual;

    for (const auto& members : flat.classes()) {
        detail::SeedSource source(cube, metric, members, params.order, params.policy,
                                  params.region_cap);
        for (auto p : members) domain[p] = 1;
        while (const auto seed = source.next(assigned)) {
            const auto label = static_cast<std::uint32_t>(seeds.size());
            seeds.push_back(*seed);
            for (const auto& m : search.run(*seed, params.mu, domain)) {
                if (assigned[m.pixel]) continue;  // whole_class only
                assigned[m.pixel] = 1;
                out[m.pixel] = label;
                if (residual) domain[m.pixel] = 0;
            }
        }
        for (auto p : members) domain[p] = 0;
    }
    return detail::finalize(cube.width(), cube.height(), out, seeds);
}

LabelMap mu_geodesic_balls(const SpectralCube& cube, const Metric& metric,
                           const LabelMap& flat, const MuParams& params,
                           const EdgeWeights* edges) {
    return mu_geodesic_balls_with_seeds(cube, metric, flat, params, edges).labels;
}

}  // namespace hsseg
