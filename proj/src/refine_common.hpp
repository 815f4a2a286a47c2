#pragma once

#include <cstdint>
#include <vector>

#include "hsseg/core.hpp"
#include "hsseg/seeds.hpp"

namespace hsseg::detail {

inline void check_flat(const SpectralCube& cube, const LabelMap& flat) {
    if (flat.width() != cube.width() || flat.height() != cube.height()) {
        throw UsageError("flat-zone map and cube differ in size");
    }
}

/// Renumbers labels given in creation order to raster first appearance and
/// carries the per-label seeds along.
inline SeededLabelMap finalize(std::size_t width, std::size_t height,
                               const std::vector<std::uint32_t>& provisional,
                               const std::vector<std::size_t>& seeds_by_creation) {
    SeededLabelMap out;
    out.labels = relabel_dense(width, height, std::span<const std::uint32_t>(provisional));
    out.seeds.resize(out.labels.count());
    for (std::size_t created = 0; created < seeds_by_creation.size(); ++created) {
        const std::size_t seed = seeds_by_creation[created];
        out.seeds[out.labels[seed]] = seed;
    }
    return out;
}

/// Next seed of a class under the configured policy, or nullopt once the class
/// is fully assigned.
class SeedSource {
public:
    SeedSource(const SpectralCube& cube, const Metric& metric,
               const std::vector<std::size_t>& members, SeedOrder order, SeedPolicy policy,
               std::size_t cap)
        : cube_(cube), metric_(metric), members_(members), order_(order), policy_(policy),
          cap_(cap) {
        if (policy_ == SeedPolicy::zone_order) {
            list_ = build_seed_list(cumulative_distances(cube, metric, members, cap), order);
        }
    }

    std::optional<std::size_t> next(const std::vector<std::uint8_t>& assigned) {
        if (policy_ == SeedPolicy::zone_order) {
            return list_.pop_first_unassigned([&](std::size_t p) { return assigned[p] != 0; });
        }
        std::vector<std::size_t> residual;
        for (auto p : members_) {
            if (!assigned[p]) residual.push_back(p);
        }
        if (residual.empty()) return std::nullopt;
        return build_seed_list(cumulative_distances(cube_, metric_, residual, cap_), order_)
            .entries()
            .front()
            .pixel;
    }

private:
    const SpectralCube& cube_;
    const Metric& metric_;
    const std::vector<std::size_t>& members_;
    SeedOrder order_;
    SeedPolicy policy_;
    std::size_t cap_;
    SeedList list_;
};

}  // namespace hsseg::detail
