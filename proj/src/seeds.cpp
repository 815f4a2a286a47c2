#include "hsseg/seeds.hpp"

#include <algorithm>
#include <string>

namespace hsseg {

std::string_view to_string(SeedOrder order) noexcept {
    return order == SeedOrder::median_first ? "median" : "antimedian";
}

SeedOrder parse_seed_order(std::string_view name) {
    if (name == "median" || name == "median_first") return SeedOrder::median_first;
    if (name == "antimedian" || name == "antimedian_first") return SeedOrder::antimedian_first;
    throw UsageError("unknown seed order '" + std::string(name) + "'");
}

std::vector<SeedEntry> cumulative_distances(const SpectralCube& cube, const Metric& metric,
                                            std::span<const std::size_t> region,
                                            std::size_t cap) {
    if (region.empty()) throw UsageError("cumulative distances of an empty region");
    if (region.size() > cap) throw RegionTooLarge(region.size(), cap);
    metric.check_compatible(cube);

    std::vector<std::size_t> sorted(region.begin(), region.end());
    std::sort(sorted.begin(), sorted.end());
    for (auto p : sorted) {
        if (p >= cube.pixel_count()) throw UsageError("region pixel outside the grid");
    }

    // Each pair is evaluated once; accumulation order per pixel stays raster
    // ascending because row i receives j < i contributions before j > i ones.
    const std::size_t k = sorted.size();
    std::vector<double> acc(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const double d = metric(cube, sorted[i], sorted[j]);
            acc[i] += d;
            acc[j] += d;
        }
    }

    std::vector<SeedEntry> out;
    out.reserve(k);
    for (auto p : region) {
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), p);
        out.push_back({p, acc[static_cast<std::size_t>(it - sorted.begin())]});
    }
    return out;
}

SeedList::SeedList(std::vector<SeedEntry> entries, SeedOrder order)
    : entries_(std::move(entries)), order_(order) {}

SeedList build_seed_list(std::vector<SeedEntry> cumdists, SeedOrder order) {
    if (order == SeedOrder::median_first) {
        std::sort(cumdists.begin(), cumdists.end(), [](const SeedEntry& a, const SeedEntry& b) {
            return a.cumdist != b.cumdist ? a.cumdist < b.cumdist : a.pixel < b.pixel;
        });
    } else {
        std::sort(cumdists.begin(), cumdists.end(), [](const SeedEntry& a, const SeedEntry& b) {
            return a.cumdist != b.cumdist ? a.cumdist > b.cumdist : a.pixel < b.pixel;
        });
    }
    return SeedList(std::move(cumdists), order);
}

std::size_t vectorial_median(const SpectralCube& cube, const Metric& metric,
                             std::span<const std::size_t> region, std::size_t cap) {
    return build_seed_list(cumulative_distances(cube, metric, region, cap),
                           SeedOrder::median_first)
        .entries()
        .front()
        .pixel;
}

std::size_t vectorial_antimedian(const SpectralCube& cube, const Metric& metric,
                                 std::span<const std::size_t> region, std::size_t cap) {
    return build_seed_list(cumulative_distances(cube, metric, region, cap),
                           SeedOrder::antimedian_first)
        .entries()
        .front()
        .pixel;
}

}  // namespace hsseg
