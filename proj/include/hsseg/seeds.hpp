#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hsseg/core.hpp"
#include "hsseg/metrics.hpp"

namespace hsseg {

enum class SeedOrder { median_first, antimedian_first };

std::string_view to_string(SeedOrder order) noexcept;
/// Accepts "median" / "antimedian" (and the *_first spellings).
SeedOrder parse_seed_order(std::string_view name);

/// How later seeds of a zone are chosen once the first region is extracted.
enum class SeedPolicy {
    /// Walk the ordering computed once over the whole zone.
    zone_order,
    /// Recompute the median of the still-unassigned pixels before every region.
    residual_median,
};

inline constexpr std::size_t kDefaultRegionCap = 50000;

struct SeedEntry {
    std::size_t pixel;  // flat raster index
    double cumdist;
};

/// Cumulative distance of every region member to all members, in the input
/// order. Sums run in ascending raster order so the result does not depend on
/// how the region is enumerated.
///
/// Throws UsageError on an empty region and RegionTooLarge above `cap` pixels.
std::vector<SeedEntry> cumulative_distances(const SpectralCube& cube, const Metric& metric,
                                            std::span<const std::size_t> region,
                                            std::size_t cap = kDefaultRegionCap);

/// Region pixels ordered by cumulative distance, consumed front to back.
class SeedList {
public:
    SeedList() = default;
    SeedList(std::vector<SeedEntry> entries, SeedOrder order);

    SeedOrder order() const noexcept { return order_; }
    const std::vector<SeedEntry>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }

    /// First entry for which assigned(pixel) is false. Entries skipped on the
    /// way are dropped, so a full drain is linear in the list length.
    template <typename Pred>
    std::optional<std::size_t> pop_first_unassigned(Pred&& assigned) {
        while (cursor_ < entries_.size()) {
            const std::size_t p = entries_[cursor_].pixel;
            if (!assigned(p)) return p;
            ++cursor_;
        }
        return std::nullopt;
    }

private:
    std::vector<SeedEntry> entries_;
    SeedOrder order_ = SeedOrder::median_first;
    std::size_t cursor_ = 0;
};

/// A refined partition together with the seed pixel of every label.
struct SeededLabelMap {
    LabelMap labels;
    std::vector<std::size_t> seeds;  // indexed by label
};

/// Sorts ascending (median_first) or descending (antimedian_first) by
/// cumulative distance; ties go to the lower raster index either way.
SeedList build_seed_list(std::vector<SeedEntry> cumdists, SeedOrder order);

/// First element of the median_first ordering of `region`.
std::size_t vectorial_median(const SpectralCube& cube, const Metric& metric,
                             std::span<const std::size_t> region,
                             std::size_t cap = kDefaultRegionCap);

/// First element of the antimedian_first ordering of `region`.
std::size_t vectorial_antimedian(const SpectralCube& cube, const Metric& metric,
                                 std::span<const std::size_t> region,
                                 std::size_t cap = kDefaultRegionCap);

}  // namespace hsseg
