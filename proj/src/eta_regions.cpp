#include "hsseg/eta_regions.hpp"

#include <queue>

#include "refine_common.hpp"

namespace hsseg {

SeededLabelMap eta_bounded_regions_with_seeds(const SpectralCube& cube, const Metric& metric,
                                              const LabelMap& flat, const EtaParams& params) {
    if (!(params.eta >= 0.0)) throw UsageError("eta must be non-negative");
    metric.check_compatible(cube);
    detail::check_flat(cube, flat);

    const std::size_t w = cube.width();
    const std::size_t h = cube.height();
    std::vector<std::uint8_t> assigned(cube.pixel_count(), 0);
    std::vector<std::uint32_t> out(cube.pixel_count(), 0);
    std::vector<std::size_t> seeds;
    std::queue<std::size_t> fifo;

    const auto classes = flat.classes();
    for (std::size_t c = 0; c < classes.size(); ++c) {
        detail::SeedSource source(cube, metric, classes[c], params.order, params.policy,
                                  params.region_cap);
        while (const auto seed = source.next(assigned)) {
            const auto label = static_cast<std::uint32_t>(seeds.size());
            seeds.push_back(*seed);
            // Pixels are claimed when queued; the member set equals claiming
            // them when popped, and each is queued at most once.
            assigned[*seed] = 1;
            out[*seed] = label;
            fifo.push(*seed);
            while (!fifo.empty()) {
                const std::size_t p = fifo.front();
                fifo.pop();
                for_each_neighbor(p, w, h, params.connectivity, [&](std::size_t q, int) {
                    if (assigned[q] || flat[q] != c) return;
                    if (metric(cube, *seed, q) <= params.eta) {
                        assigned[q] = 1;
                        out[q] = label;
                        fifo.push(q);
                    }
                });
            }
        }
    }
    return detail::finalize(w, h, out, seeds);
}

LabelMap eta_bounded_regions(const SpectralCube& cube, const Metric& metric,
                             const LabelMap& flat, const EtaParams& params) {
    return eta_bounded_regions_with_seeds(cube, metric, flat, params).labels;
}

}  // namespace hsseg
