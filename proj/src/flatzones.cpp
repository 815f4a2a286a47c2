#include "hsseg/flatzones.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

namespace hsseg {

LabelMap lambda_flat_zones(const SpectralCube& cube, const Metric& metric,
                           const LambdaParams& params, const EdgeWeights* edges) {
    std::vector<std::size_t> raster(cube.pixel_count());
    std::iota(raster.begin(), raster.end(), std::size_t{0});
    return lambda_flat_zones(cube, metric, params, raster, edges);
}

LabelMap lambda_flat_zones(const SpectralCube& cube, const Metric& metric,
                           const LambdaParams& params, std::span<const std::size_t> scan_order,
                           const EdgeWeights* edges) {
    if (!(params.lambda >= 0.0)) throw UsageError("lambda must be non-negative");
    metric.check_compatible(cube);
    if (edges && edges->connectivity() != params.connectivity) {
        throw UsageError("edge cache connectivity differs from the requested connectivity");
    }

    const std::size_t w = cube.width();
    const std::size_t h = cube.height();
    const std::size_t n = cube.pixel_count();
    if (scan_order.size() != n) throw UsageError("scan order must list every pixel once");
    const EdgeCost cost(cube, metric, edges);

    constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> labels(n, unset);
    std::uint32_t next = 0;
    std::queue<std::size_t> fifo;

    for (const std::size_t start : scan_order) {
        if (start >= n) throw UsageError("scan order holds an out-of-range pixel");
        if (labels[start] != unset) continue;
        labels[start] = next;
        fifo.push(start);
        while (!fifo.empty()) {
            const std::size_t p = fifo.front();
            fifo.pop();
            for_each_neighbor(p, w, h, params.connectivity, [&](std::size_t q, int slot) {
                if (labels[q] != unset) return;
                if (cost(p, q, slot) <= params.lambda) {
                    labels[q] = next;
                    fifo.push(q);
                }
            });
        }
        ++next;
    }
    // A raster scan already yields first-appearance order; other scans need the
    // renumbering.
    return relabel_dense(w, h, std::span<const std::uint32_t>(labels));
}

}  // namespace hsseg
