#include "hsseg/synth.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace hsseg {

SpectralCube tooth_saw_cube(const ToothSawSpec& spec) {
    if (spec.width < 3 || spec.height == 0 || spec.bands == 0 || spec.teeth == 0) {
        throw UsageError("tooth saw needs width >= 3 and positive height, bands and teeth");
    }
    if ((spec.width - 1) % (2 * spec.teeth) != 0) {
        throw UsageError("tooth saw width " + std::to_string(spec.width) +
                         " does not split into " + std::to_string(spec.teeth) +
                         " symmetric teeth (need (width - 1) divisible by 2 * teeth)");
    }
    if (!std::isfinite(spec.step) || !std::isfinite(spec.constant_value)) {
        throw UsageError("tooth saw step and constant value must be finite");
    }

    const auto half = static_cast<long long>((spec.width - 1) / (2 * spec.teeth));
    std::vector<double> data(spec.width * spec.height * spec.bands, spec.constant_value);
    for (std::size_t y = 0; y < spec.height; ++y) {
        for (std::size_t x = 0; x < spec.width; ++x) {
            const auto phase = static_cast<long long>(x) % (2 * half);
            const auto rise = half - std::llabs(phase - half);
            data[(y * spec.width + x) * spec.bands] = spec.step * static_cast<double>(rise);
        }
    }
    return SpectralCube(spec.width, spec.height, spec.bands, std::move(data));
}

}  // namespace hsseg
