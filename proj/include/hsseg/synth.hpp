#pragma once

#include <cstddef>

#include "hsseg/core.hpp"

namespace hsseg {

/// Parameters of the "tooth saw" test cube: band 0 is a triangle wave along x
/// (identical on every row), the remaining bands are constant.
///
/// Each tooth rises by `step` per column for half a tooth and falls back the
/// same way, so every horizontally adjacent pair differs by exactly `step` on
/// band 0. The defaults give a single 0 -> 100 -> 0 tooth over 21 columns.
struct ToothSawSpec {
    std::size_t width = 21;
    std::size_t height = 21;
    std::size_t bands = 4;
    double step = 10.0;
    std::size_t teeth = 1;
    double constant_value = 0.0;
};

/// Throws UsageError unless width - 1 splits into `teeth` even-length teeth
/// and the other dimensions are positive.
SpectralCube tooth_saw_cube(const ToothSawSpec& spec = {});

}  // namespace hsseg
