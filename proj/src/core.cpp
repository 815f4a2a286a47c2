#include "hsseg/core.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

namespace hsseg {

SpectralCube::SpectralCube(std::size_t width, std::size_t height, std::size_t bands,
                           std::vector<double> data)
    : width_(width), height_(height), bands_(bands), data_(std::move(data)) {
    if (width == 0 || height == 0 || bands == 0) {
        throw UsageError("spectral cube dimensions must be positive");
    }
    if (data_.size() != width * height * bands) {
        throw UsageError("spectral cube data holds " + std::to_string(data_.size()) +
                         " values, expected " + std::to_string(width * height * bands));
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (!std::isfinite(data_[i])) {
            throw UsageError("non-finite spectral value at pixel " +
                             std::to_string(i / bands) + ", band " +
                             std::to_string(i % bands));
        }
    }
}

std::vector<PixelIndex> neighbors(PixelIndex p, Connectivity conn, std::size_t width,
                                  std::size_t height) {
    if (p.x >= width || p.y >= height) {
        throw UsageError("pixel (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                         ") is outside the " + std::to_string(width) + "x" +
                         std::to_string(height) + " grid");
    }
    std::vector<PixelIndex> out;
    out.reserve(static_cast<std::size_t>(conn));
    for_each_neighbor(p.flat(width), width, height, conn, [&](std::size_t q, int) {
        out.push_back(PixelIndex::from_flat(q, width));
    });
    return out;
}

std::vector<std::size_t> LabelMap::sizes() const {
    std::vector<std::size_t> out(count_, 0);
    for (auto l : labels_) ++out[l];
    return out;
}

std::vector<std::vector<std::size_t>> LabelMap::classes() const {
    std::vector<std::vector<std::size_t>> out(count_);
    const auto sz = sizes();
    for (std::size_t l = 0; l < count_; ++l) out[l].reserve(sz[l]);
    for (std::size_t i = 0; i < labels_.size(); ++i) out[labels_[i]].push_back(i);
    return out;
}

LabelMap relabel_dense(std::size_t width, std::size_t height,
                       std::span<const std::uint64_t> raw) {
    if (raw.size() != width * height) {
        throw UsageError("provisional label map does not cover the grid");
    }
    LabelMap m;
    m.width_ = width;
    m.height_ = height;
    m.labels_.resize(raw.size());
    std::unordered_map<std::uint64_t, std::uint32_t> remap;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto [it, inserted] =
            remap.try_emplace(raw[i], static_cast<std::uint32_t>(remap.size()));
        m.labels_[i] = it->second;
    }
    m.count_ = remap.size();
    return m;
}

LabelMap relabel_dense(std::size_t width, std::size_t height,
                       std::span<const std::uint32_t> raw) {
    std::vector<std::uint64_t> wide(raw.begin(), raw.end());
    return relabel_dense(width, height, wide);
}

bool is_refinement(const LabelMap& fine, const LabelMap& coarse) {
    if (fine.width() != coarse.width() || fine.height() != coarse.height()) {
        throw UsageError("is_refinement: label maps differ in size");
    }
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> parent(fine.count(), unset);
    for (std::size_t i = 0; i < fine.pixel_count(); ++i) {
        auto& p = parent[fine[i]];
        if (p == unset) {
            p = coarse[i];
        } else if (p != coarse[i]) {
            return false;
        }
    }
    return true;
}

std::vector<std::size_t> class_component_counts(const LabelMap& labels, Connectivity conn) {
    const std::size_t n = labels.pixel_count();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (std::size_t p = 0; p < n; ++p) {
        for_each_neighbor(p, labels.width(), labels.height(), conn, [&](std::size_t q, int) {
            if (q > p && labels[q] == labels[p]) {
                const auto a = find(p);
                const auto b = find(q);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        });
    }
    std::vector<std::size_t> counts(labels.count(), 0);
    for (std::size_t p = 0; p < n; ++p) {
        if (find(p) == p) ++counts[labels[p]];
    }
    return counts;
}

bool classes_connected(const LabelMap& labels, Connectivity conn) {
    for (auto c : class_component_counts(labels, conn)) {
        if (c != 1) return false;
    }
    return true;
}

}  // namespace hsseg
