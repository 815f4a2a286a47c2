// Brute-force reference implementations used only by the tests. Nothing here
// calls into the library's algorithms; they work on raw spectra and their own
// adjacency so they can check the library independently.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "hsseg/core.hpp"

namespace oracle {

struct Grid {
    std::size_t w = 0;
    std::size_t h = 0;
    std::size_t bands = 0;
    std::vector<double> data;

    std::size_t n() const { return w * h; }
    double v(std::size_t p, std::size_t j) const { return data[p * bands + j]; }
};

inline Grid from_cube(const hsseg::SpectralCube& c) {
    return {c.width(), c.height(), c.bands(), {c.data().begin(), c.data().end()}};
}

inline hsseg::SpectralCube to_cube(const Grid& g) {
    return hsseg::SpectralCube(g.w, g.h, g.bands, g.data);
}

/// Random cube with small integer levels so equal spectra and exact ties occur.
inline Grid random_grid(std::mt19937_64& rng, std::size_t max_w, std::size_t max_h,
                        std::size_t max_bands, int levels = 4, int offset = 0) {
    std::uniform_int_distribution<std::size_t> dw(1, max_w), dh(1, max_h), db(1, max_bands);
    std::uniform_int_distribution<int> dv(0, levels - 1);
    Grid g;
    g.w = dw(rng);
    g.h = dh(rng);
    g.bands = db(rng);
    g.data.resize(g.n() * g.bands);
    for (auto& x : g.data) x = static_cast<double>(dv(rng) + offset);
    return g;
}

enum class Kind { euclidean, chi2 };

/// Term-by-term spectral distance with marginals recomputed from scratch.
class Distance {
public:
    Distance(const Grid& g, Kind k) : g_(g), k_(k) {
        if (k_ != Kind::chi2) return;
        band_.assign(g.bands, 0.0);
        pix_.assign(g.n(), 0.0);
        total_ = 0.0;
        for (std::size_t i = 0; i < g.n(); ++i) {
            for (std::size_t j = 0; j < g.bands; ++j) {
                band_[j] += g.v(i, j);
                pix_[i] += g.v(i, j);
            }
        }
        for (double b : band_) total_ += b;
    }

    double operator()(std::size_t a, std::size_t b) const {
        double s = 0.0;
        for (std::size_t j = 0; j < g_.bands; ++j) {
            if (k_ == Kind::euclidean) {
                const double diff = g_.v(a, j) - g_.v(b, j);
                s += diff * diff;
            } else {
                const double diff = g_.v(a, j) / pix_[a] - g_.v(b, j) / pix_[b];
                s += (total_ / band_[j]) * diff * diff;
            }
        }
        return std::sqrt(s);
    }

private:
    const Grid& g_;
    Kind k_;
    std::vector<double> band_, pix_;
    double total_ = 0.0;
};

inline bool adjacent(const Grid& g, std::size_t a, std::size_t b, int conn) {
    const long ax = static_cast<long>(a % g.w), ay = static_cast<long>(a / g.w);
    const long bx = static_cast<long>(b % g.w), by = static_cast<long>(b / g.w);
    const long dx = std::labs(ax - bx), dy = std::labs(ay - by);
    if (a == b) return false;
    return conn == 4 ? dx + dy == 1 : std::max(dx, dy) == 1;
}

inline std::vector<std::vector<std::size_t>> adjacency(const Grid& g, int conn) {
    std::vector<std::vector<std::size_t>> adj(g.n());
    for (std::size_t a = 0; a < g.n(); ++a)
        for (std::size_t b = 0; b < g.n(); ++b)
            if (adjacent(g, a, b, conn)) adj[a].push_back(b);
    return adj;
}

/// First-appearance renumbering.
inline std::vector<std::uint32_t> canonical(const std::vector<std::size_t>& raw) {
    std::map<std::size_t, std::uint32_t> m;
    std::vector<std::uint32_t> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto it = m.find(raw[i]);
        if (it == m.end()) it = m.emplace(raw[i], static_cast<std::uint32_t>(m.size())).first;
        out[i] = it->second;
    }
    return out;
}

inline std::vector<std::uint32_t> labels_of(const hsseg::LabelMap& m) {
    return {m.labels().begin(), m.labels().end()};
}

/// Threshold every adjacency edge at lambda, then union-find closure.
inline std::vector<std::uint32_t> flat_zones(const Grid& g, Kind k, double lambda, int conn) {
    Distance d(g, k);
    std::vector<std::size_t> parent(g.n());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (std::size_t a = 0; a < g.n(); ++a)
        for (std::size_t b = a + 1; b < g.n(); ++b)
            if (adjacent(g, a, b, conn) && d(a, b) <= lambda) parent[find(a)] = find(b);
    std::vector<std::size_t> root(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) root[i] = find(i);
    return canonical(root);
}

/// Naive double loop: cumdist(p) = sum over all members x of d(p, x).
inline std::vector<double> cumdists(const Distance& d, const std::vector<std::size_t>& region) {
    std::vector<std::size_t> sorted = region;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> out;
    for (auto p : region) {
        double s = 0.0;
        for (auto x : sorted) s += d(p, x);
        out.push_back(s);
    }
    return out;
}

/// Seed order of a region: argmin (or argmax) first, ties to lower raster index.
inline std::vector<std::size_t> seed_order(const Distance& d, std::vector<std::size_t> region,
                                           bool antimedian) {
    std::sort(region.begin(), region.end());
    const auto cd = cumdists(d, region);
    std::vector<std::size_t> idx(region.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return antimedian ? cd[a] > cd[b] : cd[a] < cd[b];
    });
    std::vector<std::size_t> out;
    for (auto i : idx) out.push_back(region[i]);
    return out;
}

inline std::vector<std::vector<std::size_t>> classes_of(const std::vector<std::uint32_t>& lab) {
    const auto count = lab.empty() ? 0 : *std::max_element(lab.begin(), lab.end()) + 1;
    std::vector<std::vector<std::size_t>> out(count);
    for (std::size_t i = 0; i < lab.size(); ++i) out[lab[i]].push_back(i);
    return out;
}

struct Refined {
    std::vector<std::uint32_t> labels;  // canonical
    std::vector<std::size_t> seeds;     // by canonical label
};

inline Refined finish(const std::vector<std::size_t>& raw, const std::vector<std::size_t>& seeds) {
    Refined r;
    r.labels = canonical(raw);
    r.seeds.resize(seeds.size());
    for (auto s : seeds) r.seeds[r.labels[s]] = s;
    return r;
}

/// Eta-bounded regions straight from the definition: the region of a seed is
/// the connected component, containing the seed, of the unassigned class pixels
/// within eta of the seed. Grown by repeated full scans until nothing changes.
inline Refined eta_regions(const Grid& g, Kind k, const std::vector<std::uint32_t>& flat,
                           double eta, int conn, bool antimedian) {
    Distance d(g, k);
    std::vector<std::size_t> raw(g.n(), 0);
    std::vector<bool> assigned(g.n(), false);
    std::vector<std::size_t> seeds;
    for (const auto& cls : classes_of(flat)) {
        for (auto seed : seed_order(d, cls, antimedian)) {
            if (assigned[seed]) continue;
            const std::size_t label = seeds.size();
            seeds.push_back(seed);
            std::vector<bool> in(g.n(), false);
            in[seed] = true;
            for (bool changed = true; changed;) {
                changed = false;
                for (auto q : cls) {
                    if (in[q] || assigned[q] || d(seed, q) > eta) continue;
                    for (auto r : cls) {
                        if (in[r] && adjacent(g, q, r, conn)) {
                            in[q] = true;
                            changed = true;
                            break;
                        }
                    }
                }
            }
            for (auto q : cls) {
                if (in[q]) {
                    assigned[q] = true;
                    raw[q] = label;
                }
            }
        }
    }
    return finish(raw, seeds);
}

/// Bellman-Ford distances from `seed` over the pixels flagged in `domain`.
inline std::vector<double> bellman_ford(const Grid& g, const Distance& d,
                                        const std::vector<bool>& domain, std::size_t seed,
                                        int conn) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(g.n(), inf);
    dist[seed] = 0.0;
    const auto adj = adjacency(g, conn);
    for (std::size_t round = 0; round < g.n(); ++round) {
        bool changed = false;
        for (std::size_t a = 0; a < g.n(); ++a) {
            if (!domain[a] || dist[a] == inf) continue;
            for (auto b : adj[a]) {
                if (!domain[b]) continue;
                const double nd = dist[a] + d(a, b);
                if (nd < dist[b]) {
                    dist[b] = nd;
                    changed = true;
                }
            }
        }
        if (!changed) break;
    }
    return dist;
}

/// Mu-geodesic balls with the same seed discipline, balls restricted to the
/// unassigned remainder of the class.
inline Refined mu_balls(const Grid& g, Kind k, const std::vector<std::uint32_t>& flat, double mu,
                        int conn, bool antimedian) {
    Distance d(g, k);
    std::vector<std::size_t> raw(g.n(), 0);
    std::vector<bool> assigned(g.n(), false);
    std::vector<std::size_t> seeds;
    for (const auto& cls : classes_of(flat)) {
        for (auto seed : seed_order(d, cls, antimedian)) {
            if (assigned[seed]) continue;
            const std::size_t label = seeds.size();
            seeds.push_back(seed);
            std::vector<bool> domain(g.n(), false);
            for (auto q : cls) domain[q] = !assigned[q];
            const auto dist = bellman_ford(g, d, domain, seed, conn);
            for (auto q : cls) {
                if (domain[q] && dist[q] <= mu) {
                    assigned[q] = true;
                    raw[q] = label;
                }
            }
        }
    }
    return finish(raw, seeds);
}

/// Number of connected components of each class, by repeated relaxation.
inline std::vector<std::size_t> component_counts(const Grid& g,
                                                 const std::vector<std::uint32_t>& lab, int conn) {
    std::vector<std::size_t> comp(g.n());
    std::iota(comp.begin(), comp.end(), std::size_t{0});
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t a = 0; a < g.n(); ++a)
            for (std::size_t b = 0; b < g.n(); ++b)
                if (lab[a] == lab[b] && adjacent(g, a, b, conn) && comp[b] < comp[a]) {
                    comp[a] = comp[b];
                    changed = true;
                }
    }
    const auto count = *std::max_element(lab.begin(), lab.end()) + 1;
    std::vector<std::size_t> out(count, 0);
    for (std::size_t a = 0; a < g.n(); ++a)
        if (comp[a] == a) ++out[lab[a]];
    return out;
}

}  // namespace oracle
