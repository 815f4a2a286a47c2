#include <doctest.h>

#include <cmath>
#include <random>

#include "hsseg/metrics.hpp"
#include "oracles.hpp"

using namespace hsseg;

TEST_CASE("chi-squared marginals on the 2x1x2 cube") {
    const SpectralCube c(2, 1, 2, {1, 3, 2, 2});
    const Metric m(c, MetricKind::chi_squared);
    CHECK(m.band_sums() == std::vector<double>{3, 5});
    CHECK(m.pixel_sums() == std::vector<double>{4, 4});
    CHECK(m.grand_total() == 8);

    // Hand evaluation: profiles (1/4, 3/4) and (2/4, 2/4), weights 8/3 and 8/5.
    // 8/3 * (1/16) + 8/5 * (1/16) = 1/6 + 1/10 = 4/15.
    CHECK(m(c, 0, 1) == doctest::Approx(std::sqrt(4.0 / 15.0)).epsilon(1e-15));
    CHECK(m.distance(c, {0, 0}, {1, 0}) == doctest::Approx(0.5163977794943222).epsilon(1e-15));
}

TEST_CASE("euclidean has no marginal context") {
    const SpectralCube c(2, 1, 2, {0, 0, 3, 4});
    const Metric m(c, MetricKind::euclidean);
    CHECK(m.band_sums().empty());
    CHECK(m.pixel_sums().empty());
    CHECK(m(c, 0, 1) == 5.0);
    CHECK(m(c, 1, 1) == 0.0);
}

TEST_CASE("chi-squared rejects degenerate marginals and negative input") {
    SUBCASE("zero pixel") {
        const SpectralCube c(2, 1, 2, {1, 1, 0, 0});
        try {
            Metric m(c, MetricKind::chi_squared);
            FAIL("expected DegenerateMarginal");
        } catch (const DegenerateMarginal& e) {
            CHECK(e.axis() == DegenerateMarginal::Axis::pixel);
            CHECK(e.index() == 1);
        }
    }
    SUBCASE("zero band") {
        const SpectralCube c(2, 1, 2, {1, 0, 2, 0});
        try {
            Metric m(c, MetricKind::chi_squared);
            FAIL("expected DegenerateMarginal");
        } catch (const DegenerateMarginal& e) {
            CHECK(e.axis() == DegenerateMarginal::Axis::band);
            CHECK(e.index() == 1);
        }
    }
    SUBCASE("negative value") {
        const SpectralCube c(1, 1, 2, {1, -1});
        CHECK_THROWS_AS(Metric(c, MetricKind::chi_squared), UsageError);
        CHECK_NOTHROW(Metric(c, MetricKind::euclidean));
    }
}

TEST_CASE("metric kind names") {
    CHECK(parse_metric_kind("euclidean") == MetricKind::euclidean);
    CHECK(parse_metric_kind("chi2") == MetricKind::chi_squared);
    CHECK_THROWS_AS(parse_metric_kind("cosine"), UsageError);
}

TEST_CASE("distance checks bounds and cube shape") {
    const SpectralCube c(2, 1, 1, {0, 1});
    const SpectralCube other(1, 2, 1, {0, 1});
    const Metric m(c, MetricKind::euclidean);
    CHECK_THROWS_AS(m.distance(c, {2, 0}, {0, 0}), UsageError);
    CHECK_THROWS_AS(m.distance(other, {0, 0}, {0, 0}), UsageError);
}

TEST_CASE("metric axioms on random cubes") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> val(0.01, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t bands = 1 + trial % 5;
        std::vector<double> data(3 * bands);
        for (auto& v : data) v = val(rng);
        const SpectralCube c(3, 1, bands, data);
        for (auto kind : {MetricKind::euclidean, MetricKind::chi_squared}) {
            const Metric m(c, kind);
            for (std::size_t a = 0; a < 3; ++a) {
                CHECK(m(c, a, a) == 0.0);
                for (std::size_t b = 0; b < 3; ++b) {
                    CHECK(m(c, a, b) >= 0.0);
                    CHECK(m(c, a, b) == m(c, b, a));
                    for (std::size_t k = 0; k < 3; ++k) {
                        CHECK(m(c, a, b) <= m(c, a, k) + m(c, k, b) + 1e-9);
                    }
                }
            }
        }
    }
}

TEST_CASE("chi-squared vanishes on proportional spectra") {
    // Same profile, different scale: indiscernible for chi-squared.
    const SpectralCube c(3, 1, 3, {1, 2, 3, 2, 4, 6, 3, 1, 1});
    const Metric m(c, MetricKind::chi_squared);
    CHECK(m(c, 0, 1) <= 1e-12);
    CHECK(m(c, 0, 2) > 0.1);
}

TEST_CASE("edge weight cache equals on-demand distances") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = oracle::random_grid(rng, 6, 6, 3, 5, 1);
        const auto cube = oracle::to_cube(g);
        for (auto kind : {MetricKind::euclidean, MetricKind::chi_squared}) {
            const Metric m(cube, kind);
            for (auto conn : {Connectivity::four, Connectivity::eight}) {
                const EdgeWeights cache(cube, m, conn);
                for (std::size_t p = 0; p < cube.pixel_count(); ++p) {
                    for_each_neighbor(p, cube.width(), cube.height(), conn,
                                      [&](std::size_t q, int slot) {
                                          CHECK(cache(p, slot) == m(cube, p, q));
                                      });
                }
            }
        }
    }
}

TEST_CASE("chi-squared equals euclidean distance between scaled profiles") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> val(0.0, 7.0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 4, bands = 2 + trial % 4;
        std::vector<double> data(n * bands);
        for (auto& v : data) v = val(rng) + 0.05;
        const SpectralCube c(n, 1, bands, data);
        const Metric m(c, MetricKind::chi_squared);

        // Re-derive from scratch: r_j(x) = f_j(x) / f_x., scaled by sqrt(N / f_.j).
        std::vector<double> col(bands, 0.0), row(n, 0.0);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < bands; ++j) {
                col[j] += data[i * bands + j];
                row[i] += data[i * bands + j];
                total += data[i * bands + j];
            }
        auto scaled = [&](std::size_t i, std::size_t j) {
            return std::sqrt(total / col[j]) * data[i * bands + j] / row[i];
        };
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                double s = 0.0;
                for (std::size_t j = 0; j < bands; ++j) s += std::pow(scaled(a, j) - scaled(b, j), 2);
                CHECK(std::abs(m(c, a, b) - std::sqrt(s)) <= 1e-9);
            }
    }
}
