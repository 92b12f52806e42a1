#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "dpmpd/designgen.hpp"
#include "dpmpd/lattices.hpp"
#include "dpmpd/metrics.hpp"
#include "dpmpd/rng.hpp"
#include "dpmpd/rotations.hpp"

using dpmpd::GeneratorMatrix;
using dpmpd::Matrix;

TEST_CASE("enumerate_points: 3 x 3 grid from the shifted integer lattice") {
    GeneratorMatrix g = dpmpd::generator_integer(2);
    const double h = 1.0 / 3.0;
    std::vector<double> pts = dpmpd::enumerate_points(g, h, {0.1, 0.1});
    REQUIRE(pts.size() == 18);  // 9 points x 2 coordinates
    // Coordinates are (a + 0.1) / 3 for a in {0, 1, 2}
    CHECK(pts[0] == doctest::Approx(0.1 / 3.0).epsilon(1e-15));
    CHECK(pts[1] == doctest::Approx(0.1 / 3.0).epsilon(1e-15));
    CHECK(pts[16] == doctest::Approx(2.1 / 3.0).epsilon(1e-15));
    CHECK(pts[17] == doctest::Approx(2.1 / 3.0).epsilon(1e-15));
    // Lexicographically sorted rows
    for (std::size_t r = 1; r < 9; ++r) {
        const double* prev = &pts[(r - 1) * 2];
        const double* cur = &pts[r * 2];
        CHECK((cur[0] > prev[0] || (cur[0] == prev[0] && cur[1] >= prev[1])));
    }
}

TEST_CASE("enumerate_points: closed cube keeps both boundaries at delta = 0") {
    GeneratorMatrix g = dpmpd::generator_integer(2);
    std::vector<double> pts = dpmpd::enumerate_points(g, 1.0 / 3.0, {0.0, 0.0});
    // a/3 for a in {0,1,2,3}: both 0 and 1 are inside the closed cube
    CHECK(pts.size() == 32);  // 16 points
    CHECK(pts.front() == 0.0);
    CHECK(pts.back() == 1.0);
}

TEST_CASE("enumerate_points: 2 x 2 grid example") {
    GeneratorMatrix g = dpmpd::generator_integer(2);
    std::vector<double> pts = dpmpd::enumerate_points(g, 0.5, {0.25, 0.25});
    REQUIRE(pts.size() == 8);
    CHECK(pts[0] == doctest::Approx(0.125));
    CHECK(pts[7] == doctest::Approx(0.625));
}

TEST_CASE("enumerate_points: lattice-vector shifts of delta leave the point set unchanged") {
    // Adding a row of G to delta relabels the lattice points without moving
    // the set, so the clipped design is identical up to rounding.
    dpmpd::Rng rng(31);
    GeneratorMatrix dp3 = dpmpd::generator_densest_packing(3);
    Matrix r = dpmpd::build_rotation(dpmpd::sample_spec(3, dp3.family, rng));
    GeneratorMatrix g = dpmpd::rotate(dp3, r);
    const double h = std::pow(30.0, -1.0 / 3.0);
    const std::vector<double> delta = {0.37, 0.21, 0.88};
    std::vector<double> base = dpmpd::enumerate_points(g, h, delta);
    REQUIRE(!base.empty());
    for (int row = 0; row < 3; ++row) {
        std::vector<double> shifted_delta = delta;
        for (int j = 0; j < 3; ++j) shifted_delta[j] += g.G(row, j);
        std::vector<double> shifted = dpmpd::enumerate_points(g, h, shifted_delta);
        REQUIRE(shifted.size() == base.size());
        for (std::size_t i = 0; i < base.size(); ++i)
            CHECK(std::abs(shifted[i] - base[i]) < 1e-12);
    }
}

TEST_CASE("count_points: matches enumeration size and honours the early-abort limit") {
    dpmpd::Rng rng(77);
    GeneratorMatrix dp4 = dpmpd::generator_densest_packing(4);
    Matrix r = dpmpd::build_rotation(dpmpd::sample_spec(4, dp4.family, rng));
    GeneratorMatrix g = dpmpd::rotate(dp4, r);
    const double h = std::pow(50.0, -0.25);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> delta = {rng.uniform(), rng.uniform(), rng.uniform(),
                                     rng.uniform()};
        std::vector<double> pts = dpmpd::enumerate_points(g, h, delta);
        const long exact = static_cast<long>(pts.size()) / 4;
        CHECK(dpmpd::count_points(g, h, delta, 1000) == exact);
        CHECK(dpmpd::count_points(g, h, delta, 5) <= 6);
    }
}

TEST_CASE("expected point count is n on average") {
    // E[#points] = volume / (h^p |det G|) = n when h = (n |det G|)^(-1/p).
    dpmpd::Rng rng(123);
    GeneratorMatrix dp3 = dpmpd::generator_densest_packing(3);
    Matrix r = dpmpd::build_rotation(dpmpd::sample_spec(3, dp3.family, rng));
    GeneratorMatrix g = dpmpd::rotate(dp3, r);
    const long n = 40;
    const double h = std::pow(n * g.absdet, -1.0 / 3.0);
    double total = 0.0;
    const int draws = 200;
    for (int i = 0; i < draws; ++i) {
        std::vector<double> u = {rng.uniform(), rng.uniform(), rng.uniform()};
        // delta = u^T G mirrors the perturbation-search distribution
        std::vector<double> delta(3, 0.0);
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) delta[j] += u[k] * g.G(k, j);
        total += static_cast<double>(dpmpd::count_points(g, h, delta, 10 * n));
    }
    const double mean = total / draws;
    CHECK(mean > 0.8 * n);
    CHECK(mean < 1.2 * n);
}

TEST_CASE("find_delta: exact count, distinct points, deterministic in the seed") {
    GeneratorMatrix dp2 = dpmpd::generator_densest_packing(2);
    dpmpd::Rng rng_a(404);
    dpmpd::Rng rng_b(404);
    std::vector<double> da = dpmpd::find_delta(dp2, 25, rng_a);
    std::vector<double> db = dpmpd::find_delta(dp2, 25, rng_b);
    CHECK(da == db);
    const double h = std::pow(25.0 * dp2.absdet, -0.5);
    std::vector<double> pts = dpmpd::enumerate_points(dp2, h, da);
    CHECK(pts.size() == 50);
    for (std::size_t i = 2; i < pts.size(); i += 2) {
        const double dx = pts[i] - pts[i - 2];
        const double dy = pts[i + 1] - pts[i - 1];
        CHECK(dx * dx + dy * dy > 1e-24);
    }
}

TEST_CASE("find_delta: impossible count raises with a diagnostic histogram") {
    // The unrotated 4-dimensional packing can never be clipped to exactly 64
    // points: its projection degeneracies quantize the attainable counts.
    GeneratorMatrix dp4 = dpmpd::generator_densest_packing(4);
    dpmpd::Rng rng(1);
    try {
        dpmpd::find_delta(dp4, 64, rng, 1500);
        FAIL("expected DeltaSearchError");
    } catch (const dpmpd::DeltaSearchError& e) {
        CHECK_FALSE(e.count_histogram.empty());
        CHECK(e.count_histogram.find(64) == e.count_histogram.end());
    }
}

TEST_CASE("generate: records its inputs and produces a sorted exact-size design") {
    dpmpd::Rng rng(9);
    GeneratorMatrix dp3 = dpmpd::generator_densest_packing(3);
    dpmpd::MagicRotationSpec spec = dpmpd::sample_spec(3, dp3.family, rng);
    GeneratorMatrix g = dpmpd::rotate(dp3, dpmpd::build_rotation(spec));
    dpmpd::Design d = dpmpd::generate(g, 60, spec, 2024);
    CHECK(d.n == 60);
    CHECK(d.p == 3);
    CHECK(d.points.size() == 180);
    CHECK(d.seed == 2024);
    CHECK(d.h == doctest::Approx(std::pow(60.0 * g.absdet, -1.0 / 3.0)).epsilon(1e-12));
    CHECK(d.spec.has_value());
    for (double x : d.points) {
        CHECK(x >= 0.0);
        CHECK(x <= 1.0);
    }
    // Separation can never beat the scaled lattice minimum
    const double lattice_min =
        d.h * dpmpd::shortest_vector_length(dpmpd::generator_densest_packing(3), 3);
    CHECK(dpmpd::separation(d.points, d.n, d.p) >= lattice_min - 1e-9);
    // Determinism
    dpmpd::Design d2 = dpmpd::generate(g, 60, spec, 2024);
    CHECK(d.points == d2.points);
    CHECK(d.delta == d2.delta);
}
