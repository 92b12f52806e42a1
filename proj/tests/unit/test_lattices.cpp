#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "dpmpd/lattices.hpp"
#include "dpmpd/matcore.hpp"

using dpmpd::GeneratorMatrix;
using dpmpd::LatticeFamily;
using dpmpd::Matrix;

TEST_CASE("family names round-trip") {
    for (auto f : {LatticeFamily::Integer, LatticeFamily::DensestPacking,
                   LatticeFamily::ThinnestCovering, LatticeFamily::Interleaved,
                   LatticeFamily::Rotated})
        CHECK(dpmpd::family_from_name(dpmpd::family_name(f)) == f);
    CHECK(dpmpd::family_name(LatticeFamily::DensestPacking) == "dp");
    CHECK(dpmpd::family_name(LatticeFamily::ThinnestCovering) == "tc");
    CHECK(dpmpd::family_name(LatticeFamily::Integer) == "int");
    CHECK_THROWS_AS(dpmpd::family_from_name("nope"), std::invalid_argument);
}

TEST_CASE("thinnest covering generator: closed form at p = 2") {
    GeneratorMatrix g = dpmpd::generator_thinnest_covering(2);
    // [(3 - sqrt(3)) I - J] / (sqrt(3) - 1) * 3^(-1/4)
    const double s = std::sqrt(3.0);
    const double scale = 1.0 / ((s - 1.0) * std::pow(3.0, 0.25));
    const double diag = (3.0 - s - 1.0) * scale;
    const double off = -1.0 * scale;
    CHECK(g.G(0, 0) == doctest::Approx(diag).epsilon(1e-14));
    CHECK(g.G(1, 1) == doctest::Approx(diag).epsilon(1e-14));
    CHECK(g.G(0, 1) == doctest::Approx(off).epsilon(1e-14));
    CHECK(g.G(1, 0) == doctest::Approx(off).epsilon(1e-14));
    CHECK(g.family == LatticeFamily::ThinnestCovering);
    CHECK(std::abs(g.absdet - 1.0) < 1e-12);
}

TEST_CASE("generators: |det| = 1 across the supported range") {
    for (int p = 2; p <= 22; ++p) {
        GeneratorMatrix g = dpmpd::generator_thinnest_covering(p);
        CHECK(std::abs(std::abs(dpmpd::det(g.G)) - 1.0) < 1e-9);
        CHECK(std::abs(g.absdet - 1.0) < 1e-9);
    }
    for (int p = 2; p <= 8; ++p) {
        GeneratorMatrix g = dpmpd::generator_densest_packing(p);
        CHECK(std::abs(std::abs(dpmpd::det(g.G)) - 1.0) < 1e-9);
        CHECK(std::abs(g.absdet - 1.0) < 1e-9);
    }
    GeneratorMatrix gi = dpmpd::generator_integer(6);
    CHECK(gi.absdet == 1.0);
    CHECK(gi.G(3, 3) == 1.0);
    CHECK(gi.G(3, 4) == 0.0);
    CHECK_THROWS_AS(dpmpd::generator_thinnest_covering(1), std::invalid_argument);
    CHECK_THROWS_AS(dpmpd::generator_thinnest_covering(23), std::invalid_argument);
    CHECK_THROWS_AS(dpmpd::generator_densest_packing(9), std::invalid_argument);
}

TEST_CASE("densest packing generator: block structure") {
    // p in {3,4,5}: rows [1 | I] over 2^(-1/p), last row (2, 0, ..., 0)
    GeneratorMatrix g3 = dpmpd::generator_densest_packing(3);
    const double c3 = std::pow(2.0, -1.0 / 3.0);
    CHECK(g3.G(0, 0) == doctest::Approx(c3));
    CHECK(g3.G(0, 1) == doctest::Approx(c3));
    CHECK(g3.G(0, 2) == 0.0);
    CHECK(g3.G(1, 0) == doctest::Approx(c3));
    CHECK(g3.G(1, 2) == doctest::Approx(c3));
    CHECK(g3.G(2, 0) == doctest::Approx(2.0 * c3));
    CHECK(g3.G(2, 1) == 0.0);

    // p = 2 coincides with the thinnest covering
    GeneratorMatrix g2 = dpmpd::generator_densest_packing(2);
    GeneratorMatrix t2 = dpmpd::generator_thinnest_covering(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(std::abs(std::abs(g2.G(i, j)) - std::abs(t2.G(i, j))) < 1e-12);

    // p in {6,7,8}: last row mixes in sqrt(9 - p); spot-check the corner entry
    GeneratorMatrix g8 = dpmpd::generator_densest_packing(8);
    const double c8 = std::pow(9.0 - 8.0, -1.0 / 16.0);  // = 1
    CHECK(g8.G(7, 7) == doctest::Approx(0.5 * std::sqrt(9.0 - 8.0) * c8));
    CHECK(g8.G(7, 0) == doctest::Approx(0.5 * c8));
}

TEST_CASE("shortest vector length: known lattice minima") {
    // Hexagonal lattice at unit density: (4/3)^(1/4)
    const double hex = std::pow(4.0 / 3.0, 0.25);
    CHECK(dpmpd::shortest_vector_length(dpmpd::generator_densest_packing(2), 3) ==
          doctest::Approx(hex).epsilon(1e-12));
    CHECK(dpmpd::shortest_vector_length(dpmpd::generator_thinnest_covering(2), 3) ==
          doctest::Approx(hex).epsilon(1e-12));
    // Face-centred cubic at unit density: 2^(1/6)
    CHECK(dpmpd::shortest_vector_length(dpmpd::generator_densest_packing(3), 3) ==
          doctest::Approx(std::pow(2.0, 1.0 / 6.0)).epsilon(1e-12));
    // Integer lattice: 1
    CHECK(dpmpd::shortest_vector_length(dpmpd::generator_integer(4), 2) ==
          doctest::Approx(1.0).epsilon(1e-14));
    // Enumeration budget guard
    CHECK_THROWS_AS(dpmpd::shortest_vector_length(dpmpd::generator_integer(8), 50),
                    std::invalid_argument);
}

TEST_CASE("sublattice tests: scaled D4 inside the scaled integer lattice") {
    GeneratorMatrix dp4 = dpmpd::generator_densest_packing(4);
    const double c4 = std::pow(2.0, -0.25);
    GeneratorMatrix zi = dpmpd::generator_integer(4);
    GeneratorMatrix scaled_int = zi;
    scaled_int.G = c4 * zi.G;
    scaled_int.absdet = std::abs(dpmpd::det(scaled_int.G));
    CHECK(dpmpd::is_sublattice(dp4, scaled_int));
    CHECK_FALSE(dpmpd::is_sublattice(scaled_int, dp4));  // index 2, not equal
    CHECK(dpmpd::is_sublattice(dp4, dp4));
}

TEST_CASE("standard interleaved sandwich") {
    // Unscaled D4 rows: between L(2I) and L(I)
    Matrix d4(4, 4, {1, 1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 1, 2, 0, 0, 0});
    GeneratorMatrix g = dpmpd::generator_interleaved(d4);
    CHECK(g.family == LatticeFamily::Interleaved);
    CHECK(g.absdet == doctest::Approx(2.0));
    CHECK(dpmpd::is_standard_interleaved(g));

    GeneratorMatrix gi = dpmpd::generator_integer(3);
    CHECK(dpmpd::is_standard_interleaved(gi));

    // Scaled D4 has non-integer entries: not standard interleaved
    CHECK_FALSE(dpmpd::is_standard_interleaved(dpmpd::generator_densest_packing(4)));

    Matrix halves(2, 2, {0.5, 0, 0, 1});
    CHECK_THROWS_AS(dpmpd::generator_interleaved(halves), std::invalid_argument);
    CHECK_THROWS_AS(dpmpd::generator_interleaved(Matrix(2, 3)), std::invalid_argument);
}

TEST_CASE("rotate: keeps determinant, relabels family, remembers base") {
    GeneratorMatrix dp3 = dpmpd::generator_densest_packing(3);
    Matrix r = dpmpd::givens(3, 0, 2, 0.9);
    GeneratorMatrix rot = dpmpd::rotate(dp3, r);
    CHECK(rot.family == LatticeFamily::Rotated);
    CHECK(rot.base == LatticeFamily::DensestPacking);
    CHECK(std::abs(std::abs(dpmpd::det(rot.G)) - dp3.absdet) < 1e-12);
    GeneratorMatrix rot2 = dpmpd::rotate(rot, r);
    CHECK(rot2.base == LatticeFamily::DensestPacking);
    CHECK_THROWS_AS(dpmpd::rotate(dp3, dpmpd::givens(4, 0, 1, 0.1)), std::invalid_argument);
}
