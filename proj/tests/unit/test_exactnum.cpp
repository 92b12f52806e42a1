#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "dpmpd/exactnum.hpp"
#include "dpmpd/rng.hpp"

using dpmpd::BigInt;
using dpmpd::IntMatrix;
using dpmpd::Rational;

namespace {

// Cofactor-expansion determinant: an independent check against the Bareiss
// elimination used by int_det.
BigInt cofactor_det(const IntMatrix& m) {
    const int n = m.rows;
    if (n == 1) return m.at(0, 0);
    BigInt acc = 0;
    for (int j = 0; j < n; ++j) {
        IntMatrix minor(n - 1, n - 1);
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = m.at(r, c);
            }
        }
        const BigInt term = m.at(0, j) * cofactor_det(minor);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

}  // namespace

TEST_CASE("rational: normalization and arithmetic") {
    Rational a(BigInt(6), BigInt(-4));
    CHECK(a.num == -3);
    CHECK(a.den == 2);
    Rational b = Rational::parse("1/3");
    Rational sum = a + b;
    CHECK(sum == Rational(BigInt(-7), BigInt(6)));
    CHECK((a * b) == Rational(BigInt(-1), BigInt(2)));
    CHECK((a - a) == Rational(0));
    CHECK((b / b) == Rational(1));
    CHECK(Rational::parse("-8/2").str() == "-4");
    CHECK(Rational::parse("2/3").str() == "2/3");
    CHECK(Rational(BigInt(1), BigInt(3)).to_double() == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/2/3"), std::invalid_argument);
}

TEST_CASE("int_det: frozen examples") {
    CHECK(dpmpd::int_det(IntMatrix(2, 2, {1, 1, 1, 0})) == -1);
    CHECK(dpmpd::int_det(IntMatrix(2, 2, {2, 1, 1, 0})) == -1);
    CHECK(dpmpd::int_det(IntMatrix::identity(5)) == 1);
    CHECK(dpmpd::int_det(IntMatrix(3, 3, {0, 1, 0, 1, 0, 0, 0, 0, 1})) == -1);
    CHECK(dpmpd::int_det(IntMatrix(1, 1, {7})) == 7);
    CHECK_THROWS_AS(dpmpd::int_det(IntMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("int_det: agrees with cofactor expansion on random matrices") {
    dpmpd::Rng rng(12345);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform_int(4));
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m.at(i, j) = static_cast<long long>(rng.uniform_int(21)) - 10;
        CHECK(dpmpd::int_det(m) == cofactor_det(m));
    }
}

TEST_CASE("int matrix: product, kronecker, scalar") {
    IntMatrix a(2, 2, {1, 2, 3, 4});
    IntMatrix b(2, 2, {0, 1, 1, 0});
    IntMatrix ab = a * b;
    CHECK(ab == IntMatrix(2, 2, {2, 1, 4, 3}));
    IntMatrix k = dpmpd::int_kronecker(a, IntMatrix::identity(2));
    CHECK(k.rows == 4);
    CHECK(k.at(0, 0) == 1);
    CHECK(k.at(0, 2) == 2);
    CHECK(k.at(3, 3) == 4);
    CHECK(k.at(0, 1) == 0);
    CHECK((BigInt(3) * b) == IntMatrix(2, 2, {0, 3, 3, 0}));
    CHECK((a + b) == IntMatrix(2, 2, {1, 3, 4, 4}));
    CHECK((a - b) == IntMatrix(2, 2, {1, 1, 2, 4}));
    // det(A kron B) = det(A)^m det(B)^n
    CHECK(dpmpd::int_det(dpmpd::int_kronecker(a, b)) ==
          dpmpd::int_det(a) * dpmpd::int_det(a) * dpmpd::int_det(b) * dpmpd::int_det(b));
}

TEST_CASE("floor_kth_root and perfect powers") {
    CHECK(dpmpd::floor_kth_root(BigInt(0), 2) == 0);
    CHECK(dpmpd::floor_kth_root(BigInt(15), 2) == 3);
    CHECK(dpmpd::floor_kth_root(BigInt(16), 2) == 4);
    CHECK(dpmpd::floor_kth_root(BigInt(17), 2) == 4);
    CHECK(dpmpd::floor_kth_root(BigInt("1000000000000000000000000"), 3) == BigInt("100000000"));
    CHECK(dpmpd::is_perfect_kth_power(BigInt(16), 2));
    CHECK_FALSE(dpmpd::is_perfect_kth_power(BigInt(10), 2));
    CHECK(dpmpd::is_perfect_kth_power(BigInt(27), 3));
    CHECK_FALSE(dpmpd::is_perfect_kth_power(BigInt(26), 3));
    CHECK(dpmpd::is_perfect_kth_power(BigInt(1), 17));
    // (2^10)^3 is a perfect cube
    CHECK(dpmpd::is_perfect_kth_power(BigInt(1) << 30, 3));
}

TEST_CASE("root_product_is_irrational: frozen classifications") {
    using V = std::vector<BigInt>;
    using E = std::vector<Rational>;
    const Rational half(BigInt(1), BigInt(2));
    const Rational third(BigInt(1), BigInt(3));

    // sqrt(2) * sqrt(8) = 4: rational
    CHECK_FALSE(dpmpd::root_product_is_irrational(V{2, 8}, E{half, half}));
    // sqrt(2) * sqrt(5) = sqrt(10): irrational
    CHECK(dpmpd::root_product_is_irrational(V{2, 5}, E{half, half}));
    // sqrt(2): irrational; sqrt(4) = 2: rational
    CHECK(dpmpd::root_product_is_irrational(V{2}, E{half}));
    CHECK_FALSE(dpmpd::root_product_is_irrational(V{4}, E{half}));
    // cbrt(2) and cbrt(27) = 3
    CHECK(dpmpd::root_product_is_irrational(V{2}, E{third}));
    CHECK_FALSE(dpmpd::root_product_is_irrational(V{27}, E{third}));
    // sqrt(3) * cbrt(2): L = 6, 3^3 * 2^2 = 108 is not a 6th power
    CHECK(dpmpd::root_product_is_irrational(V{3, 2}, E{half, third}));
    // 2^(1/2) * 2^(3/2) = 4: rational even though each factor is irrational
    CHECK_FALSE(dpmpd::root_product_is_irrational(V{2, 2}, E{half, Rational(BigInt(3), BigInt(2))}));
    // integer exponents only: product is an integer, hence rational
    CHECK_FALSE(dpmpd::root_product_is_irrational(V{2, 3}, E{Rational(2), Rational(1)}));
    // 7^(2/3): 49 is not a cube
    CHECK(dpmpd::root_product_is_irrational(V{7}, E{Rational(BigInt(2), BigInt(3))}));

    CHECK_THROWS_AS(dpmpd::root_product_is_irrational(V{}, E{}), std::invalid_argument);
    CHECK_THROWS_AS(dpmpd::root_product_is_irrational(V{0}, E{half}), std::invalid_argument);
    CHECK_THROWS_AS(dpmpd::root_product_is_irrational(V{2}, E{Rational(-1)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(dpmpd::root_product_is_irrational(V{2, 3}, E{half}), std::invalid_argument);
}

TEST_CASE("root_product_is_irrational: random square products are rational") {
    dpmpd::Rng rng(777);
    const Rational half(BigInt(1), BigInt(2));
    for (int trial = 0; trial < 200; ++trial) {
        // (a*b)^2 split as a^2 * b^2 across two factors: sqrt gives a*b exactly.
        const long long a = 1 + static_cast<long long>(rng.uniform_int(50));
        const long long b = 1 + static_cast<long long>(rng.uniform_int(50));
        CHECK_FALSE(dpmpd::root_product_is_irrational({BigInt(a * a), BigInt(b * b)},
                                                      {half, half}));
    }
}
