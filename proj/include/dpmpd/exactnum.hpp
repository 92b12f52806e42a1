#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace dpmpd {

// Arbitrary-precision signed integer.  All exact-arithmetic certificates in
// the library flow through this type so intermediate products cannot
// overflow.
using BigInt = boost::multiprecision::cpp_int;

// Exact rational number, always stored in lowest terms with a positive
// denominator.
struct Rational {
    BigInt num{0};
    BigInt den{1};

    Rational() = default;
    Rational(BigInt n, BigInt d);
    Rational(long long n) : Rational(BigInt(n), BigInt(1)) {}

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }

    bool is_integer() const { return den == 1; }
    double to_double() const;
    std::string str() const;

    // Parses "a" or "a/b"; throws std::invalid_argument on malformed input or
    // a zero denominator.
    static Rational parse(const std::string& text);

  private:
    void normalize();
};

// Dense matrix of arbitrary-precision integers, row major.
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<BigInt> data;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}
    IntMatrix(int r, int c, std::vector<long long> entries);

    BigInt& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
    const BigInt& at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }

    static IntMatrix identity(int n);

    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix operator*(const IntMatrix& o) const;  // matrix product
    friend IntMatrix operator*(const BigInt& s, const IntMatrix& m);
    bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && data == o.data; }
};

// Kronecker product of integer matrices.
IntMatrix int_kronecker(const IntMatrix& a, const IntMatrix& b);

// Exact determinant via fraction-free (Bareiss) elimination.  Throws
// std::invalid_argument for non-square input.
BigInt int_det(const IntMatrix& m);

// Largest integer r with r^k <= m.  Requires m >= 0 and k >= 1.
BigInt floor_kth_root(const BigInt& m, unsigned k);

// True iff m is a perfect k-th power.  Requires m >= 1 and k >= 1.
bool is_perfect_kth_power(const BigInt& m, unsigned k);

// Decides whether the product  prod_i  base_i ^ exp_i  (bases positive
// integers, exponents positive rationals) is irrational.  The product is
// rational exactly when, after clearing denominators through the lcm L of the
// exponent denominators, the combined integer  prod_i base_i^(L * exp_i)  is a
// perfect L-th power.
bool root_product_is_irrational(const std::vector<BigInt>& bases,
                                const std::vector<Rational>& exponents);

}  // namespace dpmpd
