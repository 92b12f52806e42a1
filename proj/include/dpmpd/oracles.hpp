#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dpmpd/exactnum.hpp"

namespace dpmpd {

// Inputs of the degree-3 integer certificate used for the 3-dimensional
// rotation family: coefficient vector a and the coprime pair (s1, s2) with
// q = s1/s2.
struct G3Inputs {
    std::array<long long, 3> a{0, 0, 0};
    long long s1 = 0;
    long long s2 = 1;
};

// Exact value of the degree-3 certificate polynomial
//   g3(a) = 3 b0 b1 b2 s1 s2 - b0^3 s2^2 - b1^3 s1 s2 - b2^3 s1^2
// with b0 = a2(s2-s1)+a3 s1, b1 = a1(s2-s1)-a3 s2, b2 = a1(s2-s1).
// Nonzero for every nonzero a exactly when q^{1/3} is irrational; backs the
// quasi-Latin-hypercube claim for the 3-dimensional rotation.
// Throws std::invalid_argument unless gcd(|s1|, s2) = 1 and s2 > 0.
BigInt cuberoot3_certificate(const G3Inputs& inp);

// Exhaustive projected-separation oracle: minimum over all point pairs and
// all coordinate subsets of size k of the projected Euclidean distance.
// Guard: p <= 12 (combinatorial blow-up).  Points are row major, n x p.
double brute_force_min_subset_separation(const std::vector<double>& points, long n, int p, int k);

// Rank-certificate matrices for the shifted 2-dimensional rotation over the
// densest packing: both have nonzero determinant exactly when
// u3^2 != 3 u1^2 + u2^2.
std::pair<IntMatrix, IntMatrix> packing2_rank_certificates(long long u1, long long u2,
                                                           long long u3);

// Rank-certificate matrix for the 4-dimensional thinnest covering variant:
// 5 V2 x V1 - V2 x V1' - (J2 V2) x (J2 V1), where V1' reorders and scales the
// columns of V1 and x is the Kronecker product.
IntMatrix covering4_rank_matrix(const IntMatrix& v1, const IntMatrix& v2);

// Rank-certificate matrix for the 6-dimensional thinnest covering variant
// (q1 = 7): 7 B(q2) x U - B(q2) x U' - (J3 B(q2)) x (J2 U) with the 3x3
// integer matrix B(q2) and the triangular 2x2 factors U, U' built from u.
IntMatrix covering6_rank_matrix(long long q2, long long u1, long long u2, long long u3);

// ---------------------------------------------------------------------------
// Selfcheck: executable verification of the exact-arithmetic claims over
// finite ranges.
// ---------------------------------------------------------------------------

struct SelfcheckRanges {
    long long a_max = 4;  // coefficient range for the degree-3 certificate sweep
    long long u_max = 5;  // parameter range for the rank-certificate sweep
};

struct SelfcheckResult {
    std::string name;
    std::string range;
    bool pass = false;
    std::string counterexample;  // empty when pass
};

// Runs all selfcheck suites:
//   - degree-3 certificate nonvanishing for q in {2, 3, 5} over |a_i| <= a_max;
//   - rank-certificate determinants nonzero iff u3^2 != 3u1^2+u2^2 over |u_i| <= u_max;
//   - the spec validator rejects perfect-square q-products and accepts known-good specs.
std::vector<SelfcheckResult> run_selfcheck(const SelfcheckRanges& ranges);

}  // namespace dpmpd
