#include "dpmpd/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dpmpd/rotations.hpp"

namespace dpmpd {

BigInt cuberoot3_certificate(const G3Inputs& inp) {
    if (inp.s2 <= 0) throw std::invalid_argument("cuberoot3_certificate: s2 must be positive");
    if (std::gcd(std::abs(inp.s1), inp.s2) != 1)
        throw std::invalid_argument("cuberoot3_certificate: s1 and s2 must be coprime");
    const BigInt a1 = inp.a[0], a2 = inp.a[1], a3 = inp.a[2];
    const BigInt s1 = inp.s1, s2 = inp.s2;
    const BigInt b0 = a2 * (s2 - s1) + a3 * s1;
    const BigInt b1 = a1 * (s2 - s1) - a3 * s2;
    const BigInt b2 = a1 * (s2 - s1);
    return 3 * b0 * b1 * b2 * s1 * s2 - b0 * b0 * b0 * s2 * s2 - b1 * b1 * b1 * s1 * s2 -
           b2 * b2 * b2 * s1 * s1;
}

double brute_force_min_subset_separation(const std::vector<double>& points, long n, int p, int k) {
    if (p > 12) throw std::invalid_argument("brute_force_min_subset_separation: p > 12 guard");
    if (k < 1 || k > p) throw std::invalid_argument("brute_force_min_subset_separation: bad k");
    if (n < 2) throw std::invalid_argument("brute_force_min_subset_separation: need n >= 2");
    if (points.size() != static_cast<std::size_t>(n) * p)
        throw std::invalid_argument("brute_force_min_subset_separation: shape mismatch");

    // All C(p, k) index subsets.
    std::vector<std::vector<int>> subsets;
    std::vector<int> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        subsets.push_back(pick);
        int i = k - 1;
        while (i >= 0 && pick[i] == p - k + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }

    double best = std::numeric_limits<double>::infinity();
    std::vector<double> vals(k);
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j) {
            const double* xi = &points[static_cast<std::size_t>(i) * p];
            const double* xj = &points[static_cast<std::size_t>(j) * p];
            for (const auto& gamma : subsets) {
                for (int t = 0; t < k; ++t) {
                    const double d = xi[gamma[t]] - xj[gamma[t]];
                    vals[t] = d * d;
                }
                // Accumulate in ascending order: the same summation order the
                // production metric uses, so values agree bitwise.
                std::sort(vals.begin(), vals.end());
                double s = 0.0;
                for (int t = 0; t < k; ++t) s += vals[t];
                best = std::min(best, s);
            }
        }
    return std::sqrt(best);
}

std::pair<IntMatrix, IntMatrix> packing2_rank_certificates(long long u1, long long u2,
                                                           long long u3) {
    IntMatrix b1(2, 2,
                 {-3 * u1 + u2 + 2 * u3, 2 * u1 - u3,  //
                  -2 * u2 - u3, -u1 + u2});
    IntMatrix b2(2, 2,
                 {2 * u2 - u3, -u1 - u2,  //
                  -3 * u1 - u2 + 2 * u3, 2 * u1 - u3});
    return {b1, b2};
}

IntMatrix covering4_rank_matrix(const IntMatrix& v1, const IntMatrix& v2) {
    if (v1.rows != 2 || v1.cols != 2 || v2.rows != 2 || v2.cols != 2)
        throw std::invalid_argument("covering4_rank_matrix: inputs must be 2x2");
    IntMatrix v1bar(2, 2);
    v1bar.at(0, 0) = 5 * v1.at(0, 1);
    v1bar.at(0, 1) = v1.at(0, 0);
    v1bar.at(1, 0) = 5 * v1.at(1, 1);
    v1bar.at(1, 1) = v1.at(1, 0);
    IntMatrix j2(2, 2, {1, 1, 1, 1});
    return BigInt(5) * int_kronecker(v2, v1) - int_kronecker(v2, v1bar) -
           int_kronecker(j2 * v2, j2 * v1);
}

IntMatrix covering6_rank_matrix(long long q2, long long u1, long long u2, long long u3) {
    IntMatrix b3(3, 3,
                 {0, 1 - q2, 1 - q2,  //
                  1 - q2, 0, 0,      //
                  q2, -1, 0});
    IntMatrix u(2, 2, {u2, 0, u3, u1});
    IntMatrix ut(2, 2, {u2, 0, 7 * u1, u3});
    IntMatrix j3(3, 3, {1, 1, 1, 1, 1, 1, 1, 1, 1});
    IntMatrix j2(2, 2, {1, 1, 1, 1});
    return BigInt(7) * int_kronecker(b3, u) - int_kronecker(b3, ut) -
           int_kronecker(j3 * b3, j2 * u);
}

namespace {

SelfcheckResult check_cuberoot_certificate(long long a_max) {
    SelfcheckResult res;
    res.name = "cuberoot3_certificate_nonvanishing";
    res.range = "q in {2,3,5}, 0 < max|a_i|, |a_i| <= " + std::to_string(a_max);
    res.pass = true;
    for (long long q : {2LL, 3LL, 5LL}) {
        for (long long a1 = -a_max; a1 <= a_max && res.pass; ++a1)
            for (long long a2 = -a_max; a2 <= a_max && res.pass; ++a2)
                for (long long a3 = -a_max; a3 <= a_max && res.pass; ++a3) {
                    if (a1 == 0 && a2 == 0 && a3 == 0) continue;
                    G3Inputs inp{{a1, a2, a3}, q, 1};
                    if (cuberoot3_certificate(inp) == 0) {
                        res.pass = false;
                        res.counterexample = "q=" + std::to_string(q) + ", a=(" +
                                             std::to_string(a1) + "," + std::to_string(a2) + "," +
                                             std::to_string(a3) + ")";
                    }
                }
        if (!res.pass) break;
    }
    return res;
}

SelfcheckResult check_packing2_equivalence(long long u_max) {
    SelfcheckResult res;
    res.name = "packing2_rank_equivalence";
    res.range = "|u_i| <= " + std::to_string(u_max);
    res.pass = true;
    for (long long u1 = -u_max; u1 <= u_max && res.pass; ++u1)
        for (long long u2 = -u_max; u2 <= u_max && res.pass; ++u2)
            for (long long u3 = -u_max; u3 <= u_max && res.pass; ++u3) {
                const auto [b1, b2] = packing2_rank_certificates(u1, u2, u3);
                const bool full_rank = int_det(b1) != 0 && int_det(b2) != 0;
                const bool condition = u3 * u3 != 3 * u1 * u1 + u2 * u2;
                if (full_rank != condition) {
                    res.pass = false;
                    res.counterexample = "u=(" + std::to_string(u1) + "," + std::to_string(u2) +
                                         "," + std::to_string(u3) + "): rank " +
                                         (full_rank ? "full" : "deficient") + " but condition " +
                                         (condition ? "holds" : "fails");
                }
            }
    return res;
}

SelfcheckResult check_validator_square_screen() {
    SelfcheckResult res;
    res.name = "validator_square_product_screen";
    res.range = "hand-picked q pairs with square / non-square products";
    res.pass = true;

    // Factor pool: one valid V per q.
    auto v_for = [](long long q) -> IntMatrix {
        switch (q) {
            case 2: return IntMatrix(2, 2, {1, 1, 1, 0});
            case 5: return IntMatrix(2, 2, {2, 1, 1, 0});
            case 8: return IntMatrix(2, 2, {2, 1, 2, 0});
            case 10: return IntMatrix(2, 2, {3, 1, 1, 0});
            case 18: return IntMatrix(2, 2, {3, 1, 3, 0});
            case 20: return IntMatrix(2, 2, {4, 1, 2, 0});
            default: throw std::logic_error("no catalogued V for q");
        }
    };
    struct Case {
        long long q1, q2;
        bool expect_valid;
    };
    const Case cases[] = {
        {2, 8, false},   // 2*8 = 16 = 4^2
        {2, 18, false},  // 36 = 6^2
        {5, 20, false},  // 100 = 10^2
        {8, 18, false},  // 144 = 12^2
        {2, 5, true},    {2, 10, true}, {5, 8, true},
    };
    for (const auto& c : cases) {
        TensorPow2Spec spec{{v_for(c.q1), v_for(c.q2)}, {c.q1, c.q2}};
        const bool valid = validate_spec(MagicRotationSpec{spec}, LatticeFamily::Integer).all_pass();
        if (valid != c.expect_valid) {
            res.pass = false;
            res.counterexample = "q=(" + std::to_string(c.q1) + "," + std::to_string(c.q2) +
                                 ") validated as " + (valid ? "valid" : "invalid") + ", expected " +
                                 (c.expect_valid ? "valid" : "invalid");
            break;
        }
    }
    if (res.pass) {
        // A single square q must also be rejected even though V satisfies the
        // quadratic relation.
        TensorPow2Spec sq{{IntMatrix(2, 2, {2, 0, 0, 1})}, {4}};
        if (validate_spec(MagicRotationSpec{sq}, LatticeFamily::Integer).all_pass()) {
            res.pass = false;
            res.counterexample = "q=4 accepted despite being a perfect square";
        }
    }
    return res;
}

}  // namespace

std::vector<SelfcheckResult> run_selfcheck(const SelfcheckRanges& ranges) {
    if (ranges.a_max < 1 || ranges.u_max < 1)
        throw std::invalid_argument("run_selfcheck: ranges must be >= 1");
    std::vector<SelfcheckResult> out;
    out.push_back(check_cuberoot_certificate(ranges.a_max));
    out.push_back(check_packing2_equivalence(ranges.u_max));
    out.push_back(check_validator_square_screen());
    return out;
}

}  // namespace dpmpd
