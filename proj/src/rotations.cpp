#include "dpmpd/rotations.hpp"

#include <cmath>
#include <optional>

#include "dpmpd/oracles.hpp"

namespace dpmpd {

bool ConditionReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.holds) return false;
    return true;
}

std::string ConditionReport::failed_names() const {
    std::string out;
    for (const auto& c : checks) {
        if (c.holds) continue;
        if (!out.empty()) out += ", ";
        out += c.name;
    }
    return out;
}

int spec_dimension(const MagicRotationSpec& spec) {
    return std::visit(
        [](const auto& s) -> int {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TensorPow2Spec>)
                return s.p();
            else if constexpr (std::is_same_v<T, Tc4Spec>)
                return 4;
            else if constexpr (std::is_same_v<T, Dp2Spec>)
                return 2;
            else if constexpr (std::is_same_v<T, R3Spec>)
                return 3;
            else if constexpr (std::is_same_v<T, Dim6Spec>)
                return 6;
            else
                return s.p;
        },
        spec);
}

std::string spec_variant_name(const MagicRotationSpec& spec) {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TensorPow2Spec>)
                return "tensor_pow2";
            else if constexpr (std::is_same_v<T, Tc4Spec>)
                return "tc4";
            else if constexpr (std::is_same_v<T, Dp2Spec>)
                return "dp2";
            else if constexpr (std::is_same_v<T, R3Spec>)
                return "r3";
            else if constexpr (std::is_same_v<T, Dim6Spec>)
                return "dim6";
            else {
                (void)s;
                return "random_givens";
            }
        },
        spec);
}

namespace {

void add_check(ConditionReport& rep, std::string name, bool holds, std::string detail) {
    rep.checks.push_back(ConditionCheck{std::move(name), holds, std::move(detail)});
}

void require_2x2(const IntMatrix& v, const char* what) {
    if (v.rows != 2 || v.cols != 2)
        throw std::invalid_argument(std::string(what) + ": matrix must be 2x2");
}

bool natural_entries(const IntMatrix& v) {
    for (const auto& e : v.data)
        if (e < 0) return false;
    return true;
}

// Exact relation v11^2 + v21^2 = q (v12^2 + v22^2).
bool quadratic_relation_holds(const IntMatrix& v, long long q) {
    const BigInt lhs = v.at(0, 0) * v.at(0, 0) + v.at(1, 0) * v.at(1, 0);
    const BigInt rhs = BigInt(q) * (v.at(0, 1) * v.at(0, 1) + v.at(1, 1) * v.at(1, 1));
    return lhs == rhs;
}

bool sqrt_irrational(long long q) { return q >= 1 && !is_perfect_kth_power(BigInt(q), 2); }

// q = a/b in lowest terms has a rational cube root iff a and b are both cubes.
bool cuberoot_irrational(const Rational& q) {
    if (q.num <= 0) return false;
    return !(is_perfect_kth_power(q.num, 3) && is_perfect_kth_power(q.den, 3));
}

std::string matrix2_str(const IntMatrix& v) {
    return "[[" + v.at(0, 0).str() + "," + v.at(0, 1).str() + "],[" + v.at(1, 0).str() + "," +
           v.at(1, 1).str() + "]]";
}

void check_plane_factor(ConditionReport& rep, const IntMatrix& v, long long q,
                        const std::string& suffix) {
    add_check(rep, "v_full_rank" + suffix, int_det(v) != 0, "V = " + matrix2_str(v));
    add_check(rep, "v_entries_natural" + suffix, natural_entries(v),
              "entries must be nonnegative integers");
    add_check(rep, "q_positive" + suffix, q >= 1, "q = " + std::to_string(q));
    add_check(rep, "quadratic_relation" + suffix, q >= 1 && quadratic_relation_holds(v, q),
              "needs v11^2 + v21^2 = q (v12^2 + v22^2) with q = " + std::to_string(q));
}

// Adds a condition stating that prod_i bases_i^(exp_i) is irrational.
void check_root_product(ConditionReport& rep, std::string name, std::vector<long long> bases,
                        std::vector<Rational> exps, std::string detail) {
    bool all_positive = true;
    for (long long b : bases)
        if (b < 1) all_positive = false;
    bool holds = false;
    if (all_positive) {
        std::vector<BigInt> big;
        big.reserve(bases.size());
        for (long long b : bases) big.emplace_back(b);
        holds = root_product_is_irrational(big, exps);
    }
    add_check(rep, std::move(name), holds, std::move(detail));
}

ConditionReport validate_tensor(const TensorPow2Spec& spec, LatticeFamily base) {
    const int z = spec.z();
    if (z < 1) throw std::invalid_argument("TensorPow2Spec: needs at least one factor");
    if (spec.q.size() != spec.v.size())
        throw std::invalid_argument("TensorPow2Spec: V and q counts differ");
    for (const auto& v : spec.v) require_2x2(v, "TensorPow2Spec");

    ConditionReport rep;
    for (int l = 0; l < z; ++l)
        check_plane_factor(rep, spec.v[l], spec.q[l], "(" + std::to_string(l + 1) + ")");
    // Every nonempty subset product prod q_l^{1/2} must be irrational.
    const Rational half(BigInt(1), BigInt(2));
    for (unsigned mask = 1; mask < (1u << z); ++mask) {
        std::vector<long long> bases;
        std::vector<Rational> exps;
        std::string which;
        for (int l = 0; l < z; ++l)
            if (mask & (1u << l)) {
                bases.push_back(spec.q[l]);
                exps.push_back(half);
                if (!which.empty()) which += ",";
                which += std::to_string(l + 1);
            }
        check_root_product(rep, "subset_product_irrational(" + which + ")", bases, exps,
                           "square root of the q-product over factors {" + which + "}");
    }
    bool covered = false;
    std::string why;
    switch (base) {
        case LatticeFamily::Integer:
        case LatticeFamily::Interleaved:
            covered = true;
            why = "power-of-two tensor rotations cover this family in any 2^z dimension";
            break;
        case LatticeFamily::DensestPacking:
            covered = (spec.p() == 4 || spec.p() == 8);
            why = "densest packing covered for p in {4, 8}; spec has p = " + std::to_string(spec.p());
            break;
        case LatticeFamily::ThinnestCovering:
            covered = (spec.p() == 8);
            why = "thinnest covering covered for p = 8 only; spec has p = " + std::to_string(spec.p());
            break;
        case LatticeFamily::Rotated:
            covered = false;
            why = "rotated is not a base family";
            break;
    }
    add_check(rep, "base_covered", covered, why);
    return rep;
}

ConditionReport validate_tc4(const Tc4Spec& spec, LatticeFamily base) {
    require_2x2(spec.v1, "Tc4Spec");
    require_2x2(spec.v2, "Tc4Spec");
    ConditionReport rep;
    check_plane_factor(rep, spec.v1, 5, "(1)");
    check_plane_factor(rep, spec.v2, spec.q2, "(2)");
    check_root_product(rep, "q2_sqrt_irrational", {spec.q2}, {Rational(BigInt(1), BigInt(2))},
                       "q2 = " + std::to_string(spec.q2) + " must not be a perfect square");
    check_root_product(rep, "q2_times_5_sqrt_irrational", {5 * spec.q2},
                       {Rational(BigInt(1), BigInt(2))},
                       "5*q2 = " + std::to_string(5 * spec.q2) + " must not be a perfect square");
    BigInt certdet = 0;
    bool cert_ok = false;
    if (spec.v1.rows == 2 && spec.v2.rows == 2) {
        certdet = int_det(covering4_rank_matrix(spec.v1, spec.v2));
        cert_ok = certdet != 0;
    }
    add_check(rep, "rank_certificate_full_rank", cert_ok,
              "4-dimensional covering certificate determinant = " + certdet.str());
    add_check(rep, "base_covered", base == LatticeFamily::ThinnestCovering,
              "this variant applies to the 4-dimensional thinnest covering only");
    return rep;
}

ConditionReport validate_dp2(const Dp2Spec& spec, LatticeFamily base) {
    ConditionReport rep;
    add_check(rep, "parameters_nonzero", spec.u1 != 0 || spec.u2 != 0 || spec.u3 != 0,
              "(u1, u2, u3) must not all vanish");
    const BigInt lhs = BigInt(spec.u3) * spec.u3;
    const BigInt rhs = BigInt(3) * spec.u1 * spec.u1 + BigInt(spec.u2) * spec.u2;
    add_check(rep, "certificate_nonzero", lhs != rhs,
              "u3^2 = " + lhs.str() + " must differ from 3 u1^2 + u2^2 = " + rhs.str());
    const bool covered =
        base == LatticeFamily::DensestPacking || base == LatticeFamily::ThinnestCovering;
    add_check(rep, "base_covered", covered,
              "this variant applies to the 2-dimensional packing (= 2-dimensional covering)");
    return rep;
}

ConditionReport validate_r3(const R3Spec& spec, LatticeFamily base) {
    ConditionReport rep;
    add_check(rep, "q_positive", spec.q.num > 0, "q = " + spec.q.str());
    add_check(rep, "q_not_one", !(spec.q.num == 1 && spec.q.den == 1), "q = 1 degenerates the matrix");
    add_check(rep, "q_cuberoot_irrational", cuberoot_irrational(spec.q),
              "cube root of q = " + spec.q.str() + " must be irrational");
    const bool covered = base != LatticeFamily::Rotated;
    add_check(rep, "base_covered", covered,
              "3-dimensional rotations cover the integer lattice, packing, covering, and "
              "interleaved lattices");
    return rep;
}

ConditionReport validate_dim6(const Dim6Spec& spec, LatticeFamily base) {
    ConditionReport rep;
    long long q1 = 0;
    const bool shift_form = std::holds_alternative<Dim6ShiftInner>(spec.inner);
    if (shift_form) {
        const auto& in = std::get<Dim6ShiftInner>(spec.inner);
        q1 = in.q1;
        add_check(rep, "q1_positive", q1 >= 1, "q1 = " + std::to_string(q1));
        add_check(rep, "u1_nonzero", in.u1 != 0, "u1 = " + std::to_string(in.u1));
        add_check(rep, "u2_nonzero", in.u2 != 0, "u2 = " + std::to_string(in.u2));
    } else {
        const auto& in = std::get<Dim6R2Inner>(spec.inner);
        require_2x2(in.v, "Dim6Spec");
        q1 = in.q1;
        check_plane_factor(rep, in.v, q1, "");
    }
    add_check(rep, "q2_positive", spec.q2 >= 1, "q2 = " + std::to_string(spec.q2));

    const Rational half(BigInt(1), BigInt(2));
    const Rational third(BigInt(1), BigInt(3));
    const Rational two_thirds(BigInt(2), BigInt(3));
    check_root_product(rep, "q1_sqrt_irrational", {q1}, {half},
                       "q1^(1/2) with q1 = " + std::to_string(q1));
    check_root_product(rep, "q2_cuberoot_irrational", {spec.q2}, {third},
                       "q2^(1/3) with q2 = " + std::to_string(spec.q2));
    check_root_product(rep, "q1_sqrt_q2_cuberoot_irrational", {q1, spec.q2}, {half, third},
                       "q1^(1/2) q2^(1/3)");
    check_root_product(rep, "q2_cuberoot_squared_irrational", {spec.q2}, {two_thirds},
                       "q2^(2/3) with q2 = " + std::to_string(spec.q2));
    check_root_product(rep, "q1_sqrt_q2_cuberoot_squared_irrational", {q1, spec.q2},
                       {half, two_thirds}, "q1^(1/2) q2^(2/3)");

    switch (base) {
        case LatticeFamily::Integer:
        case LatticeFamily::Interleaved:
            add_check(rep, "base_covered", true,
                      "either inner form covers the integer and interleaved lattices");
            break;
        case LatticeFamily::DensestPacking: {
            add_check(rep, "base_requires_shift_form", shift_form,
                      "the 6-dimensional packing requires the shifted inner form");
            if (shift_form) {
                const auto& in = std::get<Dim6ShiftInner>(spec.inner);
                add_check(rep, "q1_pinned_to_3", q1 == 3, "packing needs q1 = 3");
                add_check(rep, "u3_nonzero", in.u3 != 0, "packing needs u3 != 0");
            }
            break;
        }
        case LatticeFamily::ThinnestCovering: {
            add_check(rep, "base_requires_shift_form", shift_form,
                      "the 6-dimensional covering requires the shifted inner form");
            if (shift_form) {
                const auto& in = std::get<Dim6ShiftInner>(spec.inner);
                add_check(rep, "q1_pinned_to_7", q1 == 7, "covering needs q1 = 7");
                BigInt certdet = 0;
                if (spec.q2 >= 1)
                    certdet = int_det(covering6_rank_matrix(spec.q2, in.u1, in.u2, in.u3));
                add_check(rep, "rank_certificate_full_rank", certdet != 0,
                          "6-dimensional covering certificate determinant = " + certdet.str());
            }
            break;
        }
        case LatticeFamily::Rotated:
            add_check(rep, "base_covered", false, "rotated is not a base family");
            break;
    }
    return rep;
}

ConditionReport validate_givens(const RandomGivensSpec& spec, LatticeFamily /*base*/) {
    ConditionReport rep;
    add_check(rep, "dimension_positive", spec.p >= 2, "p = " + std::to_string(spec.p));
    const std::size_t expected =
        spec.p >= 2 ? static_cast<std::size_t>(spec.p) * (spec.p - 1) / 2 : 0;
    add_check(rep, "angle_count", spec.angles.size() == expected,
              "need p(p-1)/2 = " + std::to_string(expected) + " angles, got " +
                  std::to_string(spec.angles.size()));
    bool finite = true;
    for (double a : spec.angles)
        if (!std::isfinite(a)) finite = false;
    add_check(rep, "angles_finite", finite, "all angles must be finite reals");
    return rep;
}

}  // namespace

LatticeFamily spec_home_family(const MagicRotationSpec& spec) {
    if (std::holds_alternative<Tc4Spec>(spec)) return LatticeFamily::ThinnestCovering;
    if (std::holds_alternative<Dp2Spec>(spec)) return LatticeFamily::DensestPacking;
    return LatticeFamily::Integer;
}

ConditionReport validate_spec(const MagicRotationSpec& spec, LatticeFamily base) {
    return std::visit(
        [base](const auto& s) -> ConditionReport {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TensorPow2Spec>)
                return validate_tensor(s, base);
            else if constexpr (std::is_same_v<T, Tc4Spec>)
                return validate_tc4(s, base);
            else if constexpr (std::is_same_v<T, Dp2Spec>)
                return validate_dp2(s, base);
            else if constexpr (std::is_same_v<T, R3Spec>)
                return validate_r3(s, base);
            else if constexpr (std::is_same_v<T, Dim6Spec>)
                return validate_dim6(s, base);
            else
                return validate_givens(s, base);
        },
        spec);
}

Matrix rotation_2d(const IntMatrix& v, long long q) {
    require_2x2(v, "rotation_2d");
    ConditionReport rep;
    add_check(rep, "v_full_rank", int_det(v) != 0, "V = " + matrix2_str(v));
    add_check(rep, "q_positive", q >= 1, "q = " + std::to_string(q));
    add_check(rep, "quadratic_relation", q >= 1 && quadratic_relation_holds(v, q),
              "needs v11^2 + v21^2 = q (v12^2 + v22^2)");
    if (!rep.all_pass())
        throw RotationConditionError("rotation_2d: invalid parameters: " + rep.failed_names(), rep);

    const double v11 = v.at(0, 0).convert_to<double>();
    const double v12 = v.at(0, 1).convert_to<double>();
    const double v21 = v.at(1, 0).convert_to<double>();
    const double v22 = v.at(1, 1).convert_to<double>();
    const double sq = std::sqrt(static_cast<double>(q));
    // Columns of V Q(q) before normalization.
    const double a1 = v11 - v12 * sq, b1 = v21 - v22 * sq;
    const double a2 = v11 + v12 * sq, b2 = v21 + v22 * sq;
    const double w1 = 1.0 / std::sqrt(a1 * a1 + b1 * b1);
    const double w2 = 1.0 / std::sqrt(a2 * a2 + b2 * b2);
    Matrix r(2, 2);
    r(0, 0) = a1 * w1;
    r(1, 0) = b1 * w1;
    r(0, 1) = a2 * w2;
    r(1, 1) = b2 * w2;
    return r;
}

Matrix rotation_2d_shifted(long long u1, long long u2, long long u3, long long q) {
    ConditionReport rep;
    add_check(rep, "parameters_nonzero", u1 != 0 || u2 != 0 || u3 != 0,
              "(u1, u2, u3) must not all vanish");
    add_check(rep, "q_sqrt_irrational", sqrt_irrational(q),
              "q = " + std::to_string(q) + " must be a positive non-square integer");
    if (!rep.all_pass())
        throw RotationConditionError("rotation_2d_shifted: invalid parameters: " + rep.failed_names(),
                                     rep);
    const double d = u1 * std::sqrt(static_cast<double>(q)) + u3;
    if (d == 0.0 && u2 == 0)
        throw RotationConditionError("rotation_2d_shifted: degenerate (zero matrix)");
    const double w = 1.0 / std::sqrt(d * d + static_cast<double>(u2) * u2);
    Matrix r(2, 2);
    r(0, 0) = d * w;
    r(0, 1) = u2 * w;
    r(1, 0) = -u2 * w;
    r(1, 1) = d * w;
    return r;
}

Matrix rotation_3d_cuberoot(const Rational& q) {
    if (q.num <= 0) throw RotationConditionError("rotation_3d_cuberoot: q must be positive");
    if (q.num == 1 && q.den == 1)
        throw RotationConditionError("rotation_3d_cuberoot: q = 1 degenerates the matrix");
    const double qd = q.to_double();
    const double c = std::cbrt(qd);  // q^{1/3}
    const double a = 1.0 - qd;
    const double b = qd - c;
    const double e = a * (c + c * c);
    // Normalizer (q^{10/3} + 2q^3 + q^{8/3} - 2q^{7/3} - 2q^2 - 2q^{5/3}
    //             - q^{4/3} + 2q^{2/3} + 1)^{-1/2}, written in powers of q^{1/3}.
    const double c2 = c * c, c4 = c2 * c2, c5 = c4 * c, c6 = c4 * c2, c7 = c6 * c, c8 = c4 * c4,
                 c9 = c8 * c, c10 = c8 * c2;
    const double poly = c10 + 2.0 * c9 + c8 - 2.0 * c7 - 2.0 * c6 - 2.0 * c5 - c4 + 2.0 * c2 + 1.0;
    const double w = 1.0 / std::sqrt(poly);
    Matrix r(3, 3, {a, b, e, b, e, a, e, a, b});
    return w * r;
}

Matrix build_rotation(const MagicRotationSpec& spec) {
    ConditionReport rep = validate_spec(spec, spec_home_family(spec));
    if (!rep.all_pass())
        throw RotationConditionError("build_rotation: spec fails validation: " + rep.failed_names(),
                                     rep);
    return std::visit(
        [](const auto& s) -> Matrix {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TensorPow2Spec>) {
                // R2(V_z, q_z) x ... x R2(V_1, q_1)
                const int z = s.z();
                Matrix acc = rotation_2d(s.v[z - 1], s.q[z - 1]);
                for (int l = z - 2; l >= 0; --l) acc = kronecker(acc, rotation_2d(s.v[l], s.q[l]));
                return acc;
            } else if constexpr (std::is_same_v<T, Tc4Spec>) {
                return kronecker(rotation_2d(s.v2, s.q2), rotation_2d(s.v1, 5));
            } else if constexpr (std::is_same_v<T, Dp2Spec>) {
                return rotation_2d_shifted(s.u1, s.u2, s.u3, 3);
            } else if constexpr (std::is_same_v<T, R3Spec>) {
                return rotation_3d_cuberoot(s.q);
            } else if constexpr (std::is_same_v<T, Dim6Spec>) {
                Matrix inner = std::holds_alternative<Dim6R2Inner>(s.inner)
                                   ? rotation_2d(std::get<Dim6R2Inner>(s.inner).v,
                                                 std::get<Dim6R2Inner>(s.inner).q1)
                                   : rotation_2d_shifted(std::get<Dim6ShiftInner>(s.inner).u1,
                                                         std::get<Dim6ShiftInner>(s.inner).u2,
                                                         std::get<Dim6ShiftInner>(s.inner).u3,
                                                         std::get<Dim6ShiftInner>(s.inner).q1);
                return kronecker(rotation_3d_cuberoot(Rational(BigInt(s.q2), BigInt(1))), inner);
            } else {
                Matrix acc = Matrix::identity(s.p);
                std::size_t idx = 0;
                for (int i = 0; i < s.p; ++i)
                    for (int j = i + 1; j < s.p; ++j) acc = acc * givens(s.p, i, j, s.angles[idx++]);
                return acc;
            }
        },
        spec);
}

namespace {

struct PlanePair {
    IntMatrix v;
    long long q;
};

// All (V, q) with entries in 0..9, 1 <= q <= 50, V full rank, q non-square,
// and the exact quadratic relation satisfied.  This is the candidate pool for
// rejection sampling of plane factors.
const std::vector<PlanePair>& plane_pair_pool() {
    static const std::vector<PlanePair> pool = [] {
        std::vector<PlanePair> out;
        for (long long q = 1; q <= 50; ++q) {
            if (!sqrt_irrational(q)) continue;
            for (long long a = 0; a <= 9; ++a)
                for (long long b = 0; b <= 9; ++b)
                    for (long long c = 0; c <= 9; ++c)
                        for (long long d = 0; d <= 9; ++d) {
                            if (a * d - b * c == 0) continue;
                            if (a * a + c * c != q * (b * b + d * d)) continue;
                            out.push_back(PlanePair{IntMatrix(2, 2, {a, b, c, d}), q});
                        }
        }
        return out;
    }();
    return pool;
}

const std::vector<PlanePair>& plane_pair_pool_q5() {
    static const std::vector<PlanePair> pool = [] {
        std::vector<PlanePair> out;
        for (const auto& pp : plane_pair_pool())
            if (pp.q == 5) out.push_back(pp);
        return out;
    }();
    return pool;
}

const PlanePair& draw_pair(Rng& rng) {
    const auto& pool = plane_pair_pool();
    return pool[rng.uniform_int(pool.size())];
}

long long draw_in(Rng& rng, long long lo, long long hi) {
    return lo + static_cast<long long>(rng.uniform_int(static_cast<std::uint64_t>(hi - lo + 1)));
}

MagicRotationSpec draw_candidate(int p, LatticeFamily base, Rng& rng) {
    const bool packing_like =
        base == LatticeFamily::DensestPacking || base == LatticeFamily::ThinnestCovering;
    switch (p) {
        case 2:
            if (packing_like)
                return Dp2Spec{draw_in(rng, -9, 9), draw_in(rng, -9, 9), draw_in(rng, -9, 9)};
            else {
                const auto& pp = draw_pair(rng);
                return TensorPow2Spec{{pp.v}, {pp.q}};
            }
        case 3:
            return R3Spec{Rational(draw_in(rng, 2, 50))};
        case 4:
            if (base == LatticeFamily::ThinnestCovering) {
                const auto& five = plane_pair_pool_q5();
                const auto& p1 = five[rng.uniform_int(five.size())];
                const auto& p2 = draw_pair(rng);
                return Tc4Spec{p1.v, p2.v, p2.q};
            } else {
                const auto& p1 = draw_pair(rng);
                const auto& p2 = draw_pair(rng);
                return TensorPow2Spec{{p1.v, p2.v}, {p1.q, p2.q}};
            }
        case 6: {
            Dim6Spec spec;
            spec.q2 = draw_in(rng, 2, 50);
            if (base == LatticeFamily::DensestPacking)
                spec.inner = Dim6ShiftInner{draw_in(rng, -9, 9), draw_in(rng, -9, 9),
                                            draw_in(rng, -9, 9), 3};
            else if (base == LatticeFamily::ThinnestCovering)
                spec.inner = Dim6ShiftInner{draw_in(rng, -9, 9), draw_in(rng, -9, 9),
                                            draw_in(rng, -9, 9), 7};
            else if (rng.uniform_int(2) == 0) {
                const auto& pp = draw_pair(rng);
                spec.inner = Dim6R2Inner{pp.v, pp.q};
            } else
                spec.inner = Dim6ShiftInner{draw_in(rng, -9, 9), draw_in(rng, -9, 9),
                                            draw_in(rng, -9, 9), draw_in(rng, 2, 50)};
            return spec;
        }
        case 8: {
            const auto& p1 = draw_pair(rng);
            const auto& p2 = draw_pair(rng);
            const auto& p3 = draw_pair(rng);
            return TensorPow2Spec{{p1.v, p2.v, p3.v}, {p1.q, p2.q, p3.q}};
        }
        default:
            throw std::invalid_argument("draw_candidate: unsupported dimension");
    }
}

// Known-valid fallback specs, one per (p, base).  Each entry is re-validated
// at sampling time rather than hand-trusted.
std::optional<MagicRotationSpec> catalog_spec(int p, LatticeFamily base) {
    const bool packing_like =
        base == LatticeFamily::DensestPacking || base == LatticeFamily::ThinnestCovering;
    const IntMatrix v_q2(2, 2, {1, 1, 1, 0});   // pairs with q = 2
    const IntMatrix v_q5(2, 2, {2, 1, 1, 0});   // pairs with q = 5
    const IntMatrix v_q13(2, 2, {2, 1, 3, 0});  // pairs with q = 13
    switch (p) {
        case 2:
            if (packing_like) return MagicRotationSpec{Dp2Spec{1, 1, 1}};
            return MagicRotationSpec{TensorPow2Spec{{v_q2}, {2}}};
        case 3:
            return MagicRotationSpec{R3Spec{Rational(2)}};
        case 4:
            if (base == LatticeFamily::ThinnestCovering)
                return MagicRotationSpec{Tc4Spec{v_q5, v_q2, 2}};
            return MagicRotationSpec{TensorPow2Spec{{v_q2, v_q5}, {2, 5}}};
        case 6:
            if (base == LatticeFamily::DensestPacking)
                return MagicRotationSpec{Dim6Spec{2, Dim6ShiftInner{1, 1, 1, 3}}};
            if (base == LatticeFamily::ThinnestCovering)
                return MagicRotationSpec{Dim6Spec{2, Dim6ShiftInner{1, 1, 1, 7}}};
            return MagicRotationSpec{Dim6Spec{3, Dim6R2Inner{v_q2, 2}}};
        case 8:
            return MagicRotationSpec{TensorPow2Spec{{v_q2, v_q5, v_q13}, {2, 5, 13}}};
        default:
            return std::nullopt;
    }
}

}  // namespace

MagicRotationSpec sample_random_givens(int p, Rng& rng) {
    if (p < 2) throw std::invalid_argument("sample_random_givens: p must be >= 2");
    RandomGivensSpec spec;
    spec.p = p;
    spec.angles.reserve(static_cast<std::size_t>(p) * (p - 1) / 2);
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) spec.angles.push_back(rng.uniform(0.0, 2.0 * M_PI));
    return MagicRotationSpec{std::move(spec)};
}

MagicRotationSpec sample_spec(int p, LatticeFamily base, Rng& rng) {
    if (p < 2 || p > 8) throw std::invalid_argument("sample_spec: p must be in [2, 8]");
    if (base == LatticeFamily::Rotated)
        throw std::invalid_argument("sample_spec: base must be an unrotated family");
    if (p == 5 || p == 7) return sample_random_givens(p, rng);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        MagicRotationSpec spec = draw_candidate(p, base, rng);
        if (validate_spec(spec, base).all_pass()) return spec;
    }
    std::optional<MagicRotationSpec> fallback = catalog_spec(p, base);
    if (fallback && validate_spec(*fallback, base).all_pass()) return *fallback;
    throw SpecSampleError("sample_spec: no valid spec found for p = " + std::to_string(p) +
                          ", base = " + family_name(base));
}

}  // namespace dpmpd
