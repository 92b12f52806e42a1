#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dpmpd/exactnum.hpp"
#include "dpmpd/lattices.hpp"
#include "dpmpd/matcore.hpp"
#include "dpmpd/rng.hpp"

namespace dpmpd {

// ---------------------------------------------------------------------------
// Magic rotation specifications.  Parameters are stored exactly (integers /
// rationals); validity is decided by validate_spec, never assumed.
// ---------------------------------------------------------------------------

// Kronecker product of z two-dimensional rotations R2(V_l, q_l); covers
// dimensions p = 2^z.
struct TensorPow2Spec {
    std::vector<IntMatrix> v;  // z matrices, each 2x2 with natural entries
    std::vector<long long> q;  // z positive integers
    int z() const { return static_cast<int>(v.size()); }
    int p() const { return 1 << z(); }
};

// Rotation for the 4-dimensional thinnest covering: R2(V2, q2) x R2(V1, 5)
// with the first factor's q pinned to 5.
struct Tc4Spec {
    IntMatrix v1;
    IntMatrix v2;
    long long q2 = 0;
};

// Rotation for the 2-dimensional densest packing, built from the shifted
// integer form with q pinned to 3.
struct Dp2Spec {
    long long u1 = 0;
    long long u2 = 0;
    long long u3 = 0;
};

// Three-dimensional rotation parameterized by a rational q with irrational
// cube root.
struct R3Spec {
    Rational q;
};

// Inner two-dimensional factor of the six-dimensional rotation.
struct Dim6R2Inner {
    IntMatrix v;
    long long q1 = 0;
};
struct Dim6ShiftInner {
    long long u1 = 0;
    long long u2 = 0;
    long long u3 = 0;
    long long q1 = 0;
};

// Six-dimensional rotation R3(q2) x (2-dimensional inner factor).
struct Dim6Spec {
    long long q2 = 0;
    std::variant<Dim6R2Inner, Dim6ShiftInner> inner;
};

// Product of Givens rotations with explicit angles; used where no magic
// rotation family is known (p = 5, 7).  Angles are stored for axis pairs
// (i, j), i < j, in lexicographic order.
struct RandomGivensSpec {
    int p = 0;
    std::vector<double> angles;
};

using MagicRotationSpec =
    std::variant<TensorPow2Spec, Tc4Spec, Dp2Spec, R3Spec, Dim6Spec, RandomGivensSpec>;

// Dimension of the rotation the spec describes.
int spec_dimension(const MagicRotationSpec& spec);

// Stable variant tag used in serialization and reports.
std::string spec_variant_name(const MagicRotationSpec& spec);

// The most permissive family a variant covers; build_rotation validates
// against it, and it is the default target for standalone validation.
LatticeFamily spec_home_family(const MagicRotationSpec& spec);

// ---------------------------------------------------------------------------
// Validation reports.
// ---------------------------------------------------------------------------

struct ConditionCheck {
    std::string name;
    bool holds = false;
    std::string detail;
};

struct ConditionReport {
    std::vector<ConditionCheck> checks;
    bool all_pass() const;
    // Comma-separated names of failing conditions (empty when all pass).
    std::string failed_names() const;
};

struct RotationConditionError : std::runtime_error {
    ConditionReport report;
    RotationConditionError(const std::string& what, ConditionReport rep)
        : std::runtime_error(what), report(std::move(rep)) {}
    explicit RotationConditionError(const std::string& what) : std::runtime_error(what) {}
};

struct SpecSampleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Matrix builders.
// ---------------------------------------------------------------------------

// 2x2 orthogonal matrix V Q(q) W(V,q) where Q(q) = [[1,1],[-sqrt(q),sqrt(q)]]
// and W holds the two column normalizers.  Requires V full rank and the exact
// quadratic relation v11^2 + v21^2 = q (v12^2 + v22^2); throws
// RotationConditionError otherwise.
Matrix rotation_2d(const IntMatrix& v, long long q);

// 2x2 orthogonal matrix [[u1 sqrt(q)+u3, u2], [-u2, u1 sqrt(q)+u3]] times its
// normalizer.  Requires (u1,u2,u3) != 0 and q a positive non-square integer.
Matrix rotation_2d_shifted(long long u1, long long u2, long long u3, long long q);

// 3x3 orthogonal matrix whose entries are polynomials in q^{1/3}; rows are
// cyclic shifts of (1-q, q-q^{1/3}, (1-q)(q^{1/3}+q^{2/3})) times a scalar
// normalizer.  Requires q > 0, q != 1.
Matrix rotation_3d_cuberoot(const Rational& q);

// Builds the full rotation matrix for a spec.  Refuses specs whose intrinsic
// conditions fail (validated against the variant's home family) by throwing
// RotationConditionError carrying the report.
Matrix build_rotation(const MagicRotationSpec& spec);

// Checks every exact side condition of the spec against the given base
// lattice family.  Failures are report entries, never exceptions.
ConditionReport validate_spec(const MagicRotationSpec& spec, LatticeFamily base);

// Draws a spec valid for (p, base): bounded rejection sampling over small
// integer parameters, falling back to a catalog of known-valid entries after
// 10^4 rejections.  For p = 5, 7 returns RandomGivens angles uniform on
// [0, 2*pi).  Throws SpecSampleError only if even the catalog fails.
MagicRotationSpec sample_spec(int p, LatticeFamily base, Rng& rng);

// Draws a RandomGivens spec with p(p-1)/2 uniform angles; valid for any base
// but carries no projection guarantee.
MagicRotationSpec sample_random_givens(int p, Rng& rng);

}  // namespace dpmpd
