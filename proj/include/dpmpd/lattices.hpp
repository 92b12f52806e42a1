#pragma once

#include <string>

#include "dpmpd/matcore.hpp"

namespace dpmpd {

enum class LatticeFamily {
    Integer,
    DensestPacking,
    ThinnestCovering,
    Interleaved,
    Rotated,
};

std::string family_name(LatticeFamily f);
LatticeFamily family_from_name(const std::string& name);

// A lattice L(G) = { a^T G : a integer row vector }, carried with its
// family label.  For rotated lattices `base` records the family of the
// unrotated generator; otherwise base == family.
struct GeneratorMatrix {
    int p = 0;
    Matrix G;
    double absdet = 1.0;
    LatticeFamily family = LatticeFamily::Integer;
    LatticeFamily base = LatticeFamily::Integer;
};

// Identity generator of the p-dimensional integer lattice.
GeneratorMatrix generator_integer(int p);

// Generator of the p-dimensional thinnest covering, 2 <= p <= 22, scaled so
// |det| = 1.
GeneratorMatrix generator_thinnest_covering(int p);

// Generator of the p-dimensional densest packing, 2 <= p <= 8, scaled so
// |det| = 1.  p = 2 coincides with the thinnest covering.
GeneratorMatrix generator_densest_packing(int p);

// Wraps a caller-supplied generator of a standard interleaved lattice.
// Throws std::invalid_argument if the matrix is not square or does not
// satisfy the interleaved sandwich property.
GeneratorMatrix generator_interleaved(const Matrix& g);

// Right-multiplies the generator by rotation R, preserving the base label.
GeneratorMatrix rotate(const GeneratorMatrix& g, const Matrix& r);

// Length of the shortest nonzero vector among a^T G with a in [-m, m]^p.
// For the families constructed here m = 3 attains the true lattice minimum.
double shortest_vector_length(const GeneratorMatrix& g, int m);

// True iff L(sub) is a sublattice of L(sup): K = Gsub Gsup^{-1} has entries
// within 1e-9 of integers and |det(round(K))| >= 1.
bool is_sublattice(const GeneratorMatrix& sub, const GeneratorMatrix& sup);

// True iff L(2I) subset L(G) subset L(I), the standard interleaved sandwich.
bool is_standard_interleaved(const GeneratorMatrix& g);

}  // namespace dpmpd
