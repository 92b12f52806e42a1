#include "dpmpd/lattices.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace dpmpd {

std::string family_name(LatticeFamily f) {
    switch (f) {
        case LatticeFamily::Integer: return "int";
        case LatticeFamily::DensestPacking: return "dp";
        case LatticeFamily::ThinnestCovering: return "tc";
        case LatticeFamily::Interleaved: return "interleaved";
        case LatticeFamily::Rotated: return "rotated";
    }
    throw std::logic_error("family_name: unknown family");
}

LatticeFamily family_from_name(const std::string& name) {
    if (name == "int") return LatticeFamily::Integer;
    if (name == "dp") return LatticeFamily::DensestPacking;
    if (name == "tc") return LatticeFamily::ThinnestCovering;
    if (name == "interleaved") return LatticeFamily::Interleaved;
    if (name == "rotated") return LatticeFamily::Rotated;
    throw std::invalid_argument("unknown lattice family '" + name + "'");
}

namespace {

GeneratorMatrix finish(int p, Matrix g, LatticeFamily family) {
    GeneratorMatrix out;
    out.p = p;
    out.G = std::move(g);
    out.absdet = std::abs(det(out.G));
    out.family = family;
    out.base = family;
    return out;
}

}  // namespace

GeneratorMatrix generator_integer(int p) {
    if (p < 1) throw std::invalid_argument("generator_integer: p must be positive");
    return finish(p, Matrix::identity(p), LatticeFamily::Integer);
}

GeneratorMatrix generator_thinnest_covering(int p) {
    if (p < 2 || p > 22)
        throw std::invalid_argument("generator_thinnest_covering: p must be in [2, 22]");
    const double pp1 = static_cast<double>(p + 1);
    const double root = std::sqrt(pp1);
    // [ {(p+1) - (p+1)^{1/2}} I - J ] {(p+1)^{1/2} - 1}^{-1} (p+1)^{-(p-1)/(2p)}
    const double scale = std::pow(pp1, -(p - 1.0) / (2.0 * p)) / (root - 1.0);
    const double diag = (pp1 - root - 1.0) * scale;
    const double off = -scale;
    Matrix g(p, p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) g(i, j) = (i == j) ? diag : off;
    return finish(p, g, LatticeFamily::ThinnestCovering);
}

GeneratorMatrix generator_densest_packing(int p) {
    if (p < 2 || p > 8)
        throw std::invalid_argument("generator_densest_packing: p must be in [2, 8]");
    if (p == 2) {
        GeneratorMatrix g = generator_thinnest_covering(2);
        g.family = LatticeFamily::DensestPacking;
        g.base = g.family;
        return g;
    }
    Matrix g(p, p);
    if (p <= 5) {
        // [ 1_{p-1}  I_{p-1} ; 2  0^T ] 2^{-1/p}
        const double s = std::pow(2.0, -1.0 / p);
        for (int i = 0; i + 1 < p; ++i) {
            g(i, 0) = s;
            g(i, i + 1) = s;
        }
        g(p - 1, 0) = 2.0 * s;
    } else {
        // [ 1_{p-2}  I_{p-2}  0 ; 2  0^T  0 ; 1/2  1^T/2  (9-p)^{1/2}/2 ] (9-p)^{-1/(2p)}
        const double s = std::pow(9.0 - p, -1.0 / (2.0 * p));
        for (int i = 0; i + 2 < p; ++i) {
            g(i, 0) = s;
            g(i, i + 1) = s;
        }
        g(p - 2, 0) = 2.0 * s;
        for (int j = 0; j + 1 < p; ++j) g(p - 1, j) = 0.5 * s;
        g(p - 1, p - 1) = 0.5 * std::sqrt(9.0 - p) * s;
    }
    return finish(p, g, LatticeFamily::DensestPacking);
}

GeneratorMatrix generator_interleaved(const Matrix& g) {
    if (g.rows() != g.cols() || g.rows() < 1)
        throw std::invalid_argument("generator_interleaved: matrix must be square");
    GeneratorMatrix out = finish(g.rows(), g, LatticeFamily::Interleaved);
    if (!is_standard_interleaved(out))
        throw std::invalid_argument(
            "generator_interleaved: lattice is not standard interleaved "
            "(needs L(2I) subset L(G) subset L(I))");
    return out;
}

GeneratorMatrix rotate(const GeneratorMatrix& g, const Matrix& r) {
    if (r.rows() != g.p || r.cols() != g.p)
        throw std::invalid_argument("rotate: rotation dimension mismatch");
    GeneratorMatrix out = g;
    out.G = g.G * r;
    out.family = LatticeFamily::Rotated;
    out.base = (g.family == LatticeFamily::Rotated) ? g.base : g.family;
    return out;
}

double shortest_vector_length(const GeneratorMatrix& g, int m) {
    if (m < 1) throw std::invalid_argument("shortest_vector_length: m must be >= 1");
    const int p = g.p;
    if (std::pow(2.0 * m + 1.0, p) > 1e9)
        throw std::invalid_argument("shortest_vector_length: coefficient box too large to enumerate");
    std::vector<int> a(p, -m);
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> v(p);
    while (true) {
        bool zero = true;
        for (int i = 0; i < p; ++i)
            if (a[i] != 0) {
                zero = false;
                break;
            }
        if (!zero) {
            double norm2 = 0.0;
            for (int j = 0; j < p; ++j) {
                double s = 0.0;
                for (int i = 0; i < p; ++i) s += a[i] * g.G(i, j);
                norm2 += s * s;
            }
            best = std::min(best, norm2);
        }
        int k = p - 1;
        while (k >= 0 && a[k] == m) {
            a[k] = -m;
            --k;
        }
        if (k < 0) break;
        ++a[k];
    }
    return std::sqrt(best);
}

bool is_sublattice(const GeneratorMatrix& sub, const GeneratorMatrix& sup) {
    if (sub.p != sup.p) throw std::invalid_argument("is_sublattice: dimension mismatch");
    const Matrix k = sub.G * inverse(sup.G);
    const int p = sub.p;
    Matrix rounded(p, p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
            const double r = std::round(k(i, j));
            if (std::abs(k(i, j) - r) > 1e-9) return false;
            rounded(i, j) = r;
        }
    return std::abs(det(rounded)) >= 1.0 - 1e-9;
}

bool is_standard_interleaved(const GeneratorMatrix& g) {
    GeneratorMatrix unit = generator_integer(g.p);
    GeneratorMatrix doubled = unit;
    doubled.G = 2.0 * unit.G;
    doubled.absdet = std::abs(det(doubled.G));
    return is_sublattice(doubled, g) && is_sublattice(g, unit);
}

}  // namespace dpmpd
