#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dpmpd/lattices.hpp"
#include "dpmpd/rng.hpp"
#include "dpmpd/rotations.hpp"

namespace dpmpd {

// A finished design: the intersection of the scaled, shifted lattice with the
// unit cube, together with everything needed to reproduce it.
struct Design {
    int p = 0;
    long n = 0;
    std::vector<double> points;  // n x p, row major, lexicographically sorted
    GeneratorMatrix G;
    double h = 0.0;
    std::vector<double> delta;
    std::optional<MagicRotationSpec> spec;
    std::uint64_t seed = 0;
};

// Thrown when no perturbation with an exact point count was found; carries
// the histogram of observed counts for diagnosis.
struct DeltaSearchError : std::runtime_error {
    std::map<long, long> count_histogram;
    DeltaSearchError(const std::string& what, std::map<long, long> hist)
        : std::runtime_error(what), count_histogram(std::move(hist)) {}
};

// Points of { h (a^T G + delta^T) : a integer } inside [0,1]^p, with
// closed-interval membership at zero tolerance.  The integer preimage box is
// derived from per-axis contribution intervals of the columns of G^{-1}, and
// the box is walked depth-first with branch-and-bound pruning.  Output rows
// are sorted lexicographically.
std::vector<double> enumerate_points(const GeneratorMatrix& g, double h,
                                     const std::vector<double>& delta);

// Number of points enumerate_points would return, aborting early once the
// count exceeds `limit` (returns limit + 1 in that case).
long count_points(const GeneratorMatrix& g, double h, const std::vector<double>& delta,
                  long limit);

// Draws delta = u^T G with u uniform on [0,1)^p until the design has exactly
// n points and no two points within 1e-12.  Throws DeltaSearchError after
// max_attempts rejections.
std::vector<double> find_delta(const GeneratorMatrix& g, long n, Rng& rng,
                               int max_attempts = 100000);

// Composes the perturbation search and the enumeration into a Design;
// deterministic function of (g, n, seed).  The optional rotation spec is
// carried as metadata only.
Design generate(const GeneratorMatrix& g, long n, std::optional<MagicRotationSpec> spec,
                std::uint64_t seed, int max_attempts = 100000);

}  // namespace dpmpd
