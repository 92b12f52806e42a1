#pragma once

#include <vector>

#include "dpmpd/designgen.hpp"

namespace dpmpd {

// All separation/fill summaries of one design.  min_proj_sep[k-1] holds the
// minimum over all size-k coordinate subsets of the projected separation;
// c_hat[k-1] = min_proj_sep[k-1] * n^{1/k} estimates the constant in the
// n^{-1/k} separation rate.
struct ProjectionMetrics {
    int p = 0;
    long n = 0;
    double sep = 0.0;
    std::vector<double> min_proj_sep;  // length p, index k-1
    std::vector<double> uni_fill;      // length p, index j-1
    double fill_estimate = 0.0;
    double score = 0.0;  // may be -infinity
    std::vector<double> c_hat;  // length p, index k-1
};

// Minimum pairwise Euclidean distance; requires n >= 2.
double separation(const std::vector<double>& points, long n, int p);

// Minimum pairwise distance over the named 0-based coordinate subset.
double projected_separation(const std::vector<double>& points, long n, int p,
                            const std::vector<int>& cols);

// min over |gamma| = k of the projected separation.  Per pair, the minimizing
// subset is the k smallest squared coordinate differences, summed in
// ascending order (the brute-force oracle follows the same order, making the
// two bitwise equal).
double min_projected_separation(const std::vector<double>& points, long n, int p, int k);

// All of the above at once: result[k-1] = min_projected_separation(..., k).
std::vector<double> all_min_projected_separations(const std::vector<double>& points, long n,
                                                  int p);

// Exact one-dimensional fill distance of coordinate j (0-based): largest
// distance from any y in [0,1] to the nearest design coordinate.
double univariate_fill(const std::vector<double>& points, long n, int p, int j);

// Lower estimate of the unprojected fill distance: max over M deterministic
// generalized-Halton query points of the distance to the nearest design
// point.
double fill_estimate(const std::vector<double>& points, long n, int p, long m = 1L << 14);

// Projection score s(D) = ln(mps_1)/2 + sum_{k=2}^{p} k ln(mps_k); minus
// infinity when any projected separation vanishes.
double score_from_separations(const std::vector<double>& min_proj_seps);
double score(const std::vector<double>& points, long n, int p);

// Assembles every metric for a design.
ProjectionMetrics metrics_report(const Design& d, long m = 1L << 14);
ProjectionMetrics metrics_report(const std::vector<double>& points, long n, int p,
                                 long m = 1L << 14);

}  // namespace dpmpd
