#include "dpmpd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dpmpd/rng.hpp"

namespace dpmpd {

namespace {

void check_shape(const std::vector<double>& points, long n, int p) {
    if (p < 1) throw std::invalid_argument("metrics: p must be >= 1");
    if (points.size() != static_cast<std::size_t>(n) * p)
        throw std::invalid_argument("metrics: point array shape mismatch");
}

const double* row(const std::vector<double>& pts, long i, int p) {
    return &pts[static_cast<std::size_t>(i) * p];
}

}  // namespace

std::vector<double> all_min_projected_separations(const std::vector<double>& points, long n,
                                                  int p) {
    check_shape(points, n, p);
    if (n < 2) throw std::invalid_argument("min_projected_separation: need n >= 2");
    std::vector<double> best(p, std::numeric_limits<double>::infinity());
    std::vector<double> d2(p);
    for (long i = 0; i < n; ++i) {
        const double* xi = row(points, i, p);
        for (long j = i + 1; j < n; ++j) {
            const double* xj = row(points, j, p);
            for (int t = 0; t < p; ++t) {
                const double d = xi[t] - xj[t];
                d2[t] = d * d;
            }
            std::sort(d2.begin(), d2.end());
            // Ascending prefix sums: prefix k is the minimum over all size-k
            // subsets for this pair.
            double s = 0.0;
            for (int k = 0; k < p; ++k) {
                s += d2[k];
                if (s < best[k]) best[k] = s;
            }
        }
    }
    for (int k = 0; k < p; ++k) best[k] = std::sqrt(best[k]);
    return best;
}

double min_projected_separation(const std::vector<double>& points, long n, int p, int k) {
    if (k < 1 || k > p) throw std::invalid_argument("min_projected_separation: k out of range");
    return all_min_projected_separations(points, n, p)[k - 1];
}

double separation(const std::vector<double>& points, long n, int p) {
    if (n < 2) throw std::invalid_argument("separation: need n >= 2");
    return min_projected_separation(points, n, p, p);
}

double projected_separation(const std::vector<double>& points, long n, int p,
                            const std::vector<int>& cols) {
    check_shape(points, n, p);
    if (cols.empty()) throw std::invalid_argument("projected_separation: empty column set");
    for (int c : cols)
        if (c < 0 || c >= p) throw std::invalid_argument("projected_separation: column out of range");
    if (n < 2) throw std::invalid_argument("projected_separation: need n >= 2");
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> d2(cols.size());
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j) {
            const double* xi = row(points, i, p);
            const double* xj = row(points, j, p);
            for (std::size_t t = 0; t < cols.size(); ++t) {
                const double d = xi[cols[t]] - xj[cols[t]];
                d2[t] = d * d;
            }
            std::sort(d2.begin(), d2.end());
            double s = 0.0;
            for (double v : d2) s += v;
            best = std::min(best, s);
        }
    return std::sqrt(best);
}

double univariate_fill(const std::vector<double>& points, long n, int p, int j) {
    check_shape(points, n, p);
    if (n < 1) throw std::invalid_argument("univariate_fill: need n >= 1");
    if (j < 0 || j >= p) throw std::invalid_argument("univariate_fill: coordinate out of range");
    std::vector<double> c(n);
    for (long i = 0; i < n; ++i) c[i] = points[static_cast<std::size_t>(i) * p + j];
    std::sort(c.begin(), c.end());
    double worst = std::max(c.front() - 0.0, 1.0 - c.back());
    for (long i = 0; i + 1 < n; ++i) worst = std::max(worst, (c[i + 1] - c[i]) / 2.0);
    return worst;
}

namespace {

constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                           59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131};

// Digit permutation for one Halton base: identity on 0 (so finite expansions
// stay exact) and a fixed pseudo-random shuffle of 1..b-1.
std::vector<int> halton_permutation(int base) {
    std::vector<int> perm(base);
    for (int i = 0; i < base; ++i) perm[i] = i;
    Rng rng(mix_seed(0x48616c746f6eULL, static_cast<std::uint64_t>(base)));
    for (int i = base - 1; i > 1; --i) {
        const int j = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(i)));
        std::swap(perm[i], perm[j]);
    }
    return perm;
}

double halton_coord(long index, int base, const std::vector<int>& perm) {
    double x = 0.0;
    double denom = base;
    long i = index;
    while (i > 0) {
        x += perm[i % base] / denom;
        denom *= base;
        i /= base;
    }
    return x;
}

}  // namespace

double fill_estimate(const std::vector<double>& points, long n, int p, long m) {
    check_shape(points, n, p);
    if (n < 1) throw std::invalid_argument("fill_estimate: need n >= 1");
    if (m < 1) throw std::invalid_argument("fill_estimate: M must be >= 1");
    if (p > static_cast<int>(sizeof(kPrimes) / sizeof(kPrimes[0])))
        throw std::invalid_argument("fill_estimate: dimension beyond prime table");
    std::vector<std::vector<int>> perms(p);
    for (int j = 0; j < p; ++j) perms[j] = halton_permutation(kPrimes[j]);
    double worst2 = 0.0;
    std::vector<double> y(p);
    for (long i = 1; i <= m; ++i) {
        for (int j = 0; j < p; ++j) y[j] = halton_coord(i, kPrimes[j], perms[j]);
        double near2 = std::numeric_limits<double>::infinity();
        for (long t = 0; t < n; ++t) {
            const double* x = row(points, t, p);
            double d2 = 0.0;
            for (int j = 0; j < p; ++j) {
                const double d = x[j] - y[j];
                d2 += d * d;
            }
            if (d2 < near2) near2 = d2;
        }
        if (near2 > worst2) worst2 = near2;
    }
    return std::sqrt(worst2);
}

double score_from_separations(const std::vector<double>& min_proj_seps) {
    if (min_proj_seps.empty()) throw std::invalid_argument("score: empty separation vector");
    for (double v : min_proj_seps)
        if (v <= 0.0) return -std::numeric_limits<double>::infinity();
    const int p = static_cast<int>(min_proj_seps.size());
    double s = 0.5 * std::log(min_proj_seps[0]);
    for (int k = 2; k <= p; ++k) s += k * std::log(min_proj_seps[k - 1]);
    return s;
}

double score(const std::vector<double>& points, long n, int p) {
    return score_from_separations(all_min_projected_separations(points, n, p));
}

ProjectionMetrics metrics_report(const std::vector<double>& points, long n, int p, long m) {
    check_shape(points, n, p);
    if (n < 2) throw std::invalid_argument("metrics_report: need n >= 2");
    ProjectionMetrics out;
    out.p = p;
    out.n = n;
    out.min_proj_sep = all_min_projected_separations(points, n, p);
    out.sep = out.min_proj_sep[p - 1];
    out.uni_fill.resize(p);
    for (int j = 0; j < p; ++j) out.uni_fill[j] = univariate_fill(points, n, p, j);
    out.fill_estimate = fill_estimate(points, n, p, m);
    out.score = score_from_separations(out.min_proj_sep);
    out.c_hat.resize(p);
    for (int k = 1; k <= p; ++k)
        out.c_hat[k - 1] = out.min_proj_sep[k - 1] * std::pow(static_cast<double>(n), 1.0 / k);
    return out;
}

ProjectionMetrics metrics_report(const Design& d, long m) {
    return metrics_report(d.points, d.n, d.p, m);
}

}  // namespace dpmpd
