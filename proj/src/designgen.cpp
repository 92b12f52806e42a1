#include "dpmpd/designgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace dpmpd {

namespace {

// Shared state of the box walk.  Coordinates are enumerated over an integer
// box [lo_i, hi_i]; a subtree is cut as soon as the partial image plus the
// extreme remaining contributions cannot reach the target slab.
struct BoxWalk {
    const GeneratorMatrix& g;
    double h;
    const std::vector<double>& delta;
    int p;
    double inv_h;                     // 1 / h
    std::vector<long> lo, hi;         // integer box for a
    std::vector<double> suffix_min;   // per (depth, j): min over a_i, i >= depth
    std::vector<double> suffix_max;   //                of sum_i a_i G(i, j)
    std::vector<double> partial;      // running sum over fixed prefix
    std::vector<long> a;
    std::vector<double> out;          // collected rows (may stay empty in count mode)
    long count = 0;
    long limit = -1;                  // abort threshold in count mode, -1 = collect all
    bool aborted = false;

    static constexpr double kPruneMargin = 1e-9;

    BoxWalk(const GeneratorMatrix& gen, double scale, const std::vector<double>& d)
        : g(gen), h(scale), delta(d), p(gen.p), inv_h(1.0 / scale) {
        const Matrix ginv = inverse(g.G);
        // Preimage of the cube: a = t G^{-1} with t_j in [-delta_j, 1/h - delta_j].
        // Column i of G^{-1} gives a_i = sum_j t_j ginv(j, i); summing each
        // axis's extreme contribution bounds a_i.
        lo.resize(p);
        hi.resize(p);
        for (int i = 0; i < p; ++i) {
            double mn = 0.0, mx = 0.0;
            for (int j = 0; j < p; ++j) {
                const double c = ginv(j, i);
                const double t0 = -delta[j] * c;
                const double t1 = (inv_h - delta[j]) * c;
                mn += std::min(t0, t1);
                mx += std::max(t0, t1);
            }
            lo[i] = static_cast<long>(std::floor(mn - kPruneMargin));
            hi[i] = static_cast<long>(std::ceil(mx + kPruneMargin));
        }
        // suffix_min/max[depth * p + j]: extreme contribution of a_depth..a_{p-1}
        // to image coordinate j.
        suffix_min.assign(static_cast<std::size_t>(p + 1) * p, 0.0);
        suffix_max.assign(static_cast<std::size_t>(p + 1) * p, 0.0);
        for (int depth = p - 1; depth >= 0; --depth)
            for (int j = 0; j < p; ++j) {
                const double c = g.G(depth, j);
                const double v0 = lo[depth] * c;
                const double v1 = hi[depth] * c;
                suffix_min[static_cast<std::size_t>(depth) * p + j] =
                    suffix_min[static_cast<std::size_t>(depth + 1) * p + j] + std::min(v0, v1);
                suffix_max[static_cast<std::size_t>(depth) * p + j] =
                    suffix_max[static_cast<std::size_t>(depth + 1) * p + j] + std::max(v0, v1);
            }
        partial.assign(p, 0.0);
        a.assign(p, 0);
    }

    void run(long abort_limit) {
        limit = abort_limit;
        descend(0);
    }

    void descend(int depth) {
        if (aborted) return;
        if (depth == p) {
            // Exact closed-interval membership test on the image point.
            std::array<double, 32> x;
            for (int j = 0; j < p; ++j) {
                const double v = h * (partial[j] + delta[j]);
                if (v < 0.0 || v > 1.0) return;
                x[j] = v;
            }
            ++count;
            if (limit >= 0 && count > limit) {
                aborted = true;
                return;
            }
            if (limit < 0) out.insert(out.end(), x.begin(), x.begin() + p);
            return;
        }
        for (long v = lo[depth]; v <= hi[depth]; ++v) {
            bool feasible = true;
            for (int j = 0; j < p; ++j) {
                const double fixed = partial[j] + v * g.G(depth, j);
                const double rest_min = suffix_min[static_cast<std::size_t>(depth + 1) * p + j];
                const double rest_max = suffix_max[static_cast<std::size_t>(depth + 1) * p + j];
                if (fixed + rest_max < -delta[j] - kPruneMargin ||
                    fixed + rest_min > inv_h - delta[j] + kPruneMargin) {
                    feasible = false;
                    break;
                }
            }
            if (!feasible) continue;
            a[depth] = v;
            for (int j = 0; j < p; ++j) partial[j] += v * g.G(depth, j);
            descend(depth + 1);
            for (int j = 0; j < p; ++j) partial[j] -= v * g.G(depth, j);
            if (aborted) return;
        }
    }
};

void sort_rows(std::vector<double>& pts, int p) {
    const long n = static_cast<long>(pts.size()) / p;
    std::vector<long> order(n);
    for (long i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](long a, long b) {
        const double* ra = &pts[static_cast<std::size_t>(a) * p];
        const double* rb = &pts[static_cast<std::size_t>(b) * p];
        return std::lexicographical_compare(ra, ra + p, rb, rb + p);
    });
    std::vector<double> sorted(pts.size());
    for (long i = 0; i < n; ++i)
        std::copy_n(&pts[static_cast<std::size_t>(order[i]) * p], p,
                    &sorted[static_cast<std::size_t>(i) * p]);
    pts = std::move(sorted);
}

void check_inputs(const GeneratorMatrix& g, double h, const std::vector<double>& delta) {
    if (h <= 0.0) throw std::invalid_argument("enumerate_points: h must be positive");
    if (static_cast<int>(delta.size()) != g.p)
        throw std::invalid_argument("enumerate_points: delta dimension mismatch");
    if (g.p < 1 || g.p > 32) throw std::invalid_argument("enumerate_points: unsupported dimension");
}

}  // namespace

std::vector<double> enumerate_points(const GeneratorMatrix& g, double h,
                                     const std::vector<double>& delta) {
    check_inputs(g, h, delta);
    BoxWalk walk(g, h, delta);
    walk.run(-1);
    sort_rows(walk.out, g.p);
    return walk.out;
}

long count_points(const GeneratorMatrix& g, double h, const std::vector<double>& delta,
                  long limit) {
    check_inputs(g, h, delta);
    BoxWalk walk(g, h, delta);
    walk.run(limit);
    return walk.count;
}

std::vector<double> find_delta(const GeneratorMatrix& g, long n, Rng& rng, int max_attempts) {
    if (n < 1) throw std::invalid_argument("find_delta: n must be >= 1");
    if (max_attempts < 1) throw std::invalid_argument("find_delta: max_attempts must be >= 1");
    const int p = g.p;
    const double h = std::pow(static_cast<double>(n) * g.absdet, -1.0 / p);
    std::map<long, long> histogram;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        // delta = u^T G with u uniform over the fundamental box [0,1)^p;
        // shifts by whole lattice vectors are design-equivalent.
        std::vector<double> u(p), delta(p, 0.0);
        for (int i = 0; i < p; ++i) u[i] = rng.uniform();
        for (int j = 0; j < p; ++j) {
            double s = 0.0;
            for (int i = 0; i < p; ++i) s += u[i] * g.G(i, j);
            delta[j] = s;
        }
        const long count = count_points(g, h, delta, n);
        ++histogram[std::min(count, n + 1)];
        if (count != n) continue;
        // Reject near-duplicate pairs; metrics take logarithms of separations.
        std::vector<double> pts = enumerate_points(g, h, delta);
        bool duplicate = false;
        for (long i = 0; i + 1 < n && !duplicate; ++i)
            for (long j = i + 1; j < n; ++j) {
                const double* a = &pts[static_cast<std::size_t>(i) * p];
                const double* b = &pts[static_cast<std::size_t>(j) * p];
                if (b[0] - a[0] > 1e-12) break;  // rows are lexicographically sorted
                bool close = true;
                for (int t = 0; t < p; ++t)
                    if (std::abs(a[t] - b[t]) > 1e-12) {
                        close = false;
                        break;
                    }
                if (close) {
                    duplicate = true;
                    break;
                }
            }
        if (!duplicate) return delta;
    }
    throw DeltaSearchError("find_delta: no exact-count perturbation in " +
                               std::to_string(max_attempts) + " attempts (target n = " +
                               std::to_string(n) + ")",
                           histogram);
}

Design generate(const GeneratorMatrix& g, long n, std::optional<MagicRotationSpec> spec,
                std::uint64_t seed, int max_attempts) {
    Rng rng(seed);
    Design d;
    d.p = g.p;
    d.n = n;
    d.G = g;
    d.h = std::pow(static_cast<double>(n) * g.absdet, -1.0 / g.p);
    d.delta = find_delta(g, n, rng, max_attempts);
    d.points = enumerate_points(g, d.h, d.delta);
    d.spec = std::move(spec);
    d.seed = seed;
    return d;
}

}  // namespace dpmpd
