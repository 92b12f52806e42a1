#include "dpmpd/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

namespace dpmpd {

GeneratorMatrix base_generator(int p, LatticeFamily base, const std::optional<Matrix>& custom) {
    switch (base) {
        case LatticeFamily::Integer:
            return generator_integer(p);
        case LatticeFamily::DensestPacking:
            return generator_densest_packing(p);
        case LatticeFamily::ThinnestCovering:
            return generator_thinnest_covering(p);
        case LatticeFamily::Interleaved: {
            if (!custom)
                throw std::invalid_argument(
                    "base_generator: interleaved base needs an explicit generator matrix");
            if (custom->rows() != p)
                throw std::invalid_argument("base_generator: generator dimension mismatch");
            return generator_interleaved(*custom);
        }
        case LatticeFamily::Rotated:
            throw std::invalid_argument("base_generator: rotated is not a base family");
    }
    throw std::logic_error("base_generator: unknown family");
}

namespace {

struct TrialOutcome {
    MagicRotationSpec spec;
    double score = -std::numeric_limits<double>::infinity();
    bool delta_failed = false;
    Design design;  // meaningful only when !delta_failed
};

TrialOutcome run_trial(int trial, const GeneratorMatrix& base_g, long n,
                       std::uint64_t master_seed, const SearchOptions& opt) {
    const std::uint64_t trial_seed = mix_seed(master_seed, static_cast<std::uint64_t>(trial));
    TrialOutcome out;
    Rng spec_rng(mix_seed(trial_seed, 1));
    if (opt.fixed_spec)
        out.spec = *opt.fixed_spec;
    else if (opt.policy == RotationPolicy::Magic)
        out.spec = sample_spec(base_g.p, base_g.base, spec_rng);
    else
        out.spec = sample_random_givens(base_g.p, spec_rng);
    const Matrix r = build_rotation(out.spec);
    const GeneratorMatrix rotated = rotate(base_g, r);
    try {
        out.design =
            generate(rotated, n, out.spec, mix_seed(trial_seed, 2), opt.delta_max_attempts);
    } catch (const DeltaSearchError&) {
        out.delta_failed = true;
        return out;
    }
    out.score = opt.score_fn ? opt.score_fn(out.design.points, out.design.n, out.design.p)
                             : score(out.design.points, out.design.n, out.design.p);
    return out;
}

}  // namespace

SearchReport construct(int p, long n, int w, std::uint64_t master_seed,
                       const SearchOptions& opt) {
    if (p < 2 || p > 8) throw std::invalid_argument("construct: p must be in [2, 8]");
    if (n < 2) throw std::invalid_argument("construct: n must be >= 2");
    if (w < 1) throw std::invalid_argument("construct: w must be >= 1");

    const GeneratorMatrix base_g = base_generator(p, opt.base, opt.custom_generator);

    std::vector<TrialOutcome> outcomes(w);
    int threads = opt.threads > 0 ? opt.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = std::min(threads, w);
    if (threads == 1) {
        for (int t = 0; t < w; ++t) outcomes[t] = run_trial(t, base_g, n, master_seed, opt);
    } else {
        // Work stealing over an indexed result array: the schedule cannot
        // affect the aggregate because trial t always lands in outcomes[t].
        std::atomic<int> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto worker = [&] {
            while (true) {
                const int t = next.fetch_add(1);
                if (t >= w) return;
                try {
                    outcomes[t] = run_trial(t, base_g, n, master_seed, opt);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    SearchReport report;
    report.w = w;
    report.master_seed = master_seed;
    report.best_score = -std::numeric_limits<double>::infinity();
    int best_index = -1;
    report.trials.reserve(w);
    for (int t = 0; t < w; ++t) {
        TrialResult tr;
        tr.spec = outcomes[t].spec;
        tr.score = outcomes[t].score;
        tr.delta_failed = outcomes[t].delta_failed;
        tr.accepted = !outcomes[t].delta_failed && outcomes[t].score > report.best_score;
        if (tr.accepted) {
            report.best_score = outcomes[t].score;
            best_index = t;
        }
        report.trials.push_back(std::move(tr));
    }
    if (best_index < 0)
        throw SearchExhaustionError(
            "construct: every trial failed its perturbation search (n = " + std::to_string(n) +
            ")");
    report.best = std::move(outcomes[best_index].design);
    return report;
}

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Slope of the least-squares line through (x_i, y_i).
double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace

RateStudy rate_study(int p, LatticeFamily base, RotationPolicy policy,
                     const std::vector<long>& n_list, int reps, std::uint64_t master_seed,
                     const RateStudyOptions& options) {
    if (n_list.size() < 3) throw std::invalid_argument("rate_study: need at least 3 sizes");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw std::invalid_argument("rate_study: n_list must be strictly increasing");
    if (reps < 1) throw std::invalid_argument("rate_study: reps must be >= 1");

    RateStudy study;
    study.base = base;
    study.policy = policy;
    study.n_list = n_list;
    study.reps = reps;
    study.metrics.resize(n_list.size());

    SearchOptions sopt;
    sopt.base = base;
    sopt.policy = policy;
    sopt.custom_generator = options.custom_generator;
    sopt.fixed_spec = options.fixed_spec;
    sopt.threads = options.threads;
    sopt.delta_max_attempts = options.delta_max_attempts;

    for (std::size_t i = 0; i < n_list.size(); ++i) {
        study.metrics[i].reserve(reps);
        for (int r = 0; r < reps; ++r) {
            const std::uint64_t seed =
                mix_seed(master_seed, (static_cast<std::uint64_t>(i) << 20) |
                                          static_cast<std::uint64_t>(r));
            SearchReport report = construct(p, n_list[i], options.w, seed, sopt);
            study.metrics[i].push_back(metrics_report(report.best, options.metrics_m));
        }
    }

    // Slope fits through per-n medians on the log-log scale.
    std::vector<double> log_n;
    log_n.reserve(n_list.size());
    for (long n : n_list) log_n.push_back(std::log(static_cast<double>(n)));
    study.slopes.min_proj_sep.resize(p);
    for (int k = 0; k < p; ++k) {
        std::vector<double> log_med;
        for (std::size_t i = 0; i < n_list.size(); ++i) {
            std::vector<double> vals;
            for (const auto& m : study.metrics[i]) vals.push_back(m.min_proj_sep[k]);
            log_med.push_back(std::log(median(std::move(vals))));
        }
        study.slopes.min_proj_sep[k] = ols_slope(log_n, log_med);
    }
    {
        std::vector<double> log_med;
        for (std::size_t i = 0; i < n_list.size(); ++i) {
            std::vector<double> vals;
            for (const auto& m : study.metrics[i])
                vals.push_back(*std::max_element(m.uni_fill.begin(), m.uni_fill.end()));
            log_med.push_back(std::log(median(std::move(vals))));
        }
        study.slopes.uni_fill = ols_slope(log_n, log_med);
    }
    return study;
}

}  // namespace dpmpd
