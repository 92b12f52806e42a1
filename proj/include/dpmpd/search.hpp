#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dpmpd/designgen.hpp"
#include "dpmpd/metrics.hpp"

namespace dpmpd {

enum class RotationPolicy { Magic, Random };

struct TrialResult {
    MagicRotationSpec spec;
    double score = 0.0;        // -infinity when the perturbation search failed
    bool accepted = false;     // whether this trial advanced the running best
    bool delta_failed = false;
};

struct SearchReport {
    Design best;
    double best_score = 0.0;
    std::vector<TrialResult> trials;
    int w = 0;
    std::uint64_t master_seed = 0;
};

struct SearchExhaustionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SearchOptions {
    LatticeFamily base = LatticeFamily::DensestPacking;
    RotationPolicy policy = RotationPolicy::Magic;
    // When set, every trial uses this rotation instead of sampling one.
    std::optional<MagicRotationSpec> fixed_spec;
    // Base generator for LatticeFamily::Interleaved (required there).
    std::optional<Matrix> custom_generator;
    int threads = 0;  // 0 = hardware concurrency
    int delta_max_attempts = 100000;
    // Optional replacement for the default projection score; receives
    // (points, n, p).
    std::function<double(const std::vector<double>&, long, int)> score_fn;
};

// The five-step search: w trials of (sample rotation, rotate the base
// generator, search a perturbation, score), keeping the argmax with
// lowest-trial-index tie-breaking.  Deterministic in (p, n, w, master_seed)
// regardless of thread count.  Throws SearchExhaustionError if every trial
// failed its perturbation search.
SearchReport construct(int p, long n, int w, std::uint64_t master_seed,
                       const SearchOptions& options = {});

// Builds the base generator a search over family `base` starts from.
GeneratorMatrix base_generator(int p, LatticeFamily base,
                               const std::optional<Matrix>& custom = std::nullopt);

struct RateStudyOptions {
    int w = 20;  // per-construct trial budget (study default)
    int threads = 0;
    long metrics_m = 1L << 14;
    int delta_max_attempts = 100000;
    // Base generator for LatticeFamily::Interleaved (required there).
    std::optional<Matrix> custom_generator;
    // When set, every construct in the sweep uses this rotation; replicates
    // then differ only in their perturbation search.
    std::optional<MagicRotationSpec> fixed_spec;
};

struct RateSlopes {
    // OLS slope of ln(median metric) vs ln(n), one per subset size k.
    std::vector<double> min_proj_sep;
    // Same for the per-design worst univariate fill (max over coordinates).
    double uni_fill = 0.0;
};

struct RateStudy {
    LatticeFamily base = LatticeFamily::DensestPacking;
    RotationPolicy policy = RotationPolicy::Magic;
    std::vector<long> n_list;
    int reps = 0;
    // metrics[i][r]: metrics of the best design for n_list[i], replicate r.
    std::vector<std::vector<ProjectionMetrics>> metrics;
    RateSlopes slopes;
};

// Empirical rate check: one construct per (n, replicate), metrics of each
// winner, then log-log slope fits through the per-n medians.
RateStudy rate_study(int p, LatticeFamily base, RotationPolicy policy,
                     const std::vector<long>& n_list, int reps, std::uint64_t master_seed,
                     const RateStudyOptions& options = {});

}  // namespace dpmpd
