#include "doctest.h"

#include <cmath>
#include <limits>
#include <variant>

#include "dpmpd/search.hpp"

using dpmpd::LatticeFamily;
using dpmpd::RotationPolicy;
using dpmpd::SearchOptions;
using dpmpd::SearchReport;

TEST_CASE("construct: deterministic in (p, n, w, seed), independent of threads") {
    SearchOptions opt;
    opt.threads = 1;
    SearchReport a = dpmpd::construct(3, 40, 8, 99, opt);
    SearchReport b = dpmpd::construct(3, 40, 8, 99, opt);
    CHECK(a.best_score == b.best_score);
    CHECK(a.best.points == b.best.points);
    REQUIRE(a.trials.size() == 8);

    opt.threads = 4;
    SearchReport c = dpmpd::construct(3, 40, 8, 99, opt);
    CHECK(a.best_score == c.best_score);
    CHECK(a.best.points == c.best.points);
    for (std::size_t t = 0; t < a.trials.size(); ++t) {
        CHECK(a.trials[t].score == c.trials[t].score);
        CHECK(a.trials[t].accepted == c.trials[t].accepted);
    }
}

TEST_CASE("construct: best score is the max over trials, first-index tie break") {
    SearchReport rep = dpmpd::construct(2, 30, 10, 12345);
    double best = -std::numeric_limits<double>::infinity();
    int first_best = -1;
    for (std::size_t t = 0; t < rep.trials.size(); ++t) {
        if (!rep.trials[t].delta_failed && rep.trials[t].score > best) {
            best = rep.trials[t].score;
            first_best = static_cast<int>(t);
        }
    }
    CHECK(rep.best_score == best);
    // The accepted flags identify a strictly improving prefix chain whose last
    // element is the winner.
    int last_accepted = -1;
    for (std::size_t t = 0; t < rep.trials.size(); ++t)
        if (rep.trials[t].accepted) last_accepted = static_cast<int>(t);
    CHECK(last_accepted == first_best);
    CHECK(std::abs(dpmpd::score(rep.best.points, rep.best.n, rep.best.p) - rep.best_score) <
          1e-12);
}

TEST_CASE("construct: fixed spec pins every trial, random policy samples givens") {
    dpmpd::Dp2Spec dp2{1, 1, 1};
    SearchOptions opt;
    opt.fixed_spec = dpmpd::MagicRotationSpec(dp2);
    SearchReport rep = dpmpd::construct(2, 20, 4, 7, opt);
    for (const auto& t : rep.trials) {
        const auto* s = std::get_if<dpmpd::Dp2Spec>(&t.spec);
        REQUIRE(s != nullptr);
        CHECK(s->u1 == 1);
        CHECK(s->u3 == 1);
    }

    SearchOptions ropt;
    ropt.policy = RotationPolicy::Random;
    SearchReport rrep = dpmpd::construct(4, 30, 4, 7, ropt);
    for (const auto& t : rrep.trials)
        CHECK(std::holds_alternative<dpmpd::RandomGivensSpec>(t.spec));
}

TEST_CASE("construct: integer and thinnest covering bases work end to end") {
    SearchOptions opt;
    opt.base = LatticeFamily::Integer;
    SearchReport rep = dpmpd::construct(2, 25, 4, 3, opt);
    CHECK(rep.best.n == 25);
    CHECK(rep.best.G.base == LatticeFamily::Integer);

    SearchOptions tc;
    tc.base = LatticeFamily::ThinnestCovering;
    SearchReport trep = dpmpd::construct(4, 30, 4, 3, tc);
    CHECK(trep.best.n == 30);
    CHECK(trep.best.G.base == LatticeFamily::ThinnestCovering);
}

TEST_CASE("construct: interleaved base requires and uses the supplied generator") {
    SearchOptions opt;
    opt.base = LatticeFamily::Interleaved;
    CHECK_THROWS_AS(dpmpd::construct(4, 20, 2, 1, opt), std::invalid_argument);

    opt.custom_generator =
        dpmpd::Matrix(4, 4, {1, 1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 1, 2, 0, 0, 0});
    SearchReport rep = dpmpd::construct(4, 20, 4, 1, opt);
    CHECK(rep.best.n == 20);
    CHECK(rep.best.G.base == LatticeFamily::Interleaved);
    CHECK(rep.best.G.absdet == doctest::Approx(2.0));
}

TEST_CASE("construct: exhaustion when the point count is unattainable") {
    // Identity rotation over the 4-dimensional packing cannot produce 64 points.
    dpmpd::RandomGivensSpec identity;
    identity.p = 4;
    identity.angles = std::vector<double>(6, 0.0);
    SearchOptions opt;
    opt.fixed_spec = dpmpd::MagicRotationSpec(identity);
    opt.delta_max_attempts = 400;
    CHECK_THROWS_AS(dpmpd::construct(4, 64, 3, 5, opt), dpmpd::SearchExhaustionError);
}

TEST_CASE("construct: argument validation") {
    CHECK_THROWS_AS(dpmpd::construct(1, 10, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(dpmpd::construct(9, 10, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(dpmpd::construct(3, 1, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(dpmpd::construct(3, 10, 0, 0), std::invalid_argument);
}

TEST_CASE("rate_study: shapes, determinism, and input validation") {
    dpmpd::RateStudyOptions opt;
    opt.w = 3;
    dpmpd::RateStudy study = dpmpd::rate_study(2, LatticeFamily::DensestPacking,
                                               RotationPolicy::Magic, {20, 30, 45}, 2, 8, opt);
    REQUIRE(study.metrics.size() == 3);
    for (const auto& row : study.metrics) REQUIRE(row.size() == 2);
    CHECK(study.slopes.min_proj_sep.size() == 2);
    CHECK(study.n_list == std::vector<long>{20, 30, 45});
    CHECK(std::isfinite(study.slopes.uni_fill));

    dpmpd::RateStudy again = dpmpd::rate_study(2, LatticeFamily::DensestPacking,
                                               RotationPolicy::Magic, {20, 30, 45}, 2, 8, opt);
    CHECK(study.slopes.uni_fill == again.slopes.uni_fill);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t r = 0; r < 2; ++r)
            CHECK(study.metrics[i][r].score == again.metrics[i][r].score);

    CHECK_THROWS_AS(dpmpd::rate_study(2, LatticeFamily::DensestPacking, RotationPolicy::Magic,
                                      {20, 30}, 2, 8, opt),
                    std::invalid_argument);
    CHECK_THROWS_AS(dpmpd::rate_study(2, LatticeFamily::DensestPacking, RotationPolicy::Magic,
                                      {30, 20, 45}, 2, 8, opt),
                    std::invalid_argument);
    CHECK_THROWS_AS(dpmpd::rate_study(2, LatticeFamily::DensestPacking, RotationPolicy::Magic,
                                      {20, 30, 45}, 0, 8, opt),
                    std::invalid_argument);
}
