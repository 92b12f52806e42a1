#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "dpmpd/designgen.hpp"
#include "dpmpd/metrics.hpp"
#include "dpmpd/oracles.hpp"
#include "dpmpd/rotations.hpp"
#include "dpmpd/search.hpp"

namespace dpmpd {

// Fixed decimal formatting with 17 significant digits: enough to round-trip
// any double exactly, so re-reading a design reproduces its metrics bitwise.
std::string format_double17(double v);

struct CsvParseError : std::runtime_error {
    long row = 0;  // 1-based, counting the header if present
    int col = 0;   // 1-based
    CsvParseError(const std::string& what, long r, int c)
        : std::runtime_error(what), row(r), col(c) {}
};

// Writes the design body: header "x1,...,xp", then one row per point,
// LF-terminated.
void write_design_csv(std::ostream& os, const std::vector<double>& points, long n, int p);

// Parses a design file (header optional).  Enforces rectangular rows and
// coordinates inside [0,1] with 1e-12 slack; positions in errors are 1-based.
std::vector<double> read_design_csv(std::istream& is, long& n, int& p);

// Rotation spec serialization: {"variant": ..., parameters...} with exact
// integer / rational fields and decimal angles.
nlohmann::json spec_to_json(const MagicRotationSpec& spec);
MagicRotationSpec spec_from_json(const nlohmann::json& j);

nlohmann::json condition_report_to_json(const ConditionReport& report);

// Sidecar metadata of a generated design (p, n, h, delta, absdet, family,
// base, spec, seed, score).  Scores of -infinity serialize as the string
// "-inf".
nlohmann::json design_meta_to_json(const Design& d, double score);

// Flat metrics object (sep, min_proj_sep, uni_fill, fill_estimate, score,
// c_hat) plus a provenance block.
nlohmann::json metrics_to_json(const ProjectionMetrics& m, nlohmann::json provenance);

nlohmann::json selfcheck_to_json(const std::vector<SelfcheckResult>& results);

// Long-format study table (n, rep, k, metric_name, value) and the slope
// summary object.
void write_rate_study_csv(std::ostream& os, const RateStudy& study);
nlohmann::json rate_study_summary_json(const RateStudy& study);

}  // namespace dpmpd
