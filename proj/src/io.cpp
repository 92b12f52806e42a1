#include "dpmpd/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace dpmpd {

using nlohmann::json;

std::string format_double17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_design_csv(std::ostream& os, const std::vector<double>& points, long n, int p) {
    if (points.size() != static_cast<std::size_t>(n) * p)
        throw std::invalid_argument("write_design_csv: shape mismatch");
    for (int j = 0; j < p; ++j) {
        if (j) os << ',';
        os << 'x' << (j + 1);
    }
    os << '\n';
    for (long i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) {
            if (j) os << ',';
            os << format_double17(points[static_cast<std::size_t>(i) * p + j]);
        }
        os << '\n';
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

bool looks_like_header(const std::vector<std::string>& fields) {
    for (const auto& f : fields) {
        char* end = nullptr;
        std::strtod(f.c_str(), &end);
        if (end == f.c_str()) return true;  // non-numeric field
    }
    return false;
}

}  // namespace

std::vector<double> read_design_csv(std::istream& is, long& n, int& p) {
    std::vector<double> points;
    std::string line;
    long row = 0;
    p = -1;
    n = 0;
    bool first_content_line = true;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
        const auto fields = split_csv_line(line);
        if (first_content_line) {
            first_content_line = false;
            if (looks_like_header(fields)) {
                p = static_cast<int>(fields.size());
                continue;
            }
            p = static_cast<int>(fields.size());
        }
        if (static_cast<int>(fields.size()) != p)
            throw CsvParseError("row has " + std::to_string(fields.size()) + " fields, expected " +
                                    std::to_string(p),
                                row, static_cast<int>(fields.size()));
        for (int j = 0; j < p; ++j) {
            const std::string& f = fields[j];
            char* end = nullptr;
            const double v = std::strtod(f.c_str(), &end);
            if (end == f.c_str() || *end != '\0')
                throw CsvParseError("cannot parse '" + f + "' as a number", row, j + 1);
            if (!std::isfinite(v) || v < -1e-12 || v > 1.0 + 1e-12)
                throw CsvParseError("coordinate " + f + " outside [0,1]", row, j + 1);
            points.push_back(v);
        }
        ++n;
    }
    if (n == 0 || p <= 0) throw CsvParseError("no data rows found", row, 1);
    return points;
}

namespace {

json int_matrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json r = json::array();
        for (int j = 0; j < m.cols; ++j) r.push_back(m.at(i, j).convert_to<long long>());
        rows.push_back(std::move(r));
    }
    return rows;
}

IntMatrix int_matrix_from_json(const json& j, int rows, int cols, const std::string& what) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw std::invalid_argument(what + ": expected " + std::to_string(rows) + " rows");
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& r = j[i];
        if (!r.is_array() || static_cast<int>(r.size()) != cols)
            throw std::invalid_argument(what + ": expected " + std::to_string(cols) + " columns");
        for (int c = 0; c < cols; ++c) {
            if (!r[c].is_number_integer())
                throw std::invalid_argument(what + ": entries must be integers");
            m.at(i, c) = r[c].get<long long>();
        }
    }
    return m;
}

long long int_field(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw std::invalid_argument(std::string("rotation spec: missing integer field '") + key +
                                    "'");
    return j[key].get<long long>();
}

}  // namespace

json spec_to_json(const MagicRotationSpec& spec) {
    json j;
    j["variant"] = spec_variant_name(spec);
    std::visit(
        [&j](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TensorPow2Spec>) {
                json vs = json::array();
                for (const auto& v : s.v) vs.push_back(int_matrix_to_json(v));
                j["v"] = std::move(vs);
                j["q"] = s.q;
            } else if constexpr (std::is_same_v<T, Tc4Spec>) {
                j["v1"] = int_matrix_to_json(s.v1);
                j["v2"] = int_matrix_to_json(s.v2);
                j["q2"] = s.q2;
            } else if constexpr (std::is_same_v<T, Dp2Spec>) {
                j["u"] = {s.u1, s.u2, s.u3};
            } else if constexpr (std::is_same_v<T, R3Spec>) {
                j["q"] = s.q.str();
            } else if constexpr (std::is_same_v<T, Dim6Spec>) {
                j["q2"] = s.q2;
                json inner;
                if (std::holds_alternative<Dim6R2Inner>(s.inner)) {
                    const auto& in = std::get<Dim6R2Inner>(s.inner);
                    inner["form"] = "r2";
                    inner["v"] = int_matrix_to_json(in.v);
                    inner["q1"] = in.q1;
                } else {
                    const auto& in = std::get<Dim6ShiftInner>(s.inner);
                    inner["form"] = "shift";
                    inner["u"] = {in.u1, in.u2, in.u3};
                    inner["q1"] = in.q1;
                }
                j["inner"] = std::move(inner);
            } else {
                j["p"] = s.p;
                j["angles"] = s.angles;
            }
        },
        spec);
    return j;
}

MagicRotationSpec spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("variant") || !j["variant"].is_string())
        throw std::invalid_argument("rotation spec: missing 'variant' tag");
    const std::string variant = j["variant"].get<std::string>();
    if (variant == "tensor_pow2") {
        if (!j.contains("v") || !j.contains("q") || !j["v"].is_array() || !j["q"].is_array())
            throw std::invalid_argument("rotation spec: tensor_pow2 needs 'v' and 'q' arrays");
        TensorPow2Spec s;
        for (const auto& vj : j["v"]) s.v.push_back(int_matrix_from_json(vj, 2, 2, "tensor_pow2 V"));
        for (const auto& qj : j["q"]) {
            if (!qj.is_number_integer())
                throw std::invalid_argument("rotation spec: tensor_pow2 q must be integers");
            s.q.push_back(qj.get<long long>());
        }
        if (s.v.empty() || s.v.size() != s.q.size())
            throw std::invalid_argument("rotation spec: tensor_pow2 needs matching nonempty v/q");
        return s;
    }
    if (variant == "tc4") {
        Tc4Spec s;
        if (!j.contains("v1") || !j.contains("v2"))
            throw std::invalid_argument("rotation spec: tc4 needs 'v1' and 'v2'");
        s.v1 = int_matrix_from_json(j["v1"], 2, 2, "tc4 V1");
        s.v2 = int_matrix_from_json(j["v2"], 2, 2, "tc4 V2");
        s.q2 = int_field(j, "q2");
        return s;
    }
    if (variant == "dp2") {
        if (!j.contains("u") || !j["u"].is_array() || j["u"].size() != 3)
            throw std::invalid_argument("rotation spec: dp2 needs a 3-element 'u'");
        Dp2Spec s;
        s.u1 = j["u"][0].get<long long>();
        s.u2 = j["u"][1].get<long long>();
        s.u3 = j["u"][2].get<long long>();
        return s;
    }
    if (variant == "r3") {
        if (!j.contains("q"))
            throw std::invalid_argument("rotation spec: r3 needs 'q'");
        R3Spec s;
        if (j["q"].is_number_integer())
            s.q = Rational(j["q"].get<long long>());
        else if (j["q"].is_string())
            s.q = Rational::parse(j["q"].get<std::string>());
        else
            throw std::invalid_argument("rotation spec: r3 q must be an integer or 'a/b' string");
        return s;
    }
    if (variant == "dim6") {
        Dim6Spec s;
        s.q2 = int_field(j, "q2");
        if (!j.contains("inner") || !j["inner"].is_object())
            throw std::invalid_argument("rotation spec: dim6 needs an 'inner' object");
        const json& in = j["inner"];
        if (!in.contains("form") || !in["form"].is_string())
            throw std::invalid_argument("rotation spec: dim6 inner needs 'form'");
        const std::string form = in["form"].get<std::string>();
        if (form == "r2") {
            Dim6R2Inner inner;
            if (!in.contains("v"))
                throw std::invalid_argument("rotation spec: dim6 r2 inner needs 'v'");
            inner.v = int_matrix_from_json(in["v"], 2, 2, "dim6 V");
            inner.q1 = int_field(in, "q1");
            s.inner = inner;
        } else if (form == "shift") {
            if (!in.contains("u") || !in["u"].is_array() || in["u"].size() != 3)
                throw std::invalid_argument("rotation spec: dim6 shift inner needs 3-element 'u'");
            Dim6ShiftInner inner;
            inner.u1 = in["u"][0].get<long long>();
            inner.u2 = in["u"][1].get<long long>();
            inner.u3 = in["u"][2].get<long long>();
            inner.q1 = int_field(in, "q1");
            s.inner = inner;
        } else {
            throw std::invalid_argument("rotation spec: dim6 inner form must be 'r2' or 'shift'");
        }
        return s;
    }
    if (variant == "random_givens") {
        RandomGivensSpec s;
        s.p = static_cast<int>(int_field(j, "p"));
        if (!j.contains("angles") || !j["angles"].is_array())
            throw std::invalid_argument("rotation spec: random_givens needs 'angles'");
        for (const auto& a : j["angles"]) {
            if (!a.is_number())
                throw std::invalid_argument("rotation spec: angles must be numbers");
            s.angles.push_back(a.get<double>());
        }
        return s;
    }
    throw std::invalid_argument("rotation spec: unknown variant '" + variant + "'");
}

json condition_report_to_json(const ConditionReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"name", c.name}, {"holds", c.holds}, {"detail", c.detail}});
    return json{{"all_pass", report.all_pass()}, {"checks", std::move(checks)}};
}

namespace {

json score_to_json(double score) {
    if (std::isinf(score) && score < 0) return json("-inf");
    return json(score);
}

}  // namespace

json design_meta_to_json(const Design& d, double score) {
    json j;
    j["p"] = d.p;
    j["n"] = d.n;
    j["h"] = d.h;
    j["delta"] = d.delta;
    j["absdet"] = d.G.absdet;
    j["family"] = family_name(d.G.family);
    j["base"] = family_name(d.G.base);
    j["spec"] = d.spec ? spec_to_json(*d.spec) : json(nullptr);
    j["seed"] = d.seed;
    j["score"] = score_to_json(score);
    return j;
}

json metrics_to_json(const ProjectionMetrics& m, json provenance) {
    json j;
    j["sep"] = m.sep;
    j["min_proj_sep"] = m.min_proj_sep;
    j["uni_fill"] = m.uni_fill;
    j["fill_estimate"] = m.fill_estimate;
    j["score"] = score_to_json(m.score);
    j["c_hat"] = m.c_hat;
    j["provenance"] = std::move(provenance);
    return j;
}

json selfcheck_to_json(const std::vector<SelfcheckResult>& results) {
    json arr = json::array();
    for (const auto& r : results) {
        json item;
        item["name"] = r.name;
        item["range"] = r.range;
        item["pass"] = r.pass;
        item["counterexample"] = r.counterexample.empty() ? json(nullptr) : json(r.counterexample);
        arr.push_back(std::move(item));
    }
    return arr;
}

void write_rate_study_csv(std::ostream& os, const RateStudy& study) {
    os << "n,rep,k,metric_name,value\n";
    auto emit = [&os](long n, int rep, int k, const char* name, double value) {
        os << n << ',' << rep << ',' << k << ',' << name << ',' << format_double17(value) << '\n';
    };
    for (std::size_t i = 0; i < study.n_list.size(); ++i) {
        const long n = study.n_list[i];
        for (int r = 0; r < study.reps; ++r) {
            const ProjectionMetrics& m = study.metrics[i][r];
            emit(n, r + 1, 0, "sep", m.sep);
            for (int k = 1; k <= m.p; ++k) emit(n, r + 1, k, "min_proj_sep", m.min_proj_sep[k - 1]);
            for (int k = 1; k <= m.p; ++k) emit(n, r + 1, k, "c_hat", m.c_hat[k - 1]);
            for (int k = 1; k <= m.p; ++k) emit(n, r + 1, k, "uni_fill", m.uni_fill[k - 1]);
            emit(n, r + 1, 0, "fill_estimate", m.fill_estimate);
            emit(n, r + 1, 0, "score", m.score);
        }
    }
}

json rate_study_summary_json(const RateStudy& study) {
    json j;
    j["base"] = family_name(study.base);
    j["policy"] = study.policy == RotationPolicy::Magic ? "magic" : "random";
    j["n_list"] = study.n_list;
    j["reps"] = study.reps;
    j["slopes"] = {{"min_proj_sep", study.slopes.min_proj_sep},
                   {"uni_fill", study.slopes.uni_fill}};
    return j;
}

}  // namespace dpmpd
