// Command-line driver for densest-packing-based maximum projection designs.
//
// Subcommands:
//   generate           best-of-w search, CSV design output plus JSON metadata
//   evaluate           metrics report for an existing design CSV
//   rate-study         empirical convergence-rate sweep over a list of n
//   selfcheck          exact-arithmetic oracle suites
//   validate-rotation  condition report for a rotation spec file
//
// Exit codes: 0 success, 1 usage or validation error, 2 search exhaustion,
// 3 selfcheck failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dpmpd/designgen.hpp"
#include "dpmpd/io.hpp"
#include "dpmpd/lattices.hpp"
#include "dpmpd/metrics.hpp"
#include "dpmpd/oracles.hpp"
#include "dpmpd/rotations.hpp"
#include "dpmpd/search.hpp"

namespace {

using nlohmann::json;

std::string load_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

struct LatticeChoice {
    dpmpd::LatticeFamily family = dpmpd::LatticeFamily::DensestPacking;
    std::optional<dpmpd::Matrix> custom;  // generator rows when interleaved
};

// --lattice accepts the keywords dp, tc, int, or a path to a JSON file
// holding the generator of a standard interleaved lattice: either a p x p
// array of rows or an object with key "g".
LatticeChoice resolve_lattice(const std::string& value, int p) {
    LatticeChoice out;
    if (value == "dp") {
        out.family = dpmpd::LatticeFamily::DensestPacking;
        return out;
    }
    if (value == "tc") {
        out.family = dpmpd::LatticeFamily::ThinnestCovering;
        return out;
    }
    if (value == "int") {
        out.family = dpmpd::LatticeFamily::Integer;
        return out;
    }
    json j = json::parse(load_text(value));
    if (j.is_object()) {
        if (!j.contains("g"))
            throw std::invalid_argument("interleaved lattice file " + value +
                                        ": expected key \"g\" with the generator rows");
        j = j.at("g");
    }
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("interleaved lattice file " + value +
                                    ": expected a nonempty array of rows");
    const int rows = static_cast<int>(j.size());
    if (rows != p)
        throw std::invalid_argument("interleaved lattice file " + value + ": " +
                                    std::to_string(rows) + " rows but --p is " +
                                    std::to_string(p));
    dpmpd::Matrix g(p, p);
    for (int i = 0; i < p; ++i) {
        const json& row = j.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != p)
            throw std::invalid_argument("interleaved lattice file " + value + ": row " +
                                        std::to_string(i + 1) + " is not a list of " +
                                        std::to_string(p) + " numbers");
        for (int k = 0; k < p; ++k) g(i, k) = row.at(k).get<double>();
    }
    dpmpd::generator_interleaved(g);  // throws unless L(2I) subset L(g) subset L(I)
    out.family = dpmpd::LatticeFamily::Interleaved;
    out.custom = std::move(g);
    return out;
}

struct RotationChoice {
    dpmpd::RotationPolicy policy = dpmpd::RotationPolicy::Magic;
    std::optional<dpmpd::MagicRotationSpec> fixed;
};

// --rotation accepts magic, random, or a path to a rotation spec JSON file.
// A spec file is validated against the chosen base family up front.
RotationChoice resolve_rotation(const std::string& value, int p, dpmpd::LatticeFamily base) {
    RotationChoice out;
    if (value == "magic") return out;
    if (value == "random") {
        out.policy = dpmpd::RotationPolicy::Random;
        return out;
    }
    dpmpd::MagicRotationSpec spec = dpmpd::spec_from_json(json::parse(load_text(value)));
    if (dpmpd::spec_dimension(spec) != p)
        throw std::invalid_argument("rotation spec " + value + " is " +
                                    std::to_string(dpmpd::spec_dimension(spec)) +
                                    "-dimensional but --p is " + std::to_string(p));
    dpmpd::ConditionReport report = dpmpd::validate_spec(spec, base);
    if (!report.all_pass())
        throw dpmpd::RotationConditionError("rotation spec " + value +
                                                " fails validation for base " +
                                                dpmpd::family_name(base) + ": " +
                                                report.failed_names(),
                                            report);
    out.fixed = std::move(spec);
    return out;
}

struct GenerateArgs {
    int p = 0;
    long n = 0;
    int w = 100;
    std::uint64_t seed = 0;
    std::string lattice = "dp";
    std::string rotation = "magic";
    std::string out = "design.csv";
    std::string meta;
    int threads = 0;
    int delta_attempts = 100000;
};

int cmd_generate(const GenerateArgs& a) {
    LatticeChoice lat = resolve_lattice(a.lattice, a.p);
    RotationChoice rot = resolve_rotation(a.rotation, a.p, lat.family);

    dpmpd::SearchOptions options;
    options.base = lat.family;
    options.custom_generator = lat.custom;
    options.policy = rot.policy;
    options.fixed_spec = rot.fixed;
    options.threads = a.threads;
    options.delta_max_attempts = a.delta_attempts;

    dpmpd::SearchReport report = dpmpd::construct(a.p, a.n, a.w, a.seed, options);

    {
        std::ofstream os(a.out, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open file for writing: " + a.out);
        dpmpd::write_design_csv(os, report.best.points, report.best.n, report.best.p);
        if (!os) throw std::runtime_error("write failed: " + a.out);
    }
    if (!a.meta.empty())
        save_text(a.meta, dpmpd::design_meta_to_json(report.best, report.best_score).dump(2) + "\n");

    std::cout << "wrote " << a.out << " (p=" << a.p << ", n=" << a.n << ", w=" << a.w
              << ", seed=" << a.seed << ", score=" << dpmpd::format_double17(report.best_score)
              << ")\n";
    return 0;
}

struct EvaluateArgs {
    std::string in;
    long fill_samples = 1L << 14;
};

int cmd_evaluate(const EvaluateArgs& a) {
    long n = 0;
    int p = 0;
    std::vector<double> points;
    if (a.in == "-") {
        points = dpmpd::read_design_csv(std::cin, n, p);
    } else {
        std::ifstream is(a.in, std::ios::binary);
        if (!is) throw std::runtime_error("cannot open file: " + a.in);
        points = dpmpd::read_design_csv(is, n, p);
    }
    dpmpd::ProjectionMetrics m = dpmpd::metrics_report(points, n, p, a.fill_samples);
    json provenance = {{"p", p},          {"n", n},       {"seed", nullptr},
                       {"family", nullptr}, {"spec", nullptr}};
    std::cout << dpmpd::metrics_to_json(m, std::move(provenance)).dump(2) << "\n";
    return 0;
}

struct RateStudyArgs {
    int p = 0;
    std::string lattice = "dp";
    std::string policy = "magic";
    std::string n_list;
    int reps = 3;
    std::uint64_t seed = 0;
    std::string out = "rate_study.csv";
    int w = 20;
    int threads = 0;
    long fill_samples = 1L << 14;
    int delta_attempts = 100000;
};

std::vector<long> parse_n_list(const std::string& text) {
    std::vector<long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("--n-list entry is not an integer: " + item);
        }
        if (pos != item.size())
            throw std::invalid_argument("--n-list entry is not an integer: " + item);
        out.push_back(v);
    }
    return out;
}

int cmd_rate_study(const RateStudyArgs& a) {
    LatticeChoice lat = resolve_lattice(a.lattice, a.p);
    dpmpd::RotationPolicy policy =
        a.policy == "magic" ? dpmpd::RotationPolicy::Magic : dpmpd::RotationPolicy::Random;
    std::vector<long> n_list = parse_n_list(a.n_list);

    dpmpd::RateStudyOptions options;
    options.w = a.w;
    options.threads = a.threads;
    options.metrics_m = a.fill_samples;
    options.delta_max_attempts = a.delta_attempts;
    options.custom_generator = lat.custom;

    dpmpd::RateStudy study =
        dpmpd::rate_study(a.p, lat.family, policy, n_list, a.reps, a.seed, options);

    {
        std::ofstream os(a.out, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open file for writing: " + a.out);
        dpmpd::write_rate_study_csv(os, study);
        if (!os) throw std::runtime_error("write failed: " + a.out);
    }
    std::cout << dpmpd::rate_study_summary_json(study).dump(2) << "\n";
    return 0;
}

struct SelfcheckArgs {
    std::string ranges;
    bool inject_fault = false;
};

// --ranges is a comma-separated list of key=value pairs with keys a and u,
// e.g. "a=4,u=5".
dpmpd::SelfcheckRanges parse_ranges(const std::string& text) {
    dpmpd::SelfcheckRanges r;
    if (text.empty()) return r;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--ranges entry is not key=value: " + item);
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        long long parsed = 0;
        std::size_t pos = 0;
        try {
            parsed = std::stoll(value, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("--ranges value is not an integer: " + item);
        }
        if (pos != value.size() || parsed <= 0)
            throw std::invalid_argument("--ranges value must be a positive integer: " + item);
        if (key == "a") {
            r.a_max = parsed;
        } else if (key == "u") {
            r.u_max = parsed;
        } else {
            throw std::invalid_argument("--ranges key must be a or u: " + item);
        }
    }
    return r;
}

int cmd_selfcheck(const SelfcheckArgs& a) {
    dpmpd::SelfcheckRanges ranges = parse_ranges(a.ranges);
    std::vector<dpmpd::SelfcheckResult> results = dpmpd::run_selfcheck(ranges);
    if (a.inject_fault) {
        dpmpd::SelfcheckResult fault;
        fault.name = "injected_fault";
        fault.range = "n/a";
        fault.pass = false;
        fault.counterexample = "deliberate failure injected via --inject-fault";
        results.push_back(std::move(fault));
    }
    std::cout << dpmpd::selfcheck_to_json(results).dump(2) << "\n";
    for (const auto& r : results)
        if (!r.pass) return 3;
    return 0;
}

struct ValidateRotationArgs {
    std::string spec_file;
    std::string lattice;  // empty = the spec variant's home family
};

int cmd_validate_rotation(const ValidateRotationArgs& a) {
    dpmpd::MagicRotationSpec spec = dpmpd::spec_from_json(json::parse(load_text(a.spec_file)));
    const dpmpd::LatticeFamily base = a.lattice.empty() ? dpmpd::spec_home_family(spec)
                                                        : dpmpd::family_from_name(a.lattice);
    dpmpd::ConditionReport report = dpmpd::validate_spec(spec, base);
    json j = dpmpd::condition_report_to_json(report);
    j["variant"] = dpmpd::spec_variant_name(spec);
    j["p"] = dpmpd::spec_dimension(spec);
    j["base"] = dpmpd::family_name(base);
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Densest packing-based maximum projection designs"};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* generate = app.add_subcommand(
        "generate", "Search for a design and write it as CSV (plus optional JSON metadata)");
    generate->add_option("--p", gen.p, "Dimension (2..8)")->required()->check(CLI::Range(2, 8));
    generate->add_option("--n", gen.n, "Number of design points (>= 2)")
        ->required()
        ->check(CLI::Range(2L, 1000000000L));
    generate->add_option("--w", gen.w, "Number of rotation trials")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    generate->add_option("--seed", gen.seed, "Master seed")->capture_default_str();
    generate->add_option("--lattice", gen.lattice,
                         "Base lattice: dp, tc, int, or a JSON file with an interleaved generator")
        ->capture_default_str();
    generate->add_option("--rotation", gen.rotation,
                         "Rotation policy: magic, random, or a rotation spec JSON file")
        ->capture_default_str();
    generate->add_option("--out", gen.out, "Output CSV path")->capture_default_str();
    generate->add_option("--meta", gen.meta, "Optional JSON metadata path");
    generate->add_option("--threads", gen.threads, "Worker threads (0 = hardware)")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    generate->add_option("--delta-attempts", gen.delta_attempts,
                         "Perturbation attempts per trial before giving up")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    EvaluateArgs eva;
    CLI::App* evaluate =
        app.add_subcommand("evaluate", "Print the metrics report of a design CSV as JSON");
    evaluate->add_option("--in", eva.in, "Design CSV path (- for stdin)")->required();
    evaluate->add_option("--fill-samples", eva.fill_samples, "Halton points for the fill estimate")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    RateStudyArgs rate;
    CLI::App* rate_study = app.add_subcommand(
        "rate-study", "Convergence-rate sweep over a list of run sizes; CSV plus JSON slopes");
    rate_study->add_option("--p", rate.p, "Dimension (2..8)")->required()->check(CLI::Range(2, 8));
    rate_study->add_option("--lattice", rate.lattice,
                           "Base lattice: dp, tc, int, or an interleaved generator JSON file")
        ->capture_default_str();
    rate_study->add_option("--rotation-policy", rate.policy, "magic or random")
        ->capture_default_str()
        ->check(CLI::IsMember({"magic", "random"}));
    rate_study->add_option("--n-list", rate.n_list,
                           "Comma-separated run sizes, at least three, strictly increasing")
        ->required();
    rate_study->add_option("--reps", rate.reps, "Replicates per run size")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    rate_study->add_option("--seed", rate.seed, "Master seed")->capture_default_str();
    rate_study->add_option("--out", rate.out, "Output CSV path")->capture_default_str();
    rate_study->add_option("--w", rate.w, "Rotation trials per construct")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    rate_study->add_option("--threads", rate.threads, "Worker threads (0 = hardware)")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    rate_study->add_option("--fill-samples", rate.fill_samples,
                           "Halton points for the fill estimate")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    rate_study->add_option("--delta-attempts", rate.delta_attempts,
                           "Perturbation attempts per trial before giving up")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    SelfcheckArgs self;
    CLI::App* selfcheck =
        app.add_subcommand("selfcheck", "Run the exact-arithmetic oracle suites");
    selfcheck->add_option("--ranges", self.ranges,
                          "Sweep ranges as key=value pairs, e.g. a=4,u=5");
    selfcheck->add_flag("--inject-fault", self.inject_fault)->group("");  // test hook, hidden

    ValidateRotationArgs val;
    CLI::App* validate = app.add_subcommand(
        "validate-rotation", "Print the condition report of a rotation spec file as JSON");
    validate->add_option("--spec-file", val.spec_file, "Rotation spec JSON path")->required();
    validate->add_option("--lattice", val.lattice,
                         "Base family to validate against: dp, tc, int, or interleaved "
                         "(default: the variant's home family)")
        ->check(CLI::IsMember({"dp", "tc", "int", "interleaved"}));

    try {
        app.parse(argc, argv);
        if (generate->parsed()) return cmd_generate(gen);
        if (evaluate->parsed()) return cmd_evaluate(eva);
        if (rate_study->parsed()) return cmd_rate_study(rate);
        if (selfcheck->parsed()) return cmd_selfcheck(self);
        if (validate->parsed()) return cmd_validate_rotation(val);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const dpmpd::SearchExhaustionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dpmpd::RotationConditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const dpmpd::CsvParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
