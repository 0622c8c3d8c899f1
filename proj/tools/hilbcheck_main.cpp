// hilbcheck: command-line front end for the verification suites.
//
// Exit codes:
//   0  every suite produced its expected verdict (including expected failures)
//   1  at least one suite produced an unexpected verdict
//   2  usage or configuration error

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hilb/errors.hpp"
#include "hilb/finrel.hpp"
#include "hilb/harness.hpp"

namespace {

using namespace hilb;

std::optional<std::uint64_t> parse_u64(const std::string& s) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (errno != 0 || end != s.c_str() + s.size()) return std::nullopt;
    return v;
}

// Accepts "A..B" or a single "N" (meaning N..N).
std::optional<std::pair<std::size_t, std::size_t>> parse_dims(const std::string& s) {
    const auto sep = s.find("..");
    if (sep == std::string::npos) {
        const auto n = parse_u64(s);
        if (!n) return std::nullopt;
        return std::pair<std::size_t, std::size_t>{*n, *n};
    }
    const auto lo = parse_u64(s.substr(0, sep));
    const auto hi = parse_u64(s.substr(sep + 2));
    if (!lo || !hi) return std::nullopt;
    return std::pair<std::size_t, std::size_t>{*lo, *hi};
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const auto piece = s.substr(start, comma == std::string::npos ? comma : comma - start);
        if (!piece.empty()) out.push_back(piece);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

unsigned threads_from_env() {
    const char* raw = std::getenv("HILBCHECK_THREADS");
    if (raw == nullptr || *raw == '\0') return 1;
    const auto v = parse_u64(raw);
    if (!v || *v < 1 || *v > 64)
        throw ConfigError(std::string("HILBCHECK_THREADS must be an integer in 1..64, got '") +
                          raw + "'");
    return static_cast<unsigned>(*v);
}

int run_check(const std::string& model_s, const std::string& dims_s, std::uint64_t trials,
              std::uint64_t seed, double tol, bool suites_given, const std::string& suites_s,
              const std::string& format_s, const std::string& out_path) {
    const auto model = harness::parse_model(model_s);
    if (!model) throw ConfigError("unknown model '" + model_s + "'");

    harness::SuiteConfig cfg = harness::default_config(*model);
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.tol = tol;
    cfg.threads = threads_from_env();
    if (!dims_s.empty()) {
        const auto dims = parse_dims(dims_s);
        if (!dims) throw ConfigError("cannot parse --dims '" + dims_s + "' (expected A..B)");
        cfg.dim_min = dims->first;
        cfg.dim_max = dims->second;
    }
    if (suites_given) cfg.suites = split_commas(suites_s);
    harness::validate_config(cfg);

    const harness::Report report = harness::run_suites(cfg);
    const auto format =
        format_s == "json" ? harness::ReportFormat::json : harness::ReportFormat::text;
    const std::string text = harness::emit_report(report, format);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw ConfigError("cannot open '" + out_path + "' for writing");
        out << text;
        if (!out) throw ConfigError("failed while writing '" + out_path + "'");
    }
    return report.all_expected ? 0 : 1;
}

int run_counterexample(const std::string& model_s) {
    if (model_s != "finrel")
        throw ConfigError("counterexamples are stored for model finrel only, got '" + model_s +
                          "'");

    const finrel::FinRel model;
    const auto pair = model.equaliser_witness_pair();
    if (!pair) throw ConfigError("no stored counterexample pair");
    const auto& [f, g] = *pair;

    std::cout << "model finrel: a parallel pair of relations with no equaliser\n\n";
    std::cout << "f : 2 -> 1  (relates both elements of the domain)\n"
              << model.describe(f) << "\n";
    std::cout << "g : 2 -> 1  (relates only the first element)\n" << model.describe(g) << "\n";

    const auto search = finrel::equaliser_search(f, g, 3);
    std::cout << "exhaustive search over relations E : X -> 2 with |X| <= " << search.bound
              << ":\n";
    std::cout << "  candidates examined: " << search.candidates_examined << "\n";
    std::cout << "  equaliser found: " << (search.found ? "yes" : "no") << "\n";
    std::cout << "  (the cone relations are {}, {0}, {0,1}; no candidate family of columns\n"
              << "   writes {0,1} as a union in exactly one way, so no cone is universal)\n\n";

    const auto verdict = finrel::scalar_field_check_rel();
    std::cout << "scalars (relations 1 -> 1) do not form a field:\n";
    std::cout << "  " << verdict.witness << "\n";
    std::cout << "  " << verdict.summary << "\n";

    return search.found ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"executable checks for dagger-categorical axioms on matrix models"};
    app.require_subcommand(1);

    std::string model_s = "fdhilb-c";
    std::string dims_s;
    std::uint64_t trials = 200;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    std::string suites_s;
    std::string format_s = "text";
    std::string out_path;

    CLI::App* check = app.add_subcommand("check", "run verification suites against a model");
    check->add_option("--model", model_s, "model: fdhilb-r, fdhilb-c, or finrel")
        ->capture_default_str();
    check->add_option("--dims", dims_s,
                      "dimension range A..B (default 1..5, or 1..3 for finrel)");
    check->add_option("--trials", trials, "randomized trials per suite")->capture_default_str();
    check->add_option("--seed", seed, "root seed for all randomness")->capture_default_str();
    check->add_option("--tol", tol, "numerical tolerance in (0, 1)")->capture_default_str();
    check->add_option("--suites", suites_s, "comma-separated suite subset (default: all)");
    check->add_option("--format", format_s, "report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    check->add_option("--out", out_path, "write the report to this file instead of stdout");

    std::string cex_model = "finrel";
    CLI::App* cex =
        app.add_subcommand("counterexample", "print the stored relational counterexamples");
    cex->add_option("--model", cex_model, "model to query (finrel)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (check->parsed())
            return run_check(model_s, dims_s, trials, seed, tol, check->count("--suites") > 0,
                             suites_s, format_s, out_path);
        return run_counterexample(cex_model);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
