#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hilb/errors.hpp"

namespace hilb::harness {

enum class ModelKind { fdhilb_r, fdhilb_c, finrel };

const char* model_name(ModelKind k);
std::optional<ModelKind> parse_model(std::string_view name);

enum class Expectation { pass, fail };
enum class ReportFormat { text, json };

struct SuiteConfig {
    ModelKind model = ModelKind::fdhilb_c;
    std::size_t dim_min = 1;
    std::size_t dim_max = 5;
    std::uint64_t trials = 200;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    std::vector<std::string> suites; // exactly the suites to run (empty runs none)
    unsigned threads = 1;            // parallelism only; never changes results
};

// Model-appropriate defaults (the relational model runs on smaller carriers).
SuiteConfig default_config(ModelKind model);

// Throws ConfigError with an explanation on any violated precondition.
void validate_config(const SuiteConfig& cfg);

// Suite identifiers applicable to a model, in execution order.
std::vector<std::string> applicable_suites(ModelKind model);

struct SuiteResult {
    std::string id;
    std::string anchor; // the law being checked, in words
    Expectation expected = Expectation::pass;
    bool passed = false; // raw verdict of the checker
    bool ok = false;     // verdict matches the expectation
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double max_residual = 0.0;
    std::string counterexample; // empty when no trial failed
};

struct Report {
    SuiteConfig config;
    std::vector<SuiteResult> suites;
    bool all_expected = false;
    double wall_time_ms = 0.0; // the only field excluded from comparisons
};

// Runs the configured suites. The report is a pure function of the config
// (wall time aside): trials derive their randomness from (seed, suite id,
// trial index), so thread count and run-to-run timing never change verdicts.
Report run_suites(const SuiteConfig& cfg);

std::string emit_report(const Report& report, ReportFormat format);

} // namespace hilb::harness
