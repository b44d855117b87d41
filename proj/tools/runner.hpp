#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qjackson/verify.hpp"

namespace qjackson::cli {

enum class Format { Json, Csv, Text };

struct RunConfig {
    std::vector<std::string> suites{"all"};
    std::vector<int> n_values;  // empty: every dimension the check supports
    double q = 0.5;
    std::uint64_t seed = 0;
    int trials = 10;
    Tolerances tols;
    std::optional<int> cutoff;  // fixed cutoff, no doubling
    std::string report_path;    // empty: stdout
    Format format = Format::Text;
    int workers = 1;
    bool timing = false;
    bool list_only = false;
};

enum ExitCode : int { kPass = 0, kFail = 1, kConfig = 2, kNotConverged = 3 };

// throws ConfigError with a printable message; returns nullopt after --help
std::optional<RunConfig> parse_config(int argc, const char* const* argv);

struct PlannedCheck {
    std::string check_id;
    int trial = 0;
};

// canonical order: check_id, then trial
std::vector<PlannedCheck> plan(const RunConfig& cfg);

QContext context_for(const RunConfig& cfg);

// runs the plan on cfg.workers threads; the result is in plan order
std::vector<CheckReport> run_checks(const RunConfig& cfg, const std::vector<PlannedCheck>& checks);

int exit_code(const std::vector<CheckReport>& reports);

std::string render(const RunConfig& cfg, const std::vector<CheckReport>& reports);

// whole program: parse, run, write, exit code
int run(int argc, const char* const* argv);

}  // namespace qjackson::cli
