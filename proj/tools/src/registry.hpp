#pragma once

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "config.hpp"

namespace vexlab::cli {

struct TableRow {
    std::string probe;
    double value = 0.0;
};

struct CheckResult {
    std::string name;  // "<suite>.<check>"
    std::string suite;
    std::string statement;
    bool pass = true;
    nlohmann::json metrics = nlohmann::json::object();
    nlohmann::json witness;  // null unless the check has one (argmax cube, failing instance)
    std::vector<TableRow> rows;
    double seconds = 0.0;
};

// Resolved exponent and weight on a common domain: the thirds refinement when
// the weight is an extended one, the configured grid otherwise.
struct Instance {
    Domain domain;
    VariableExponent p;
    Weight w;
};

Instance make_instance(const ExperimentConfig& c);

struct Check {
    std::string suite;
    std::string name;
    std::string statement;  // the mathematical statement being exercised
    std::function<void(const ExperimentConfig&, CheckResult&)> run;
};

const std::vector<std::string>& suite_names();

// Every check, in a fixed order. Asserted against required_check_names().
const std::vector<Check>& registry();
const std::vector<std::string>& required_check_names();

// Throws std::logic_error naming the first missing, duplicate or unexpected check.
void assert_registry_complete();

// Runs the selected suites ("all" selects every suite) on the worker pool and
// returns results sorted by name. FormatError for unknown suite names.
std::vector<CheckResult> run_suites(const ExperimentConfig& c, const std::vector<std::string>& suites);

nlohmann::json results_json(const ExperimentConfig& c, const std::vector<CheckResult>& results);
std::string tables_csv(const std::vector<CheckResult>& results);

// Checks by suite, defined in checks_*.cpp.
void add_norm_checks(std::vector<Check>& out);
void add_dyadic_checks(std::vector<Check>& out);
void add_weight_checks(std::vector<Check>& out);
void add_maximal_checks(std::vector<Check>& out);
void add_sparse_checks(std::vector<Check>& out);
void add_extrapolation_checks(std::vector<Check>& out);

}  // namespace vexlab::cli
