#include "registry.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <map>
#include <set>
#include <stdexcept>

#include "vexlab/errors.hpp"
#include "vexlab/parallel.hpp"

namespace vexlab::cli {

using nlohmann::json;

Instance make_instance(const ExperimentConfig& c) {
    const Weight w = resolve_weight(c.weight, c.exponent, c.domain());
    const Domain d = w.domain();
    return {d, resolve_exponent(c.exponent, c.domain()).on(d), w};
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"norms",   "dyadic", "weights",       "counterexample",
                                                   "maximal", "sparse", "extrapolation"};
    return names;
}

// One entry per statement that the library implements, grouped by suite.
const std::vector<std::string>& required_check_names() {
    static const std::vector<std::string> names = {
        "counterexample.mirror_extension",
        "dyadic.covering_lattice",
        "dyadic.partition_nesting",
        "extrapolation.dual_operator",
        "extrapolation.extrapolation",
        "extrapolation.rubio_de_francia",
        "extrapolation.vector_valued_constant",
        "extrapolation.vector_valued_global",
        "extrapolation.vector_valued_local",
        "maximal.composition",
        "maximal.dyadic_boundedness",
        "maximal.lattice_bound",
        "maximal.local_boundedness",
        "maximal.local_dyadic_boundedness",
        "maximal.local_r_boundedness",
        "maximal.weak_type",
        "maximal.weighted_dyadic",
        "norms.chi_norm_equivalence",
        "norms.holder",
        "norms.localization",
        "norms.log_comparison",
        "norms.luxemburg_oracle",
        "norms.modular_bracket",
        "norms.unit_ball",
        "sparse.carleson",
        "sparse.decomposition",
        "weights.a1_factorization",
        "weights.a_infinity",
        "weights.ap_local_constant",
        "weights.decay_integral",
        "weights.dual_exponent",
        "weights.extension",
        "weights.measure_ratio",
        "weights.r_independence",
    };
    return names;
}

const std::vector<Check>& registry() {
    static const std::vector<Check> checks = [] {
        std::vector<Check> out;
        add_norm_checks(out);
        add_dyadic_checks(out);
        add_weight_checks(out);
        add_maximal_checks(out);
        add_sparse_checks(out);
        add_extrapolation_checks(out);
        return out;
    }();
    return checks;
}

void assert_registry_complete() {
    std::map<std::string, int> seen;
    for (const auto& c : registry()) ++seen[c.suite + "." + c.name];
    const auto& required = required_check_names();
    for (const auto& name : required) {
        auto it = seen.find(name);
        if (it == seen.end()) throw std::logic_error("check registry is missing " + name);
        if (it->second != 1) throw std::logic_error("check registered twice: " + name);
    }
    for (const auto& [name, count] : seen)
        if (std::find(required.begin(), required.end(), name) == required.end())
            throw std::logic_error("unexpected check in registry: " + name);
}

std::vector<CheckResult> run_suites(const ExperimentConfig& c, const std::vector<std::string>& suites) {
    std::set<std::string> selected;
    for (const auto& s : suites) {
        if (s == "all") {
            selected.insert(suite_names().begin(), suite_names().end());
            continue;
        }
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
            throw FormatError("unknown suite '" + s + "'");
        selected.insert(s);
    }
    std::vector<const Check*> todo;
    for (const auto& check : registry())
        if (selected.count(check.suite)) todo.push_back(&check);

    std::vector<CheckResult> results(todo.size());
    parallel_for(todo.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const Check& check = *todo[i];
            CheckResult& r = results[i];
            r.suite = check.suite;
            r.name = check.suite + "." + check.name;
            r.statement = check.statement;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                check.run(c, r);
            } catch (const std::exception& e) {
                r.pass = false;
                r.witness = {{"exception", e.what()}};
            }
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
    });
    std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return results;
}

json results_json(const ExperimentConfig& c, const std::vector<CheckResult>& results) {
    json checks = json::array();
    std::size_t failed = 0;
    for (const auto& r : results) {
        json j = {{"name", r.name},
                  {"suite", r.suite},
                  {"statement", r.statement},
                  {"pass", r.pass},
                  {"metrics", r.metrics},
                  {"seconds", r.seconds}};
        if (!r.witness.is_null()) j["witness"] = r.witness;
        checks.push_back(std::move(j));
        failed += r.pass ? 0 : 1;
    }
    return {{"config", to_json(c)},
            {"checks", checks},
            {"summary", {{"total", results.size()}, {"failed", failed}, {"passed", results.size() - failed}}}};
}

namespace {

std::string number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

std::string tables_csv(const std::vector<CheckResult>& results) {
    std::string out = "check,probe,value\n";
    for (const auto& r : results)
        for (const auto& row : r.rows) out += csv_field(r.name) + "," + csv_field(row.probe) + "," + number(row.value) + "\n";
    return out;
}

}  // namespace vexlab::cli
