#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vexlab/exponent.hpp"
#include "vexlab/grid.hpp"
#include "vexlab/weights.hpp"

namespace vexlab::cli {

struct ExponentSpec {
    std::string kind = "lh-smooth";  // constant | two-piece | lh-smooth | decay
    double value = 2.0;              // constant
    double left = 1.5, right = 2.5;  // two-piece
    double amplitude = 0.5;          // lh-smooth
    double c = 1.0;                  // decay
    double p_infinity = 2.0;
};

struct WeightSpec {
    std::string kind = "power";  // constant | power | exponential | extended | product
    double value = 1.0;          // constant
    double alpha = 0.5;          // power
    double beta = 1.0;           // exponential
    double p = 2.0;              // product: w0 w1^{1-p}
    std::shared_ptr<WeightSpec> base, w0, w1;
};

struct ExperimentConfig {
    int dim = 1;
    int half_extent_log2 = 2;
    int level = 6;
    ExponentSpec exponent;
    WeightSpec weight;
    std::vector<std::string> suites = {"all"};
    std::uint64_t seed = 1;
    std::string out = "vexlab-out";
    unsigned threads = 1;

    Domain domain() const { return Domain::make(dim, half_extent_log2, level); }
    ExperimentConfig with_level(int j) const;
    ExperimentConfig with_half_extent(int s) const;
};

// Throws FormatError on unknown keys, wrong types or values that do not
// resolve (p_- <= 1, S + J < 0, ...).
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
void validate(const ExperimentConfig& c);

nlohmann::json to_json(const ExperimentConfig& c);

VariableExponent resolve_exponent(const ExponentSpec& s, const Domain& d);
// Extended weights live on the thirds refinement of d.
Weight resolve_weight(const WeightSpec& s, const ExponentSpec& p, const Domain& d);

}  // namespace vexlab::cli
