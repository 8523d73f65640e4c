#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "vexlab/errors.hpp"

namespace vexlab::cli {

using nlohmann::json;

namespace {

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw FormatError(where + " must be an object");
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) throw FormatError("unknown key '" + k + "' in " + where);
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw FormatError(std::string("bad type for '") + key + "' in " + where);
    }
}

ExponentSpec parse_exponent(const json& j) {
    only_keys(j, {"kind", "value", "left", "right", "amplitude", "c", "p_infinity"}, "exponent");
    ExponentSpec s;
    read(j, "kind", s.kind, "exponent");
    read(j, "value", s.value, "exponent");
    read(j, "left", s.left, "exponent");
    read(j, "right", s.right, "exponent");
    read(j, "amplitude", s.amplitude, "exponent");
    read(j, "c", s.c, "exponent");
    read(j, "p_infinity", s.p_infinity, "exponent");
    if (s.kind == "constant" && !j.contains("p_infinity")) s.p_infinity = s.value;
    return s;
}

WeightSpec parse_weight(const json& j, int depth = 0) {
    if (depth > 4) throw FormatError("weight spec nested too deeply");
    only_keys(j, {"kind", "value", "alpha", "beta", "p", "base", "w0", "w1"}, "weight");
    WeightSpec s;
    read(j, "kind", s.kind, "weight");
    read(j, "value", s.value, "weight");
    read(j, "alpha", s.alpha, "weight");
    read(j, "beta", s.beta, "weight");
    read(j, "p", s.p, "weight");
    if (j.contains("base")) s.base = std::make_shared<WeightSpec>(parse_weight(j["base"], depth + 1));
    if (j.contains("w0")) s.w0 = std::make_shared<WeightSpec>(parse_weight(j["w0"], depth + 1));
    if (j.contains("w1")) s.w1 = std::make_shared<WeightSpec>(parse_weight(j["w1"], depth + 1));
    return s;
}

json exponent_json(const ExponentSpec& s) {
    json j = {{"kind", s.kind}, {"p_infinity", s.p_infinity}};
    if (s.kind == "constant") j["value"] = s.value;
    if (s.kind == "two-piece") j["left"] = s.left, j["right"] = s.right;
    if (s.kind == "lh-smooth") j["amplitude"] = s.amplitude;
    if (s.kind == "decay") j["c"] = s.c;
    return j;
}

json weight_json(const WeightSpec& s) {
    json j = {{"kind", s.kind}};
    if (s.kind == "constant") j["value"] = s.value;
    if (s.kind == "power") j["alpha"] = s.alpha;
    if (s.kind == "exponential") j["beta"] = s.beta;
    if (s.kind == "extended" && s.base) j["base"] = weight_json(*s.base);
    if (s.kind == "product") {
        j["p"] = s.p;
        if (s.w0) j["w0"] = weight_json(*s.w0);
        if (s.w1) j["w1"] = weight_json(*s.w1);
    }
    return j;
}

void validate_exponent(const ExponentSpec& s) {
    static const std::set<std::string> kinds = {"constant", "two-piece", "lh-smooth", "decay"};
    if (!kinds.count(s.kind)) throw FormatError("unknown exponent kind '" + s.kind + "'");
    double lo = s.p_infinity, hi = s.p_infinity;
    if (s.kind == "constant") lo = hi = s.value;
    if (s.kind == "two-piece") lo = std::min(s.left, s.right), hi = std::max(s.left, s.right);
    if (s.kind == "lh-smooth") lo = s.p_infinity - std::abs(s.amplitude), hi = s.p_infinity + std::abs(s.amplitude);
    if (s.kind == "decay") lo = std::min(s.p_infinity, s.p_infinity + s.c), hi = std::max(s.p_infinity, s.p_infinity + s.c);
    if (!(lo > 1.0) || !std::isfinite(hi) || !(s.p_infinity > 1.0))
        throw FormatError("exponent must stay in (1, inf)");
}

void validate_weight(const WeightSpec& s) {
    static const std::set<std::string> kinds = {"constant", "power", "exponential", "extended", "product"};
    if (!kinds.count(s.kind)) throw FormatError("unknown weight kind '" + s.kind + "'");
    if (s.kind == "constant" && !(s.value > 0.0)) throw FormatError("constant weight must be positive");
    if (s.kind == "extended") {
        if (!s.base) throw FormatError("extended weight needs a 'base' weight");
        if (s.base->kind == "extended") throw FormatError("extended weight of an extended weight");
        validate_weight(*s.base);
    }
    if (s.kind == "product") {
        if (!s.w0 || !s.w1) throw FormatError("product weight needs 'w0' and 'w1'");
        if (!(s.p > 1.0)) throw FormatError("product weight needs p > 1");
        if (s.w0->kind == "extended" || s.w1->kind == "extended")
            throw FormatError("product factors must not be extended weights");
        validate_weight(*s.w0);
        validate_weight(*s.w1);
    }
}

}  // namespace

ExperimentConfig ExperimentConfig::with_level(int j) const {
    ExperimentConfig c = *this;
    c.level = j;
    return c;
}

ExperimentConfig ExperimentConfig::with_half_extent(int s) const {
    ExperimentConfig c = *this;
    c.half_extent_log2 = s;
    return c;
}

void validate(const ExperimentConfig& c) {
    if (c.dim != 1 && c.dim != 2) throw FormatError("dim must be 1 or 2");
    if (c.level < 0 || c.level > 14) throw FormatError("level must be in [0, 14]");
    if (c.half_extent_log2 < 0 || c.half_extent_log2 > 6) throw FormatError("half_extent_log2 must be in [0, 6]");
    if (c.dim == 2 && c.level + c.half_extent_log2 > 7) throw FormatError("2D grids are limited to S + J <= 7");
    if (c.threads == 0) throw FormatError("threads must be at least 1");
    validate_exponent(c.exponent);
    validate_weight(c.weight);
}

ExperimentConfig parse_config(const json& j) {
    only_keys(j, {"domain", "exponent", "weight", "suites", "seed", "out", "threads"}, "config");
    ExperimentConfig c;
    if (j.contains("domain")) {
        const json& d = j["domain"];
        only_keys(d, {"dim", "half_extent_log2", "level"}, "domain");
        read(d, "dim", c.dim, "domain");
        read(d, "half_extent_log2", c.half_extent_log2, "domain");
        read(d, "level", c.level, "domain");
    }
    if (j.contains("exponent")) c.exponent = parse_exponent(j["exponent"]);
    if (j.contains("weight")) c.weight = parse_weight(j["weight"]);
    if (j.contains("suites")) {
        if (j["suites"].is_string()) c.suites = {j["suites"].get<std::string>()};
        else read(j, "suites", c.suites, "config");
    }
    read(j, "seed", c.seed, "config");
    read(j, "out", c.out, "config");
    read(j, "threads", c.threads, "config");
    validate(c);
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

json to_json(const ExperimentConfig& c) {
    return {{"domain", {{"dim", c.dim}, {"half_extent_log2", c.half_extent_log2}, {"level", c.level}}},
            {"exponent", exponent_json(c.exponent)},
            {"weight", weight_json(c.weight)},
            {"suites", c.suites},
            {"seed", c.seed},
            {"threads", c.threads}};
}

VariableExponent resolve_exponent(const ExponentSpec& s, const Domain& d) {
    if (s.kind == "constant") return VariableExponent::constant(d, s.value);
    if (s.kind == "two-piece") return two_piece_exponent(d, s.left, s.right, s.p_infinity);
    if (s.kind == "lh-smooth") return lh_smooth_exponent(d, s.p_infinity, s.amplitude);
    if (s.kind == "decay") return decay_exponent(d, s.p_infinity, s.c);
    throw FormatError("unknown exponent kind '" + s.kind + "'");
}

Weight resolve_weight(const WeightSpec& s, const ExponentSpec& p, const Domain& d) {
    if (s.kind == "constant") return Weight::constant(d, s.value);
    if (s.kind == "power") return power_weight(d, s.alpha);
    if (s.kind == "exponential") return exponential_weight(d, s.beta);
    if (s.kind == "extended") {
        return extend_weight(resolve_weight(*s.base, p, d), resolve_exponent(p, d), base_cube(d.dim()));
    }
    if (s.kind == "product") {
        const Weight a = resolve_weight(*s.w0, p, d), b = resolve_weight(*s.w1, p, d);
        std::vector<double> v(d.cell_count());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = Weight::clip(a[i] * std::pow(b[i], 1.0 - s.p));
        return Weight(GridFunction(d, std::move(v)));
    }
    throw FormatError("unknown weight kind '" + s.kind + "'");
}

}  // namespace vexlab::cli
