#include "vexlab/serialize.hpp"

namespace vexlab {

using nlohmann::json;

void to_json(json& j, const Domain& d) {
    j = {{"dim", d.dim()}, {"half_extent_log2", d.half_extent_log2()}, {"level", d.level()}};
    if (d.is_thirds()) j["subdivision"] = 3;
}

void to_json(json& j, const NormResult& r) {
    j = {{"value", r.value}, {"bisection_iters", r.bisection_iters}, {"residual", r.residual},
         {"converged", r.converged}};
}

void to_json(json& j, const HolderReport& r) {
    j = {{"lhs", r.lhs}, {"rhs", r.rhs}, {"r_p", r.r_p}, {"holds", r.holds}};
}

void to_json(json& j, const DyadicCube& q) {
    j = {{"shift", json::array({q.shift[0], q.shift[1]})}, {"k", q.k}};
    j["m"] = q.dim == 1 ? json::array({q.m[0]}) : json::array({q.m[0], q.m[1]});
    j["lower"] = q.dim == 1 ? json::array({q.lower(0)}) : json::array({q.lower(0), q.lower(1)});
    j["side"] = q.side_length();
}

void to_json(json& j, const LogHolderCertificate& c) {
    j = {{"c_local", c.c_local}, {"c_infinity", c.c_infinity}, {"pair_count", c.pair_count}};
}

void to_json(json& j, const MirrorReport& r) {
    j = {{"eps", r.eps},
         {"grid_product", r.grid_product},
         {"closed_product", r.closed_product},
         {"grid_slope", r.grid_slope},
         {"closed_slope", r.closed_slope},
         {"right_half_constant", r.right_half_constant}};
}

void to_json(json& j, const SparseInvariants& s) {
    j = {{"disjoint", s.disjoint},
         {"level_sets", s.level_sets},
         {"average_bracket", s.average_bracket},
         {"nutshell_measure", s.nutshell_measure},
         {"nutshell_partition", s.nutshell_partition},
         {"maximal_cubes", s.maximal_cubes}};
}

void to_json(json& j, const CarlesonReport& r) {
    j = {{"lhs", r.lhs}, {"rhs", r.rhs}, {"ratio", r.ratio()}};
}

void to_json(json& j, const OperatorNormEstimate& e) {
    j = {{"lower", e.lower}, {"upper", e.upper}, {"probes", e.probes}, {"safety", e.safety}};
}

void to_json(json& j, const RdfReport& r) {
    j = {{"pointwise", r.pointwise}, {"norm_ratio", r.norm_ratio}, {"norm_bound", r.norm_bound},
         {"a1", r.a1},               {"a1_bound", r.a1_bound},     {"a1_holds", r.a1_holds}};
}

void to_json(json& j, const ExtrapolationReport& r) {
    json recs = json::array();
    for (const auto& x : r.records) {
        recs.push_back({{"ratio", x.ratio},
                        {"pairing", x.pairing},
                        {"i1", x.i1},
                        {"i2", x.i2},
                        {"holder_chain", x.holder_chain},
                        {"w0_constant", x.w0_constant},
                        {"hypothesis_ratio", x.hypothesis_ratio}});
    }
    j = {{"records", recs},
         {"skipped", r.skipped},
         {"max_ratio", r.max_ratio},
         {"max_hypothesis_ratio", r.max_hypothesis_ratio},
         {"holder_chain", r.holder_chain}};
}

json cube_json(const Domain& d, const Cube& q) {
    json j;
    j["corner"] = d.dim() == 1 ? json::array({q.corner[0]}) : json::array({q.corner[0], q.corner[1]});
    j["side_cells"] = q.side_cells;
    j["lower"] = d.dim() == 1 ? json::array({d.edge(q.corner[0])})
                              : json::array({d.edge(q.corner[0]), d.edge(q.corner[1])});
    j["side"] = q.side_length(d);
    return j;
}

json constant_report_json(const ConstantReport& r) {
    return {{"value", r.value},
            {"argmax", cube_json(r.cube_domain, r.argmax)},
            {"cube_domain", r.cube_domain},
            {"cubes_examined", r.cubes_examined},
            {"family", family_name(r.family)},
            {"exhaustive", r.exhaustive}};
}

namespace {

json run_length(const std::vector<std::size_t>& sorted) {
    json out = json::array();
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i + 1;
        while (j < sorted.size() && sorted[j] == sorted[j - 1] + 1) ++j;
        out.push_back(json::array({sorted[i], j - i}));
        i = j;
    }
    return out;
}

}  // namespace

json sparse_family_json(const SparseFamily& f) {
    json levels = json::array();
    for (const auto& lvl : f.levels) {
        json cubes = json::array();
        for (const auto& q : lvl.cubes) {
            json m = q.cube.dim == 1 ? json::array({q.cube.m[0]}) : json::array({q.cube.m[0], q.cube.m[1]});
            cubes.push_back({{"k", q.cube.k}, {"m", m}, {"average", q.average}, {"nutshell", run_length(q.nutshell)}});
        }
        levels.push_back({{"k", lvl.k}, {"threshold", lvl.threshold}, {"cubes", cubes}});
    }
    const Shift& s = f.frame.shift();
    return {{"a", f.a},
            {"shift", json::array({s[0], s[1]})},
            {"top", f.frame.top()},
            {"leaf_scale", f.frame.top_scale() - f.frame.depth()},
            {"cube_count", f.cube_count()},
            {"levels", levels}};
}

}  // namespace vexlab
