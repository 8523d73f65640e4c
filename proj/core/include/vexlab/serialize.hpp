#pragma once

#include <nlohmann/json.hpp>

#include "vexlab/dyadic.hpp"
#include "vexlab/extrapolation.hpp"
#include "vexlab/grid.hpp"
#include "vexlab/norms.hpp"
#include "vexlab/sparse.hpp"
#include "vexlab/weights.hpp"

// nlohmann::json conversions for reports. Cubes are written both as cell
// indices and as coordinates so witnesses can be read without the grid.
namespace vexlab {

void to_json(nlohmann::json& j, const Domain& d);
void to_json(nlohmann::json& j, const NormResult& r);
void to_json(nlohmann::json& j, const HolderReport& r);
void to_json(nlohmann::json& j, const DyadicCube& q);
void to_json(nlohmann::json& j, const LogHolderCertificate& c);
void to_json(nlohmann::json& j, const MirrorReport& r);
void to_json(nlohmann::json& j, const SparseInvariants& s);
void to_json(nlohmann::json& j, const CarlesonReport& r);
void to_json(nlohmann::json& j, const OperatorNormEstimate& e);
void to_json(nlohmann::json& j, const RdfReport& r);
void to_json(nlohmann::json& j, const ExtrapolationReport& r);

nlohmann::json cube_json(const Domain& d, const Cube& q);
nlohmann::json constant_report_json(const ConstantReport& r);

// Cubes as (k, m) per level with run-length encoded nutshells: [first, length] pairs.
nlohmann::json sparse_family_json(const SparseFamily& f);

}  // namespace vexlab
