#pragma once

#include "json.hpp"

#include "sdec/delaunay.hpp"
#include "sdec/poisson.hpp"

namespace sdec {

inline constexpr int kReportSchemaVersion = 1;

// Machine-readable form of a mesh classification.
nlohmann::json report_json(const SimplicialComplex& complex, const MeshReport& report);

// Summary of one mixed Poisson experiment (no per-vertex data).
nlohmann::json experiment_json(const ExperimentResult& result);

} // namespace sdec
