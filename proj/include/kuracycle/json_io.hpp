#pragma once

// JSON shapes used by the CLI.  Complex numbers are [re, im] pairs.

#include <json.hpp>

#include "kuracycle/analysis.hpp"
#include "kuracycle/dynamics.hpp"
#include "kuracycle/polytope.hpp"
#include "kuracycle/solver.hpp"

namespace kuracycle {

inline constexpr const char* kToolVersion = "kuracycle 1.0.0";

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const CVector& v);
CVector vector_from_json(const nlohmann::json& j);

/// {"parity": "odd"|"even", "removed_edge": int|null, "lambda": [...]}
nlohmann::json facet_to_json(const Facet& f);
/// Inverse of facet_to_json; N is inferred from the record.
Facet facet_from_json(const nlohmann::json& j);

nlohmann::json solution_to_json(const TorusSolution& s);
nlohmann::json census_to_json(const CensusReport& r);
nlohmann::json prediction_to_json(const CountPrediction& c);
nlohmann::json witness_to_json(const KernelWitness& w);
nlohmann::json instance_to_json(const CycleInstance& inst);

}  // namespace kuracycle
