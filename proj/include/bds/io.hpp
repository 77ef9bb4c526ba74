#pragma once

#include <string>

#include <json.hpp>

#include "bds/circuit.hpp"
#include "bds/measures.hpp"
#include "bds/states.hpp"
#include "bds/tomography.hpp"

namespace bds::io {

using Json = nlohmann::json;

// Density matrix: {"n_qubits": n, "re": [[...]], "im": [[...]]}, row-major.
Json matrix_to_json(const ComplexMatrix& m);
Json state_to_json(const DensityMatrix& rho);
/// Shape checks only (square, 2^n_qubits rows); no physical validation.
ComplexMatrix matrix_from_json(const Json& j);
DensityMatrix state_from_json(const Json& j);

// Counts: {"shots": n, "settings": {"XX": {"pp":..,"pm":..,"mp":..,"mm":..}, ...}}.
Json counts_to_json(const TomographyCounts& counts);
/// Requires all nine settings and per-setting sums equal to "shots".
TomographyCounts counts_from_json(const Json& j);

// Circuit: {"n_qubits": n, "gates": [{"kind": "...", "params": [...], "targets": [...]}]}.
Json circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const Json& j);

Json report_to_json(const ResourceReport& r);

Json read_json_file(const std::string& path);

}  // namespace bds::io
