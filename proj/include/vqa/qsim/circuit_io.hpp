#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "vqa/qsim/circuit.hpp"
#include "vqa/qsim/distribution.hpp"

namespace vqa::qsim {

// JSON layout:
//   {"num_qubits": n, "measured": [..]?,
//    "gates": [{"kind": "H", "targets": [0]},
//              {"kind": "Phase", "targets": [1], "params": {"angle": 0.5}},
//              {"kind": "Unitary1", "targets": [0], "params": {"matrix": [[re, im], ...]}},
//              {"kind": "Oracle", "targets": [...], "params": {"inputs": k}, "table": [...]},
//              {"kind": "PhaseTable", "targets": [...], "params": {"phases": [...]}}]}

nlohmann::json to_json(const Gate& g);
Gate gate_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Circuit& c);
/// Validates the parsed circuit; throws MalformedCircuit.
Circuit circuit_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Distribution& d);
Distribution distribution_from_json(const nlohmann::json& j);

std::string serialize_circuit(const Circuit& c);
Circuit parse_circuit(const std::string& text);

}  // namespace vqa::qsim
