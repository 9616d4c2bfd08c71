#include "vqa/qsim/circuit_io.hpp"

#include "vqa/common/bits.hpp"

namespace vqa::qsim {

using nlohmann::json;

namespace {

json matrix_to_json(const std::vector<Complex>& m) {
  json arr = json::array();
  for (const Complex& c : m) arr.push_back({c.real(), c.imag()});
  return arr;
}

std::vector<Complex> matrix_from_json(const json& j) {
  std::vector<Complex> m;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw MalformedCircuit("matrix entries must be [re, im]");
    m.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return m;
}

}  // namespace

json to_json(const Gate& g) {
  json j{{"kind", std::string(gate_kind_name(g.kind))}, {"targets", g.targets}};
  switch (g.kind) {
    case GateKind::kPhase:
      j["params"] = {{"angle", g.angle}};
      break;
    case GateKind::kUnitary1:
    case GateKind::kUnitary2:
      j["params"] = {{"matrix", matrix_to_json(g.matrix)}};
      break;
    case GateKind::kOracle:
      j["params"] = {{"inputs", g.oracle_inputs}};
      j["table"] = g.table;
      break;
    case GateKind::kPhaseTable:
      j["params"] = {{"phases", g.phases}};
      break;
    default:
      break;
  }
  return j;
}

Gate gate_from_json(const json& j) {
  try {
    Gate g;
    g.kind = parse_gate_kind(j.at("kind").get<std::string>());
    g.targets = j.at("targets").get<std::vector<int>>();
    const json params = j.value("params", json::object());
    switch (g.kind) {
      case GateKind::kPhase:
        g.angle = params.at("angle").get<double>();
        break;
      case GateKind::kUnitary1:
      case GateKind::kUnitary2:
        g.matrix = matrix_from_json(params.at("matrix"));
        break;
      case GateKind::kOracle:
        g.oracle_inputs = params.at("inputs").get<int>();
        g.table = j.at("table").get<std::vector<std::uint64_t>>();
        break;
      case GateKind::kPhaseTable:
        g.phases = params.at("phases").get<std::vector<double>>();
        break;
      default:
        break;
    }
    return g;
  } catch (const json::exception& e) {
    throw MalformedCircuit(std::string("gate: ") + e.what());
  }
}

json to_json(const Circuit& c) {
  json gates = json::array();
  for (const Gate& g : c.gates) gates.push_back(to_json(g));
  json j{{"num_qubits", c.num_qubits}, {"gates", std::move(gates)}};
  if (!c.measured.empty()) j["measured"] = c.measured;
  return j;
}

Circuit circuit_from_json(const json& j) {
  Circuit c;
  try {
    c.num_qubits = j.at("num_qubits").get<int>();
    for (const auto& g : j.at("gates")) c.gates.push_back(gate_from_json(g));
    if (j.contains("measured")) c.measured = j.at("measured").get<std::vector<int>>();
  } catch (const json::exception& e) {
    throw MalformedCircuit(std::string("circuit: ") + e.what());
  }
  c.validate();
  return c;
}

json to_json(const Distribution& d) {
  return {{"num_bits", d.num_bits}, {"probs", d.probs}};
}

Distribution distribution_from_json(const json& j) {
  Distribution d(j.at("num_bits").get<int>(), j.at("probs").get<std::vector<double>>());
  d.validate();
  return d;
}

std::string serialize_circuit(const Circuit& c) { return to_json(c).dump(); }

Circuit parse_circuit(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedCircuit(std::string("circuit document: ") + e.what());
  }
  return circuit_from_json(j);
}

}  // namespace vqa::qsim
