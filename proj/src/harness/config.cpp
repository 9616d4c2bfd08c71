#include "vqa/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "vqa/common/bits.hpp"
#include "vqa/common/rng.hpp"

namespace vqa::harness {

using nlohmann::json;

namespace {

void require_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return it.key() == a; })) {
      throw std::invalid_argument(where + "." + it.key() + ": unknown field");
    }
  }
}

template <typename T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw std::invalid_argument(where + "." + key + ": missing");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(where + "." + key + ": wrong type");
  }
}

std::uint64_t seed_field(const json& j, const char* key, const std::string& where) {
  const json& v = j.at(key);
  if (v.is_string()) return parse_hex(v.get<std::string>());
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
  throw std::invalid_argument(where + "." + key + ": expected a nonnegative integer or hex string");
}

qsim::Circuit hadamard_layer(int n) {
  qsim::Circuit c(n);
  for (int q = 0; q < n; ++q) c.add(qsim::gates::h(q));
  return c;
}

void check_width(int n, int lo, int hi, const std::string& where) {
  if (n < lo || n > hi) {
    throw std::invalid_argument(where + ".n: must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

}  // namespace

families::CircuitFamily family_from_json(const json& j, std::uint64_t seed) {
  const std::string where = "family";
  const auto name = field<std::string>(j, "name", where);
  if (name == "simon") {
    require_keys(j, {"name", "n"}, where);
    return families::simon_family(field<int>(j, "n", where), seed);
  }
  if (name == "simon-fixed-shift") {
    require_keys(j, {"name", "n", "shift"}, where);
    return families::simon_fixed_shift_family(field<int>(j, "n", where), seed_field(j, "shift", where), seed);
  }
  if (name == "random-circuit") {
    require_keys(j, {"name", "n", "depth"}, where);
    return families::random_circuit_family(field<int>(j, "n", where), field<int>(j, "depth", where), seed);
  }
  if (name == "phase-prs") {
    require_keys(j, {"name", "n", "levels"}, where);
    const int n = field<int>(j, "n", where);
    check_width(n, 1, qsim::kMaxStateQubits, where);
    return families::phase_prs_family(n, seed, j.value("levels", 2));
  }
  if (name == "hadamard" || name == "identity") {
    require_keys(j, {"name", "n"}, where);
    const int n = field<int>(j, "n", where);
    check_width(n, 1, qsim::kMaxStateQubits, where);
    return families::CircuitFamily::finite(name, {name == "hadamard" ? hadamard_layer(n) : qsim::Circuit(n)});
  }
  if (name == "bit-flip") {
    require_keys(j, {"name"}, where);
    qsim::Circuit flip(1);
    flip.add(qsim::gates::x(0));
    return families::CircuitFamily::finite(name, {qsim::Circuit(1), flip});
  }
  throw std::invalid_argument(where + ".name: unknown family '" + name + "'");
}

GameConfig game_config_from_json(const json& j) {
  const std::string where = "game";
  require_keys(j, {"family", "spoofer", "distinguisher", "samples_per_side", "num_circuit_draws", "repetitions",
                   "seed", "workers"},
               where);
  const std::uint64_t seed = j.contains("seed") ? seed_field(j, "seed", where) : 0;
  if (!j.contains("family")) throw std::invalid_argument(where + ".family: missing");
  if (!j.contains("distinguisher")) throw std::invalid_argument(where + ".distinguisher: missing");

  const json& dj = j.at("distinguisher");
  std::string dname;
  json dparams = json::object();
  if (dj.is_string()) {
    dname = dj.get<std::string>();
  } else {
    require_keys(dj, {"name", "params"}, where + ".distinguisher");
    dname = field<std::string>(dj, "name", where + ".distinguisher");
    if (dj.contains("params")) dparams = dj.at("params");
  }

  const auto t = field<std::int64_t>(j, "samples_per_side", where);
  const auto trials = field<std::int64_t>(j, "num_circuit_draws", where);
  const std::int64_t reps = j.contains("repetitions") ? field<std::int64_t>(j, "repetitions", where) : 20;
  if (t < 1) throw std::invalid_argument(where + ".samples_per_side: must be >= 1");
  if (trials < 1) throw std::invalid_argument(where + ".num_circuit_draws: must be >= 1");
  if (reps < 1) throw std::invalid_argument(where + ".repetitions: must be >= 1");
  const std::int64_t workers = j.contains("workers") ? field<std::int64_t>(j, "workers", where) : 1;
  if (workers < 0) throw std::invalid_argument(where + ".workers: must be >= 0");

  GameConfig cfg{
      .family = family_from_json(j.at("family"), derive_seed(seed, 0xFA)),
      .spoofer = strategies::Spoofer(field<std::string>(j, "spoofer", where)),
      .distinguisher = Distinguisher(dname, dparams),
      .samples_per_side = static_cast<std::size_t>(t),
      .num_circuit_draws = static_cast<std::size_t>(trials),
      .repetitions = static_cast<std::size_t>(reps),
      .seed = seed,
      .workers = static_cast<unsigned>(workers),
  };
  return cfg;
}

GameConfig load_game_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return game_config_from_json(j);
}

std::string format_double(double v) {
  if (!std::isfinite(v)) throw std::domain_error("refusing to serialize a non-finite number");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<json> report_records(const GameConfig& config, const GameReport& report) {
  std::vector<json> out;
  out.reserve(report.per_trial.size() + 1);
  const double reps = static_cast<double>(report.repetitions);
  for (const auto& t : report.per_trial) {
    out.push_back({{"record", "trial"},
                   {"mode", game_mode_name(report.mode)},
                   {"trial", t.index},
                   {"circuit_seed", to_hex(t.circuit_seed)},
                   {"quantum_decision", t.first_quantum_decision ? 1 : 0},
                   {"classical_decision", t.first_classical_decision ? 1 : 0},
                   {"quantum_accept_rate", static_cast<double>(t.quantum_accepts) / reps},
                   {"classical_accept_rate", static_cast<double>(t.classical_accepts) / reps}});
  }
  out.push_back({{"record", "summary"},
                 {"mode", game_mode_name(report.mode)},
                 {"family", config.family.name()},
                 {"spoofer", config.spoofer.kind()},
                 {"distinguisher", config.distinguisher.name()},
                 {"t", config.samples_per_side},
                 {"trials", config.num_circuit_draws},
                 {"repetitions", report.repetitions},
                 {"advantage", report.advantage_estimate},
                 {"std_error", report.std_error},
                 {"quantum_accept_rate", report.quantum_accept_rate},
                 {"classical_accept_rate", report.classical_accept_rate}});
  return out;
}

std::string summary_csv_row(const GameConfig& config, const GameReport& report) {
  std::ostringstream os;
  os << config.family.name() << ',' << config.spoofer.kind() << ',' << config.distinguisher.name() << ','
     << config.samples_per_side << ',' << config.num_circuit_draws << ',' << format_double(report.advantage_estimate)
     << ',' << format_double(report.std_error);
  return os.str();
}

}  // namespace vqa::harness
