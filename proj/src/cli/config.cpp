#include <cmath>
#include <fstream>
#include <sstream>

#include "vqa/cli/experiments.hpp"
#include "vqa/common/bits.hpp"
#include "vqa/common/hash.hpp"

namespace vqa::cli {

using nlohmann::json;

const char* param_type_name(ParamType t) noexcept {
  switch (t) {
    case ParamType::kInt:
      return "int";
    case ParamType::kNumber:
      return "number";
    case ParamType::kString:
      return "string";
    case ParamType::kBool:
      return "bool";
    case ParamType::kObject:
      return "object";
    case ParamType::kSeed:
      return "u64";
    case ParamType::kAny:
      return "string|object";
  }
  return "?";
}

const ExperimentKind& find_kind(const std::string& name) {
  for (const auto& k : experiment_kinds())
    if (k.name == name) return k;
  throw ConfigError("experiment: unknown kind '" + name + "'");
}

std::string list_experiments() {
  std::ostringstream os;
  for (const auto& k : experiment_kinds()) {
    os << k.name << "  -  " << k.description << '\n';
    for (const auto& p : k.params) {
      os << "    " << p.name << " : " << param_type_name(p.type);
      if (!p.default_text.empty()) {
        os << " = " << p.default_text;
      } else if (!p.default_value.is_null()) {
        os << " = " << p.default_value.dump();
      } else {
        os << " (required)";
      }
      if (!p.help.empty()) os << "  # " << p.help;
      os << '\n';
    }
  }
  return os.str();
}

namespace {

std::uint64_t parse_seed(const json& v, const std::string& where) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
  if (v.is_string()) {
    try {
      return parse_hex(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ConfigError(where + ": expected a nonnegative integer or 0x-prefixed hex string");
}

void check_param(const ParamSpec& p, const json& v, const std::string& where) {
  auto range = [&](double x) {
    if (x < p.min || x > p.max) {
      std::ostringstream os;
      os << where << ": " << x << " outside [" << p.min << ", " << p.max << "]";
      throw ConfigError(os.str());
    }
  };
  switch (p.type) {
    case ParamType::kInt:
      if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
      range(static_cast<double>(v.get<std::int64_t>()));
      break;
    case ParamType::kNumber:
      if (!v.is_number()) throw ConfigError(where + ": expected a number");
      if (!std::isfinite(v.get<double>())) throw ConfigError(where + ": must be finite");
      range(v.get<double>());
      break;
    case ParamType::kString:
      if (!v.is_string()) throw ConfigError(where + ": expected a string");
      break;
    case ParamType::kBool:
      if (!v.is_boolean()) throw ConfigError(where + ": expected true or false");
      break;
    case ParamType::kObject:
      if (!v.is_object()) throw ConfigError(where + ": expected an object");
      break;
    case ParamType::kSeed:
      parse_seed(v, where);
      break;
    case ParamType::kAny:
      if (!v.is_object() && !v.is_string()) throw ConfigError(where + ": expected a string or an object");
      break;
  }
}

}  // namespace

json ExperimentConfig::canonical() const {
  return {{"schema_version", kSchemaVersion}, {"experiment", experiment}, {"params", params}, {"seed", to_hex(seed)}};
}

std::string ExperimentConfig::hash() const { return config_hash(canonical()); }

std::string config_hash(const json& canonical) { return digest_hex(sha256(canonical.dump())); }

ExperimentConfig validate_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& k = it.key();
    if (k != "experiment" && k != "params" && k != "seed" && k != "output" && k != "schema_version") {
      throw ConfigError(k + ": unknown field");
    }
  }
  if (j.contains("schema_version") && j["schema_version"] != kSchemaVersion) {
    throw ConfigError("schema_version: unsupported (expected " + std::to_string(kSchemaVersion) + ")");
  }
  if (!j.contains("experiment") || !j["experiment"].is_string()) throw ConfigError("experiment: missing or not a string");
  ExperimentConfig cfg;
  cfg.experiment = j["experiment"].get<std::string>();
  const ExperimentKind& kind = find_kind(cfg.experiment);
  if (j.contains("seed")) cfg.seed = parse_seed(j["seed"], "seed");

  if (j.contains("output")) {
    const json& o = j["output"];
    if (!o.is_object()) throw ConfigError("output: expected an object");
    for (auto it = o.begin(); it != o.end(); ++it) {
      if (it.key() == "dir") {
        if (!it->is_string()) throw ConfigError("output.dir: expected a string");
        cfg.out_dir = it->get<std::string>();
      } else if (it.key() == "format") {
        if (!it->is_string()) throw ConfigError("output.format: expected a string");
        cfg.format = it->get<std::string>();
      } else {
        throw ConfigError("output." + it.key() + ": unknown field");
      }
    }
    if (cfg.format != "jsonl" && cfg.format != "csv" && cfg.format != "both") {
      throw ConfigError("output.format: expected jsonl, csv or both");
    }
  }

  const json params = j.contains("params") ? j["params"] : json::object();
  if (!params.is_object()) throw ConfigError("params: expected an object");
  cfg.params = json::object();
  for (auto it = params.begin(); it != params.end(); ++it) {
    bool known = false;
    for (const auto& p : kind.params) known = known || p.name == it.key();
    if (!known) throw ConfigError("params." + it.key() + ": unknown field for " + cfg.experiment);
  }
  for (const auto& p : kind.params) {
    const std::string where = "params." + p.name;
    if (params.contains(p.name) && !params[p.name].is_null()) {
      check_param(p, params[p.name], where);
      cfg.params[p.name] = params[p.name];
    } else if (!p.default_value.is_null() || !p.default_text.empty()) {
      cfg.params[p.name] = p.default_value;
    } else {
      throw ConfigError(where + ": missing");
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return validate_config(j);
}

void require_finite(const json& j) {
  if (j.is_number_float() && !std::isfinite(j.get<double>())) {
    throw std::domain_error("non-finite number in report");
  }
  if (j.is_structured())
    for (const auto& v : j) require_finite(v);
}

std::string render_csv(const ExperimentResult& r, const std::string& hash) {
  std::string out = r.csv_header + ",config_hash\n";
  for (const auto& row : r.csv_rows) out += row + "," + hash + "\n";
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned workers) {
  const ExperimentKind& kind = find_kind(cfg.experiment);
  PreparedRun run;
  try {
    run = kind.prepare(cfg.params, cfg.seed);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("params: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("params: ") + e.what());
  }
  ExperimentResult r = run(workers);
  for (const auto& rec : r.records) require_finite(rec);
  require_finite(r.summary);
  return r;
}

}  // namespace vqa::cli
