#pragma once

#include <cstdint>
#include <functional>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace vqa::cli {

inline constexpr int kSchemaVersion = 1;

/// Field-level configuration error (exit status 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ParamType { kInt, kNumber, kString, kBool, kObject, kSeed, kAny };
const char* param_type_name(ParamType t) noexcept;

struct ParamSpec {
  std::string name;
  ParamType type = ParamType::kInt;
  nlohmann::json default_value;  // null: required unless default_text is set
  std::string default_text;      // shown by `list`; set when the default is derived
  std::string help;
  double min = -1e300;
  double max = 1e300;
};

/// Output of one experiment. Every record is a JSON object; the CSV is a
/// header plus rows without the config-hash column, which the writer appends.
struct ExperimentResult {
  std::vector<nlohmann::json> records;
  std::string csv_header;
  std::vector<std::string> csv_rows;
  nlohmann::json summary;
};

using PreparedRun = std::function<ExperimentResult(unsigned workers)>;

struct ExperimentKind {
  std::string name;
  std::string description;
  std::vector<ParamSpec> params;
  /// Builds everything the run needs from validated params (throws
  /// ConfigError) and returns the deferred computation.
  std::function<PreparedRun(const nlohmann::json& params, std::uint64_t seed)> prepare;
};

const std::vector<ExperimentKind>& experiment_kinds();
const ExperimentKind& find_kind(const std::string& name);

/// Text table of every kind and its parameter schema.
std::string list_experiments();

/// Validated, default-filled configuration.
struct ExperimentConfig {
  std::string experiment;
  nlohmann::json params;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string format = "both";

  /// The hashed part: {schema_version, experiment, params, seed}.
  nlohmann::json canonical() const;
  std::string hash() const;
};

/// Checks the top-level layout {experiment, params, seed, output{dir, format}},
/// rejects unknown fields and fills parameter defaults. Throws ConfigError.
ExperimentConfig validate_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

/// SHA-256 hex of canonical().dump().
std::string config_hash(const nlohmann::json& canonical);

/// prepare + run. ConfigError for bad parameters; anything else is a runtime failure.
ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned workers);

/// Header and rows with the config hash appended as the last column.
std::string render_csv(const ExperimentResult& r, const std::string& hash);

/// Throws std::domain_error when any number in `j` is NaN or infinite.
void require_finite(const nlohmann::json& j);

}  // namespace vqa::cli
