#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "vqa/families/families.hpp"
#include "vqa/harness/game.hpp"

namespace vqa::harness {

/// Builds a family from {"name": ..., params}. Names: "simon" {n},
/// "simon-fixed-shift" {n, shift}, "random-circuit" {n, depth},
/// "phase-prs" {n, levels}, "hadamard" {n}, "identity" {n}, "bit-flip" {}.
/// Throws std::invalid_argument on unknown names or bad parameters.
families::CircuitFamily family_from_json(const nlohmann::json& j, std::uint64_t seed);

/// {"family", "spoofer", "distinguisher", "samples_per_side",
///  "num_circuit_draws", "repetitions"?, "seed"}.
GameConfig game_config_from_json(const nlohmann::json& j);
GameConfig load_game_config(const std::string& path);

/// One record per trial followed by a summary record.
std::vector<nlohmann::json> report_records(const GameConfig& config, const GameReport& report);

inline constexpr const char* kSummaryCsvHeader = "family,spoofer,distinguisher,t,trials,advantage,std_error";
std::string summary_csv_row(const GameConfig& config, const GameReport& report);

/// printf("%.17g"); throws std::domain_error on NaN or infinity.
std::string format_double(double v);

}  // namespace vqa::harness
