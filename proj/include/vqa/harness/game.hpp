#pragma once

#include <cstdint>
#include <functional>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "vqa/families/families.hpp"
#include "vqa/strategies/distinguishers.hpp"
#include "vqa/strategies/spoofers.hpp"

namespace vqa::harness {

/// The circuit-side inputs a distinguisher sees for one draw.
struct DistinguisherContext {
  const families::FamilyDraw& draw;
  const qsim::Distribution& exact;
};

/// Decides one batch. The description is null in the universal (UVQA) game.
using BoundDistinguisher = std::function<strategies::DistinguisherResult(
    const qsim::SampleBatch&, const strategies::SamplerDescription*)>;

/// A distinguisher selected by identifier: "xeb" {threshold}, "simon",
/// "battery" {alpha}. One instance serves every circuit draw of a game.
class Distinguisher {
 public:
  Distinguisher(std::string name, nlohmann::json params = nlohmann::json::object());

  const std::string& name() const noexcept { return name_; }
  const nlohmann::json& params() const noexcept { return params_; }

  /// Precomputes per-circuit state (battery reference, Simon metadata).
  BoundDistinguisher bind(const DistinguisherContext& ctx) const;

 private:
  std::string name_;
  nlohmann::json params_;
};

enum class GameMode { kVqa, kUvqa };
const char* game_mode_name(GameMode m) noexcept;

struct GameConfig {
  families::CircuitFamily family;
  strategies::Spoofer spoofer;
  Distinguisher distinguisher;
  std::size_t samples_per_side = 1;    // t
  std::size_t num_circuit_draws = 1;   // trials
  std::size_t repetitions = 20;        // R batches per side per draw
  std::uint64_t seed = 0;
  unsigned workers = 1;

  /// Throws std::invalid_argument when t, trials or R is zero.
  void validate() const;
};

struct TrialRecord {
  std::size_t index = 0;
  std::uint64_t circuit_seed = 0;
  std::size_t quantum_accepts = 0;
  std::size_t classical_accepts = 0;
  bool first_quantum_decision = false;
  bool first_classical_decision = false;

  double difference(std::size_t reps) const noexcept;
};

struct GameReport {
  GameMode mode = GameMode::kVqa;
  double advantage_estimate = 0.0;
  double std_error = 0.0;
  double quantum_accept_rate = 0.0;
  double classical_accept_rate = 0.0;
  std::size_t repetitions = 0;
  std::vector<TrialRecord> per_trial;
};

/// Raised when a draw, spoofer or distinguisher fails inside a trial.
class TrialError : public std::runtime_error {
 public:
  TrialError(std::size_t trial, const std::string& what);
  std::size_t trial() const noexcept { return trial_; }

 private:
  std::size_t trial_;
};

/// advantage = mean over draws of |quantum accept rate - classical accept
/// rate|, each rate from `repetitions` independent batches of t samples.
/// std_error combines the across-draw spread with the per-draw sampling
/// bias of |p - q|.
GameReport run_vqa_game(const GameConfig& config);

/// As run_vqa_game, but the distinguisher never receives the spoofer's
/// description.
GameReport run_uvqa_game(const GameConfig& config);

/// Mean over draws draw_at(0..num_draws-1, seed) of TVD(D_C, spoofer).
double estimate_avg_advantage(const families::CircuitFamily& fam, const qsim::Distribution& spoofer_dist,
                              std::size_t num_draws, std::uint64_t seed = 0, unsigned workers = 1);

/// TVD between the family mixture over the same draws and the spoofer.
double estimate_strong_advantage(const families::CircuitFamily& fam, const qsim::Distribution& spoofer_dist,
                                 std::size_t num_draws, std::uint64_t seed = 0, unsigned workers = 1);

}  // namespace vqa::harness
