#include "vqa/harness/game.hpp"

#include <cmath>
#include <memory>
#include <optional>

#include "vqa/common/parallel.hpp"
#include "vqa/common/rng.hpp"
#include "vqa/qsim/sampling.hpp"
#include "vqa/qsim/simulator.hpp"

namespace vqa::harness {

using strategies::DistinguisherResult;

Distinguisher::Distinguisher(std::string name, nlohmann::json params)
    : name_(std::move(name)), params_(std::move(params)) {
  if (params_.is_null()) params_ = nlohmann::json::object();
  if (!params_.is_object()) throw std::invalid_argument("distinguisher params must be an object");
  if (name_ == "xeb") {
    for (auto it = params_.begin(); it != params_.end(); ++it)
      if (it.key() != "threshold") throw std::invalid_argument("xeb: unknown parameter '" + it.key() + "'");
    if (params_.contains("threshold") && params_["threshold"].get<double>() < 0.0)
      throw std::invalid_argument("xeb: threshold must be nonnegative");
  } else if (name_ == "simon") {
    if (!params_.empty()) throw std::invalid_argument("simon distinguisher takes no parameters");
  } else if (name_ == "battery") {
    for (auto it = params_.begin(); it != params_.end(); ++it)
      if (it.key() != "alpha") throw std::invalid_argument("battery: unknown parameter '" + it.key() + "'");
    if (params_.contains("alpha")) {
      const double a = params_["alpha"].get<double>();
      if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("battery: alpha must lie in (0, 1)");
    }
  } else {
    throw std::invalid_argument("unknown distinguisher '" + name_ + "'");
  }
}

BoundDistinguisher Distinguisher::bind(const DistinguisherContext& ctx) const {
  if (name_ == "xeb") {
    std::optional<double> threshold;
    if (params_.contains("threshold")) threshold = params_["threshold"].get<double>();
    auto exact = std::make_shared<const qsim::Distribution>(ctx.exact);
    return [exact, threshold](const qsim::SampleBatch& b, const strategies::SamplerDescription*) {
      return strategies::xeb_distinguisher(*exact, b, threshold);
    };
  }
  if (name_ == "simon") {
    const auto* inst = std::get_if<families::SimonInstance>(&ctx.draw.metadata);
    if (inst == nullptr) throw std::invalid_argument("simon distinguisher needs a Simon family draw");
    auto shared = std::make_shared<const families::SimonInstance>(*inst);
    return [shared](const qsim::SampleBatch& b, const strategies::SamplerDescription*) { return strategies::simon_distinguisher(*shared, b); };
  }
  const double alpha = params_.value("alpha", strategies::kBatteryAlpha);
  auto ref = std::make_shared<const strategies::BatteryReference>(
      strategies::BatteryReference::from_distribution(ctx.exact, true));
  return [ref, alpha](const qsim::SampleBatch& b, const strategies::SamplerDescription*) { return strategies::battery_distinguisher(*ref, b, alpha); };
}

const char* game_mode_name(GameMode m) noexcept { return m == GameMode::kVqa ? "VQA" : "UVQA"; }

void GameConfig::validate() const {
  if (samples_per_side < 1) throw std::invalid_argument("samples_per_side must be >= 1");
  if (num_circuit_draws < 1) throw std::invalid_argument("num_circuit_draws must be >= 1");
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
}

double TrialRecord::difference(std::size_t reps) const noexcept {
  const double r = static_cast<double>(reps);
  return std::abs(static_cast<double>(quantum_accepts) / r - static_cast<double>(classical_accepts) / r);
}

TrialError::TrialError(std::size_t trial, const std::string& what)
    : std::runtime_error("trial " + std::to_string(trial) + ": " + what), trial_(trial) {}

namespace {

// Seed streams inside a trial.
constexpr std::uint64_t kQuantumStream = 1;
constexpr std::uint64_t kClassicalStream = 2;

TrialRecord run_trial(const GameConfig& cfg, GameMode mode, std::size_t i) {
  const std::uint64_t draw_root = derive_seed(cfg.seed, 0);
  const std::uint64_t trial_root = derive_seed(cfg.seed, 1, i);
  const families::FamilyDraw draw = cfg.family.draw_at(i, draw_root);
  const qsim::Distribution exact = qsim::output_distribution(draw.circuit);
  const qsim::AliasSampler honest(exact);

  TrialRecord rec;
  rec.index = i;
  rec.circuit_seed = draw.seed;

  const BoundDistinguisher decide = cfg.distinguisher.bind({draw, exact});
  for (std::size_t r = 0; r < cfg.repetitions; ++r) {
    const auto qseed = derive_seed(trial_root, kQuantumStream, r);
    const auto cseed = derive_seed(trial_root, kClassicalStream, r);
    const qsim::SampleBatch zq = honest.draw(cfg.samples_per_side, qseed, "quantum");
    const strategies::SpooferOutput spoof = cfg.spoofer.run(draw.circuit, exact, cfg.samples_per_side, cseed);
    const strategies::SamplerDescription* desc = mode == GameMode::kVqa ? &spoof.first : nullptr;
    const bool dq = decide(zq, desc).decision;
    const bool dc = decide(spoof.second, desc).decision;
    if (r == 0) {
      rec.first_quantum_decision = dq;
      rec.first_classical_decision = dc;
    }
    rec.quantum_accepts += dq ? 1 : 0;
    rec.classical_accepts += dc ? 1 : 0;
  }
  return rec;
}

GameReport run_game(const GameConfig& cfg, GameMode mode) {
  cfg.validate();
  GameReport rep;
  rep.mode = mode;
  rep.repetitions = cfg.repetitions;
  rep.per_trial.resize(cfg.num_circuit_draws);
  parallel_for(cfg.num_circuit_draws, cfg.workers, [&](std::size_t i) {
    try {
      rep.per_trial[i] = run_trial(cfg, mode, i);
    } catch (const TrialError&) {
      throw;
    } catch (const std::exception& e) {
      throw TrialError(i, e.what());
    }
  });

  // Reduction in trial order so the result is independent of scheduling.
  const double trials = static_cast<double>(cfg.num_circuit_draws);
  const double reps = static_cast<double>(cfg.repetitions);
  double sum = 0.0;
  double sum_q = 0.0;
  double sum_c = 0.0;
  double bias = 0.0;
  for (const auto& t : rep.per_trial) {
    sum += t.difference(cfg.repetitions);
    const double p = static_cast<double>(t.quantum_accepts) / reps;
    const double q = static_cast<double>(t.classical_accepts) / reps;
    sum_q += p;
    sum_c += q;
    bias += std::sqrt((p * (1.0 - p) + q * (1.0 - q)) / reps);
  }
  rep.advantage_estimate = sum / trials;
  rep.quantum_accept_rate = sum_q / trials;
  rep.classical_accept_rate = sum_c / trials;
  bias /= trials;
  double var = 0.0;
  if (cfg.num_circuit_draws > 1) {
    for (const auto& t : rep.per_trial) {
      const double d = t.difference(cfg.repetitions) - rep.advantage_estimate;
      var += d * d;
    }
    var /= trials - 1.0;
  }
  rep.std_error = std::sqrt(var / trials + bias * bias);
  return rep;
}

}  // namespace

GameReport run_vqa_game(const GameConfig& config) { return run_game(config, GameMode::kVqa); }

GameReport run_uvqa_game(const GameConfig& config) { return run_game(config, GameMode::kUvqa); }

double estimate_avg_advantage(const families::CircuitFamily& fam, const qsim::Distribution& spoofer_dist,
                              std::size_t num_draws, std::uint64_t seed, unsigned workers) {
  if (num_draws == 0) throw std::invalid_argument("num_draws must be >= 1");
  if (spoofer_dist.num_bits != fam.num_bits()) throw qsim::DimensionMismatch("spoofer width differs from family");
  std::vector<double> tvd(num_draws);
  parallel_for(num_draws, workers, [&](std::size_t k) {
    const auto d = fam.draw_at(k, seed);
    tvd[k] = qsim::total_variation_distance(qsim::output_distribution(d.circuit), spoofer_dist);
  });
  double s = 0.0;
  for (double v : tvd) s += v;
  return s / static_cast<double>(num_draws);
}

double estimate_strong_advantage(const families::CircuitFamily& fam, const qsim::Distribution& spoofer_dist,
                                 std::size_t num_draws, std::uint64_t seed, unsigned workers) {
  if (num_draws == 0) throw std::invalid_argument("num_draws must be >= 1");
  if (spoofer_dist.num_bits != fam.num_bits()) throw qsim::DimensionMismatch("spoofer width differs from family");
  return qsim::total_variation_distance(families::family_mixture_distribution(fam, num_draws, seed, workers),
                                        spoofer_dist);
}

}  // namespace vqa::harness
