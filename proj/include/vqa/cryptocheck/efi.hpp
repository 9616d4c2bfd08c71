#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "vqa/common/rng.hpp"
#include "vqa/qsim/circuit.hpp"
#include "vqa/qsim/density_matrix.hpp"
#include "vqa/qsim/distribution.hpp"
#include "vqa/strategies/distinguishers.hpp"

namespace vqa::cryptocheck {

/// Produces rho_b: either a circuit (measured register, dephased by default)
/// or a classical distribution embedded as a diagonal state.
struct StateGenerator {
  std::variant<qsim::Circuit, qsim::Distribution> source;
  bool dephase = true;  // circuits only; false keeps the pure state

  int num_bits() const;
  /// Outcome distribution of a computational-basis measurement.
  qsim::Distribution measurement_distribution() const;
  qsim::DensityMatrix density() const;
};

struct EfiCandidate {
  StateGenerator gen0;
  StateGenerator gen1;
  int lambda = 1;  // security-parameter proxy
};

/// 1/2 ||rho0 - rho1||_1 by eigendecomposition of the difference.
double efi_statistical_farness(const EfiCandidate& c);

/// Battery advantage over `trials` pairs of m-sample batches, one from each
/// generator, against gen0's distribution as the null model. The result is
/// the largest |accept-rate difference| over the combined battery decision
/// and each individual test. It is a lower bound on distinguishing power: a
/// small value never shows indistinguishability.
double efi_empirical_indistinguishability(const EfiCandidate& c, std::size_t m, std::size_t trials,
                                          std::uint64_t seed, unsigned workers = 1);

struct EfiVerdict {
  bool farness_pass = false;
  bool indistinguishability_not_refuted = false;
};

struct EfiReport {
  double statistical_farness = 0.0;
  double battery_advantage = 0.0;
  double farness_threshold = 0.0;
  double advantage_threshold = 0.0;
  EfiVerdict verdict;
};

inline constexpr double kIndistinguishabilityBudget = 0.06;

/// farness threshold defaults to 1/lambda.
EfiReport efi_check(const EfiCandidate& c, std::size_t m, std::size_t trials, std::uint64_t seed,
                    std::optional<double> farness_threshold = std::nullopt,
                    double advantage_threshold = kIndistinguishabilityBudget, unsigned workers = 1);

// ---- Decision-rate bookkeeping shared by the battery-based checks ----------------

/// Accept counts for the combined battery decision and each of its tests, on
/// two sides of an experiment.
class BatteryTally {
 public:
  void add(int side, const strategies::BatteryOutcome& out);
  /// Max over the combined decision and every test of |rate0 - rate1|.
  double max_advantage() const;
  /// Binomial standard error of the rate difference at the maximizing entry.
  double max_advantage_sigma() const;
  std::size_t count(int side) const noexcept { return n_[side]; }
  void merge(const BatteryTally& other);

 private:
  std::size_t n_[2] = {0, 0};
  std::vector<std::string> names_;
  std::vector<std::array<std::size_t, 2>> accepts_;  // index 0 = combined
  std::size_t slot(const std::string& name);
};

// ---- Hybrid argument -------------------------------------------------------------

using SampleSource = std::function<std::uint64_t(CounterRng&)>;
using MultiCopyDecider = std::function<bool(std::span<const std::uint64_t>)>;
/// Single-copy decider; `seed` drives its internal randomness.
using SingleCopyDecider = std::function<bool(std::uint64_t challenge, std::uint64_t seed)>;

SampleSource source_from(const qsim::Distribution& d);

/// Picks i uniform in {0..t-1}, draws i samples from gen0, places the
/// challenge at position i (0-based), fills the remaining t-i-1 slots from
/// gen1 and returns the multi-copy decision. Advantage telescopes to
/// (multi-copy advantage) / t.
SingleCopyDecider hybrid_amplify(MultiCopyDecider decider, SampleSource gen0, SampleSource gen1, std::size_t t);

struct AdvantageEstimate {
  double advantage = 0.0;  // rate on gen0 inputs minus rate on gen1 inputs
  double sigma = 0.0;
};

/// `challenges` single-copy decisions per side.
AdvantageEstimate measure_single_copy_advantage(const SingleCopyDecider& d, const SampleSource& gen0,
                                                const SampleSource& gen1, std::size_t challenges,
                                                std::uint64_t seed);

/// `runs` multi-copy decisions per side on t fresh samples.
AdvantageEstimate measure_multi_copy_advantage(const MultiCopyDecider& d, const SampleSource& gen0,
                                               const SampleSource& gen1, std::size_t t, std::size_t runs,
                                               std::uint64_t seed);

}  // namespace vqa::cryptocheck
