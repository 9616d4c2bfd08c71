#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vqa/families/families.hpp"
#include "vqa/qsim/circuit.hpp"
#include "vqa/qsim/distribution.hpp"

namespace vqa::strategies {

struct DistinguisherResult {
  bool decision = false;
  double score = 0.0;
};

// ---- XEB ------------------------------------------------------------------

/// (1/k) sum_i p_C(x_i) with p_C the exact output distribution.
double xeb_score(const qsim::Distribution& dist, const qsim::SampleBatch& batch);
double xeb_score(const qsim::Circuit& circuit, const qsim::SampleBatch& batch);

/// 1.5 / 2^n: midway between the uniform (1/2^n) and Porter-Thomas (2/2^n) anchors.
double default_xeb_threshold(int num_bits) noexcept;

/// decision = score >= threshold (default_xeb_threshold when unset).
DistinguisherResult xeb_distinguisher(const qsim::Distribution& dist, const qsim::SampleBatch& batch,
                                      std::optional<double> threshold = std::nullopt);
DistinguisherResult xeb_distinguisher(const qsim::Circuit& circuit, const qsim::SampleBatch& batch,
                                      std::optional<double> threshold = std::nullopt);

// ---- Simon ------------------------------------------------------------------

/// Accepts iff the batch's GF(2) null space is exactly {0, s_hat} with
/// s_hat != 0 and table(0) == table(s_hat). score is the recovered rank.
DistinguisherResult simon_distinguisher(const families::SimonInstance& inst, const qsim::SampleBatch& batch);

// ---- Statistical battery ------------------------------------------------------

/// Per-batch false-positive rate of the battery. Two independent batches
/// from the null disagree with probability at most 2 * alpha.
inline constexpr double kBatteryAlpha = 0.005;

/// Null model the battery tests a batch against.
struct BatteryReference {
  int num_bits = 0;
  std::vector<double> bit_one;      // P[bit j = 1]
  std::vector<double> pair_differ;  // P[bit j != bit k], pairs (j<k) in lexicographic order
  double s2 = 0.0;                  // sum_x p(x)^2
  double s3 = 0.0;                  // sum_x p(x)^3
  double score_var = 0.0;           // Var_{x~p}[p(x)] = sum_x p(x) (p(x) - s2)^2
  std::optional<std::vector<double>> probs;  // enables the XEB statistic

  static BatteryReference uniform(int num_bits);
  /// with_xeb: the exact distribution is known to the distinguisher (a circuit was supplied).
  static BatteryReference from_distribution(const qsim::Distribution& d, bool with_xeb);
};

struct BatteryTest {
  std::string name;
  double statistic = 0.0;
  double p_value = 1.0;
};

struct BatteryOutcome {
  DistinguisherResult result;
  std::vector<BatteryTest> tests;
  double threshold = 0.0;  // Bonferroni per-test level
};

/// Runs per-bit frequency, pairwise-bit correlation, collision count and
/// (with a known distribution) XEB tests. decision = 1 iff some test
/// rejects the null at alpha / (number of tests); score = -log10 of the
/// smallest p-value. An empty batch yields decision 0.
BatteryOutcome run_battery(const BatteryReference& ref, const qsim::SampleBatch& batch,
                           double alpha = kBatteryAlpha);

DistinguisherResult battery_distinguisher(const BatteryReference& ref, const qsim::SampleBatch& batch,
                                          double alpha = kBatteryAlpha);

}  // namespace vqa::strategies
