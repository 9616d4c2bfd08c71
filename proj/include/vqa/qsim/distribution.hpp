#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vqa/qsim/types.hpp"

namespace vqa::qsim {

/// Exact probability vector over {0,1}^num_bits.
struct Distribution {
  int num_bits = 0;
  std::vector<double> probs;

  Distribution() = default;
  Distribution(int bits, std::vector<double> p);

  static Distribution uniform(int bits);
  static Distribution point_mass(int bits, std::uint64_t x);

  std::size_t size() const noexcept { return probs.size(); }
  double operator[](std::uint64_t x) const { return probs[x]; }

  /// Nonnegative entries summing to 1 within `tol`; throws std::invalid_argument.
  void validate(double tol = kNormTolerance) const;

  /// sum_x p(x)^2
  double collision_probability() const noexcept;
};

/// Measurement outcomes with provenance.
struct SampleBatch {
  int num_bits = 0;
  std::vector<std::uint64_t> samples;
  std::string source_tag;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return samples.size(); }
  bool empty() const noexcept { return samples.empty(); }

  /// Every sample fits in num_bits; throws std::invalid_argument.
  void validate() const;
};

/// Relative frequencies of a batch; all-zero vector for an empty batch.
std::vector<double> empirical_frequencies(const SampleBatch& batch);

/// 1/2 sum_x |d0(x) - d1(x)|. Throws DimensionMismatch.
double total_variation_distance(const Distribution& d0, const Distribution& d1);

/// TVD between a batch's empirical distribution and `d`.
double empirical_tvd(const SampleBatch& batch, const Distribution& d);

/// Elementwise mean; all inputs must share num_bits.
Distribution mixture(const std::vector<Distribution>& parts);

}  // namespace vqa::qsim
