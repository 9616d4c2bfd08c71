#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vqa/qsim/distribution.hpp"

namespace vqa::qsim {

/// Walker/Vose alias table: O(1) draws from a fixed distribution.
class AliasSampler {
 public:
  explicit AliasSampler(const Distribution& dist);

  int num_bits() const noexcept { return num_bits_; }

  template <typename Rng>
  std::uint64_t operator()(Rng& rng) const {
    const std::uint64_t column = rng.uniform_below(prob_.size());
    return rng.uniform01() < prob_[column] ? column : alias_[column];
  }

  /// m i.i.d. draws from a generator seeded with `seed`.
  SampleBatch draw(std::size_t m, std::uint64_t seed, std::string tag = "exact") const;

 private:
  int num_bits_;
  std::vector<double> prob_;
  std::vector<std::uint64_t> alias_;
};

/// m i.i.d. samples; identical for identical (dist, m, seed).
SampleBatch sample(const Distribution& dist, std::size_t m, std::uint64_t seed);

}  // namespace vqa::qsim
