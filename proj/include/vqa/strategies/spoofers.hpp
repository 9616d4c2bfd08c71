#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "vqa/qsim/circuit.hpp"
#include "vqa/qsim/distribution.hpp"

namespace vqa::strategies {

/// What a spoofer hands the verifier: an executable program text plus its
/// declared size. Re-executing `program` reproduces the spoofer's batch.
struct SamplerDescription {
  std::string program;
  std::size_t size = 0;
};

using SpooferOutput = std::pair<SamplerDescription, qsim::SampleBatch>;

/// m i.i.d. uniform n-bit strings; declared "uniform(n)", size 1.
SpooferOutput uniform_spoofer(int n, std::size_t m, std::uint64_t seed);

/// m distinct uniform n-bit strings. Throws std::invalid_argument if m > 2^n.
SpooferOutput distinct_uniform_spoofer(int n, std::size_t m, std::uint64_t seed);

/// Samples the circuit's exact output distribution (null-hypothesis ceiling).
/// Size is the 2^n lookup table it embeds.
SpooferOutput omniscient_spoofer(const qsim::Circuit& circuit, std::size_t m, std::uint64_t seed);

/// Re-runs a description produced by one of the spoofers above.
qsim::SampleBatch execute_description(const SamplerDescription& desc, std::size_t m);

/// Spoofer selected by name for the game harness.
class Spoofer {
 public:
  /// "uniform", "distinct-uniform" or "omniscient"; throws std::invalid_argument otherwise.
  explicit Spoofer(std::string kind);

  const std::string& kind() const noexcept { return kind_; }

  SpooferOutput run(const qsim::Circuit& circuit, const qsim::Distribution& exact, std::size_t m,
                    std::uint64_t seed) const;

 private:
  std::string kind_;
};

}  // namespace vqa::strategies
