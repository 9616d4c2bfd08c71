#include "vqa/strategies/spoofers.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <numeric>
#include <unordered_set>

#include "vqa/common/bits.hpp"
#include "vqa/common/rng.hpp"
#include "vqa/qsim/circuit_io.hpp"
#include "vqa/qsim/sampling.hpp"
#include "vqa/qsim/simulator.hpp"

namespace vqa::strategies {

using nlohmann::json;
using qsim::SampleBatch;

namespace {

SampleBatch uniform_batch(int n, std::size_t m, std::uint64_t seed) {
  SampleBatch b{n, std::vector<std::uint64_t>(m), "uniform", seed};
  CounterRng rng(seed);
  const std::uint64_t mask = low_mask(static_cast<unsigned>(n));
  for (auto& x : b.samples) x = rng() & mask;
  return b;
}

SampleBatch distinct_batch(int n, std::size_t m, std::uint64_t seed) {
  if (n < 1 || n > 62) throw std::invalid_argument("distinct-uniform spoofer needs 1 <= n <= 62");
  const std::uint64_t space = std::uint64_t{1} << n;
  if (m > space) throw std::invalid_argument("cannot draw " + std::to_string(m) + " distinct strings from 2^" +
                                             std::to_string(n));
  SampleBatch b{n, {}, "distinct-uniform", seed};
  b.samples.reserve(m);
  CounterRng rng(seed);
  if (m <= space / 2) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(2 * m);
    while (b.samples.size() < m) {
      const std::uint64_t x = rng.uniform_below(space);
      if (seen.insert(x).second) b.samples.push_back(x);
    }
  } else {
    // Dense regime: partial Fisher-Yates over the whole space.
    std::vector<std::uint64_t> all(space);
    std::iota(all.begin(), all.end(), std::uint64_t{0});
    for (std::size_t i = 0; i < m; ++i) std::swap(all[i], all[i + rng.uniform_below(space - i)]);
    b.samples.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(m));
  }
  return b;
}

std::string program_text(const json& j) { return j.dump(); }

}  // namespace

SpooferOutput uniform_spoofer(int n, std::size_t m, std::uint64_t seed) {
  if (n < 1 || n > 64) throw std::invalid_argument("uniform spoofer needs 1 <= n <= 64");
  SamplerDescription d{program_text({{"spoofer", "uniform"}, {"n", n}, {"seed", to_hex(seed)}}), 1};
  return {std::move(d), uniform_batch(n, m, seed)};
}

SpooferOutput distinct_uniform_spoofer(int n, std::size_t m, std::uint64_t seed) {
  SampleBatch b = distinct_batch(n, m, seed);
  SamplerDescription d{program_text({{"spoofer", "distinct-uniform"}, {"n", n}, {"seed", to_hex(seed)}}), 1};
  return {std::move(d), std::move(b)};
}

SpooferOutput omniscient_spoofer(const qsim::Circuit& circuit, std::size_t m, std::uint64_t seed) {
  const qsim::Distribution exact = qsim::output_distribution(circuit);
  return Spoofer("omniscient").run(circuit, exact, m, seed);
}

SampleBatch execute_description(const SamplerDescription& desc, std::size_t m) {
  const json j = json::parse(desc.program);
  const auto kind = j.at("spoofer").get<std::string>();
  const std::uint64_t seed = parse_hex(j.at("seed").get<std::string>());
  if (kind == "uniform") return uniform_spoofer(j.at("n").get<int>(), m, seed).second;
  if (kind == "distinct-uniform") return distinct_uniform_spoofer(j.at("n").get<int>(), m, seed).second;
  if (kind == "omniscient") return omniscient_spoofer(qsim::circuit_from_json(j.at("circuit")), m, seed).second;
  throw std::invalid_argument("unknown spoofer program '" + kind + "'");
}

Spoofer::Spoofer(std::string kind) : kind_(std::move(kind)) {
  if (kind_ != "uniform" && kind_ != "distinct-uniform" && kind_ != "omniscient") {
    throw std::invalid_argument("unknown spoofer '" + kind_ + "'");
  }
}

SpooferOutput Spoofer::run(const qsim::Circuit& circuit, const qsim::Distribution& exact, std::size_t m,
                           std::uint64_t seed) const {
  const int n = circuit.num_measured();
  if (kind_ == "uniform") return uniform_spoofer(n, m, seed);
  if (kind_ == "distinct-uniform") return distinct_uniform_spoofer(n, m, seed);
  SamplerDescription d{program_text({{"spoofer", "omniscient"},
                                     {"seed", to_hex(seed)},
                                     {"circuit", qsim::to_json(circuit)}}),
                       exact.size()};
  SampleBatch b = qsim::AliasSampler(exact).draw(m, seed, "omniscient");
  return {std::move(d), std::move(b)};
}

}  // namespace vqa::strategies
