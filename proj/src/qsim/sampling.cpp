#include "vqa/qsim/sampling.hpp"

#include "vqa/common/rng.hpp"

namespace vqa::qsim {

AliasSampler::AliasSampler(const Distribution& dist)
    : num_bits_(dist.num_bits), prob_(dist.size()), alias_(dist.size()) {
  const std::size_t n = dist.size();
  double total = 0.0;
  for (double p : dist.probs) total += p;
  if (!(total > 0.0)) throw std::invalid_argument("cannot sample from a zero distribution");

  std::vector<double> scaled(n);
  std::vector<std::uint64_t> small, large;
  small.reserve(n);
  large.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = dist.probs[i] * static_cast<double>(n) / total;
    (scaled[i] < 1.0 ? small : large).push_back(i);
  }
  while (!small.empty() && !large.empty()) {
    const std::uint64_t s = small.back();
    small.pop_back();
    const std::uint64_t l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to rounding.
  for (std::uint64_t i : large) {
    prob_[i] = 1.0;
    alias_[i] = i;
  }
  std::uint64_t fallback = 0;
  while (dist.probs[fallback] <= 0.0) ++fallback;
  for (std::uint64_t i : small) {
    prob_[i] = scaled[i] > 0.0 ? 1.0 : 0.0;
    alias_[i] = scaled[i] > 0.0 ? i : fallback;
  }
}

SampleBatch AliasSampler::draw(std::size_t m, std::uint64_t seed, std::string tag) const {
  SampleBatch batch{num_bits_, {}, std::move(tag), seed};
  batch.samples.resize(m);
  CounterRng rng(seed);
  for (auto& x : batch.samples) x = (*this)(rng);
  return batch;
}

SampleBatch sample(const Distribution& dist, std::size_t m, std::uint64_t seed) {
  return AliasSampler(dist).draw(m, seed);
}

}  // namespace vqa::qsim
