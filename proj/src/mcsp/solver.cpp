#include <algorithm>
#include <cmath>

#include "vqa/common/parallel.hpp"
#include "vqa/mcsp/mcsp.hpp"

namespace vqa::mcsp {

const char* variant_name(McspVariant v) noexcept {
  return v == McspVariant::kSamp ? "SampMCSP" : "ObSampMCSP";
}

SamplerCatalog::SamplerCatalog(int n, int r, int size_bound, unsigned workers)
    : n_(n), r_(r), size_bound_(size_bound), workers_(workers) {
  samplers_ = enumerate_samplers(n, r, size_bound);
  dists_.resize(samplers_.size());
  parallel_for(samplers_.size(), workers_, [&](std::size_t i) { dists_[i] = exact_distribution(samplers_[i]); });
}

McspVerdict SamplerCatalog::solve(const qsim::SampleBatch& samples, int size_bound, double tolerance,
                                  McspVariant variant) const {
  if (samples.num_bits != n_) throw qsim::DimensionMismatch("sample width differs from the catalog's outputs");
  if (size_bound > size_bound_) throw std::invalid_argument("size bound exceeds the catalog");
  if (tolerance < 0.0) throw std::invalid_argument("tolerance must be nonnegative");
  samples.validate();
  McspVerdict v;
  v.variant = variant;
  if (samples.empty()) {
    v.yes = !samplers_.empty();
    if (v.yes) v.witness = samplers_.front();
    v.achieved_distance = 0.0;
    return v;
  }

  // Catalog entries are ordered by size, so the eligible ones form a prefix.
  std::size_t eligible = 0;
  while (eligible < samplers_.size() && samplers_[eligible].size() <= static_cast<std::size_t>(size_bound)) ++eligible;

  const std::vector<double> freq = qsim::empirical_frequencies(samples);
  std::vector<double> dist(eligible);
  parallel_for(eligible, workers_, [&](std::size_t i) {
    double s = 0.0;
    const auto& p = dists_[i].probs;
    for (std::size_t x = 0; x < freq.size(); ++x) s += std::abs(freq[x] - p[x]);
    dist[i] = 0.5 * s;
  });

  std::size_t best = eligible;
  double closest = 1.0;
  for (std::size_t i = 0; i < eligible; ++i) {
    closest = std::min(closest, dist[i]);
    if (best == eligible && dist[i] <= tolerance) best = i;
  }
  if (best == eligible) {
    v.achieved_distance = closest;
    return v;
  }

  // Re-simulate the witness from scratch before answering YES.
  const MicroSampler& w = samplers_[best];
  const double check = qsim::empirical_tvd(samples, exact_distribution(w));
  if (!(check <= tolerance)) throw std::logic_error("witness failed re-simulation");
  v.yes = true;
  v.witness = w;
  v.achieved_distance = check;
  return v;
}

McspVerdict samp_mcsp_bruteforce(const qsim::SampleBatch& samples, int size_bound, double tolerance, int r,
                                 McspVariant variant) {
  const SamplerCatalog catalog(samples.num_bits, r, size_bound);
  return catalog.solve(samples, size_bound, tolerance, variant);
}

int universal_verifier(const qsim::SampleBatch& samples, int declared_spoofer_size, double tolerance, int r) {
  if (declared_spoofer_size < 0) throw std::invalid_argument("declared size must be nonnegative");
  if (samples.empty()) return 0;
  return samp_mcsp_bruteforce(samples, declared_spoofer_size, tolerance, r, McspVariant::kObliviousSamp).yes ? 0 : 1;
}

}  // namespace vqa::mcsp
