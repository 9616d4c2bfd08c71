#include "vqa/qsim/distribution.hpp"

#include <cmath>
#include <string>

#include "vqa/common/bits.hpp"

namespace vqa::qsim {

Distribution::Distribution(int bits, std::vector<double> p) : num_bits(bits), probs(std::move(p)) {
  if (bits < 0 || bits > 30) throw CapacityExceeded("distribution width out of range");
  if (probs.size() != (std::size_t{1} << bits)) {
    throw DimensionMismatch("probability vector length must be 2^num_bits");
  }
}

Distribution Distribution::uniform(int bits) {
  const std::size_t n = std::size_t{1} << bits;
  return Distribution(bits, std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Distribution Distribution::point_mass(int bits, std::uint64_t x) {
  std::vector<double> p(std::size_t{1} << bits, 0.0);
  p.at(x) = 1.0;
  return Distribution(bits, std::move(p));
}

void Distribution::validate(double tol) const {
  double sum = 0.0;
  for (double v : probs) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("negative or non-finite probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > tol) {
    throw std::invalid_argument("probabilities sum to " + std::to_string(sum));
  }
}

double Distribution::collision_probability() const noexcept {
  double s = 0.0;
  for (double v : probs) s += v * v;
  return s;
}

void SampleBatch::validate() const {
  const std::uint64_t mask = low_mask(static_cast<unsigned>(num_bits));
  for (std::uint64_t x : samples) {
    if ((x & ~mask) != 0) {
      throw std::invalid_argument("sample " + std::to_string(x) + " exceeds " +
                                  std::to_string(num_bits) + " bits");
    }
  }
}

std::vector<double> empirical_frequencies(const SampleBatch& batch) {
  std::vector<double> f(std::size_t{1} << batch.num_bits, 0.0);
  if (batch.empty()) return f;
  std::vector<std::uint64_t> counts(f.size(), 0);
  for (std::uint64_t x : batch.samples) ++counts.at(x);
  const auto m = static_cast<double>(batch.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = static_cast<double>(counts[i]) / m;
  return f;
}

double total_variation_distance(const Distribution& d0, const Distribution& d1) {
  if (d0.num_bits != d1.num_bits || d0.size() != d1.size()) {
    throw DimensionMismatch("distributions over " + std::to_string(d0.num_bits) + " and " +
                            std::to_string(d1.num_bits) + " bits");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < d0.size(); ++i) s += std::abs(d0.probs[i] - d1.probs[i]);
  return 0.5 * s;
}

double empirical_tvd(const SampleBatch& batch, const Distribution& d) {
  if (batch.num_bits != d.num_bits) throw DimensionMismatch("batch and distribution widths differ");
  const auto f = empirical_frequencies(batch);
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::abs(f[i] - d.probs[i]);
  return 0.5 * s;
}

Distribution mixture(const std::vector<Distribution>& parts) {
  if (parts.empty()) throw std::invalid_argument("mixture of zero distributions");
  const int bits = parts.front().num_bits;
  std::vector<double> acc(parts.front().size(), 0.0);
  for (const auto& d : parts) {
    if (d.num_bits != bits) throw DimensionMismatch("mixture components differ in width");
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += d.probs[i];
  }
  const double w = 1.0 / static_cast<double>(parts.size());
  for (double& v : acc) v *= w;
  return Distribution(bits, std::move(acc));
}

}  // namespace vqa::qsim
