#include "vqa/cryptocheck/haar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vqa/common/parallel.hpp"
#include "vqa/common/rng.hpp"
#include "vqa/qsim/sampling.hpp"

namespace vqa::cryptocheck {

HaarOutcomeModel haar_measurement_distribution(int n, std::uint64_t seed) {
  if (n < 1 || n > kMaxHaarBits) throw std::invalid_argument("Haar model needs 1 <= n <= 26");
  const std::size_t size = std::size_t{1} << n;
  HaarOutcomeModel m;
  m.n = n;
  m.seed = seed;
  m.g.resize(size);
  m.h.resize(size);
  CounterRng rng(seed);
  for (std::size_t x = 0; x < size; ++x) {
    m.g[x] = rng.normal();
    m.h[x] = rng.normal();
  }
  std::vector<double> w(size);
  for (std::size_t x = 0; x < size; ++x) {
    const double gx = m.g[x] * m.g[x];
    const double hx = m.h[x] * m.h[x];
    m.G += gx;
    m.H += hx;
    w[x] = gx + hx;
  }
  const double total = m.G + m.H;
  for (double& v : w) v /= total;
  m.p = qsim::Distribution(n, std::move(w));
  return m;
}

namespace {

bool has_collision(std::vector<std::uint64_t>& batch) {
  std::sort(batch.begin(), batch.end());
  return std::adjacent_find(batch.begin(), batch.end()) != batch.end();
}

}  // namespace

CollisionReport collision_probability_check(int n, std::size_t m, std::size_t num_distributions,
                                            std::size_t batches_per_draw, std::uint64_t seed, unsigned workers) {
  if (batches_per_draw == 0) throw std::invalid_argument("batches_per_draw must be >= 1");
  CollisionReport r;
  r.n = n;
  r.m = m;
  r.batches_per_draw = batches_per_draw;
  const double md = static_cast<double>(m);
  r.bound_statement = 50.0 * md * md * std::ldexp(1.0, -n);
  r.bound_markov = 50.0 * md * md * std::pow(2.0, -0.5 * n);
  r.statement_vacuous = r.bound_statement >= 1.0;
  r.markov_vacuous = r.bound_markov >= 1.0;
  r.estimates.assign(num_distributions, 0.0);
  r.birthday_values.assign(num_distributions, 0.0);

  parallel_for(num_distributions, workers, [&](std::size_t d) {
    const HaarOutcomeModel model = haar_measurement_distribution(n, derive_seed(seed, d, 0));
    r.birthday_values[d] = md * (md - 1.0) / 2.0 * model.p.collision_probability();
    if (m < 2) return;
    const qsim::AliasSampler sampler(model.p);
    CounterRng rng(derive_seed(seed, d, 1));
    std::vector<std::uint64_t> batch(m);
    std::size_t hits = 0;
    for (std::size_t b = 0; b < batches_per_draw; ++b) {
      for (auto& z : batch) z = sampler(rng);
      hits += has_collision(batch) ? 1 : 0;
    }
    r.estimates[d] = static_cast<double>(hits) / static_cast<double>(batches_per_draw);
  });

  if (num_distributions > 0) {
    std::size_t within_s = 0;
    std::size_t within_m = 0;
    double sum = 0.0;
    for (double e : r.estimates) {
      sum += e;
      within_s += e <= r.bound_statement ? 1 : 0;
      within_m += e <= r.bound_markov ? 1 : 0;
    }
    const double nd = static_cast<double>(num_distributions);
    r.mean_estimate = sum / nd;
    r.fraction_within_statement = static_cast<double>(within_s) / nd;
    r.fraction_within_markov = static_cast<double>(within_m) / nd;
  }
  return r;
}

ChiSquaredReport chi_squared_tail_check(std::size_t k, double x, std::size_t trials, std::uint64_t seed,
                                        unsigned workers) {
  if (k == 0) throw std::invalid_argument("chi-squared check needs k >= 1");
  if (!(x > 0.0)) throw std::invalid_argument("chi-squared check needs x > 0");
  ChiSquaredReport r;
  r.k = k;
  r.x = x;
  r.trials = trials;
  const double kd = static_cast<double>(k);
  r.lower = kd - 2.0 * std::sqrt(kd * x);
  r.upper = kd + 2.0 * std::sqrt(kd * x) + 2.0 * x;
  r.bound = 2.0 * std::exp(-x);

  // Fixed-size chunks keep the random streams independent of the worker count.
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<std::size_t> outside(chunks, 0);
  std::vector<double> sums(chunks, 0.0);
  parallel_for(chunks, workers, [&](std::size_t c) {
    CounterRng rng(derive_seed(seed, c));
    const std::size_t end = std::min(trials, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const double v = rng.chi_squared(kd);
      sums[c] += v;
      outside[c] += (v < r.lower || v > r.upper) ? 1 : 0;
    }
  });
  double total = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) {
    r.out_of_interval += outside[c];
    total += sums[c];
  }
  if (trials > 0) {
    const double td = static_cast<double>(trials);
    r.out_frequency = static_cast<double>(r.out_of_interval) / td;
    r.mean = total / td;
    r.sigma = std::sqrt(std::min(r.bound, 1.0) * (1.0 - std::min(r.bound, 1.0)) / td);
  }
  r.pass = r.out_frequency <= r.bound + 3.0 * r.sigma;
  return r;
}

}  // namespace vqa::cryptocheck
