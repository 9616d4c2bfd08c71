#include "vqa/strategies/distinguishers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "vqa/qsim/simulator.hpp"
#include "vqa/strategies/gf2.hpp"

namespace vqa::strategies {

using qsim::Distribution;
using qsim::SampleBatch;

// ---- XEB ------------------------------------------------------------------

double xeb_score(const Distribution& dist, const SampleBatch& batch) {
  if (dist.num_bits != batch.num_bits) {
    throw qsim::DimensionMismatch("batch has " + std::to_string(batch.num_bits) +
                                  " bits, circuit measures " + std::to_string(dist.num_bits));
  }
  if (batch.empty()) return 0.0;
  double s = 0.0;
  for (std::uint64_t x : batch.samples) s += dist.probs.at(x);
  return s / static_cast<double>(batch.size());
}

double xeb_score(const qsim::Circuit& circuit, const SampleBatch& batch) {
  if (circuit.num_measured() != batch.num_bits) {
    throw qsim::DimensionMismatch("batch has " + std::to_string(batch.num_bits) +
                                  " bits, circuit measures " + std::to_string(circuit.num_measured()));
  }
  return xeb_score(qsim::output_distribution(circuit), batch);
}

double default_xeb_threshold(int num_bits) noexcept { return 1.5 / std::ldexp(1.0, num_bits); }

DistinguisherResult xeb_distinguisher(const Distribution& dist, const SampleBatch& batch,
                                      std::optional<double> threshold) {
  const double t = threshold.value_or(default_xeb_threshold(dist.num_bits));
  if (t < 0.0) throw std::invalid_argument("XEB threshold must be nonnegative");
  const double score = xeb_score(dist, batch);
  return {score >= t, score};
}

DistinguisherResult xeb_distinguisher(const qsim::Circuit& circuit, const SampleBatch& batch,
                                      std::optional<double> threshold) {
  if (circuit.num_measured() != batch.num_bits) {
    throw qsim::DimensionMismatch("batch and circuit widths differ");
  }
  return xeb_distinguisher(qsim::output_distribution(circuit), batch, threshold);
}

// ---- Simon ------------------------------------------------------------------

DistinguisherResult simon_distinguisher(const families::SimonInstance& inst, const SampleBatch& batch) {
  if (batch.num_bits != inst.n) throw qsim::DimensionMismatch("batch width differs from Simon n");
  const Gf2Echelon e = gf2_row_reduce(batch.samples, inst.n);
  const auto null = gf2_null_space(e);
  const double rank = static_cast<double>(e.rank());
  if (null.size() != 1) return {false, rank};
  const std::uint64_t candidate = null.front();
  const bool ok = candidate != 0 && inst.table.at(0) == inst.table.at(candidate);
  return {ok, rank};
}

// ---- Battery ------------------------------------------------------------------

namespace {

double two_sided_normal_p(double z) { return std::erfc(std::abs(z) / std::numbers::sqrt2); }

double log_poisson_pmf(double mu, double k) { return -mu + k * std::log(mu) - std::lgamma(k + 1.0); }

// Two-sided Poisson p-value: 2 * min(P[X <= k], P[X >= k]), capped at 1.
double two_sided_poisson_p(double mu, std::uint64_t k) {
  if (mu <= 0.0) return k == 0 ? 1.0 : 0.0;
  const auto kd = static_cast<double>(k);
  double lower = 0.0;
  double upper = 0.0;
  if (kd <= mu) {
    for (std::uint64_t i = 0; i <= k; ++i) lower += std::exp(log_poisson_pmf(mu, static_cast<double>(i)));
    upper = 1.0;
  } else {
    for (double i = kd;; i += 1.0) {
      const double term = std::exp(log_poisson_pmf(mu, i));
      upper += term;
      if (term < upper * 1e-17 || term == 0.0) break;
    }
    lower = 1.0;
  }
  return std::min(1.0, 2.0 * std::min(lower, upper));
}

// z-test against an exact expectation. A standard deviation below 1e-9 of
// the expectation is rounding noise; it then demands a match to that precision.
double z_test_p(double observed, double expected, double variance, double* z_out) {
  const double scale = std::max(std::abs(expected), 1e-300);
  if (!(variance > 0.0) || std::sqrt(variance) <= 1e-9 * scale) {
    const bool equal = std::abs(observed - expected) <= 1e-9 * scale;
    *z_out = equal ? 0.0 : std::numeric_limits<double>::infinity();
    return equal ? 1.0 : 0.0;
  }
  *z_out = (observed - expected) / std::sqrt(variance);
  return two_sided_normal_p(*z_out);
}

// Max-|z| over several binomial counts, Bonferroni-combined.
BatteryTest max_binomial_test(std::string name, const std::vector<std::uint64_t>& counts,
                              const std::vector<double>& probs, double m) {
  BatteryTest t{std::move(name), 0.0, 1.0};
  double min_p = 1.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    double z = 0.0;
    const double q = probs[i];
    const double p = z_test_p(static_cast<double>(counts[i]), m * q, m * q * (1.0 - q), &z);
    t.statistic = std::max(t.statistic, std::abs(z));
    min_p = std::min(min_p, p);
  }
  t.p_value = std::min(1.0, min_p * static_cast<double>(counts.size()));
  return t;
}

}  // namespace

BatteryReference BatteryReference::uniform(int num_bits) {
  BatteryReference r;
  r.num_bits = num_bits;
  r.bit_one.assign(static_cast<std::size_t>(num_bits), 0.5);
  r.pair_differ.assign(static_cast<std::size_t>(num_bits) * (num_bits - 1) / 2, 0.5);
  const double inv = std::ldexp(1.0, -num_bits);
  r.s2 = inv;
  r.s3 = inv * inv;
  r.score_var = 0.0;
  return r;
}

BatteryReference BatteryReference::from_distribution(const Distribution& d, bool with_xeb) {
  const int n = d.num_bits;
  BatteryReference r;
  r.num_bits = n;
  r.bit_one.assign(static_cast<std::size_t>(n), 0.0);
  r.pair_differ.assign(static_cast<std::size_t>(n) * (n - 1) / 2, 0.0);
  for (std::uint64_t x = 0; x < d.size(); ++x) {
    const double p = d.probs[x];
    if (p == 0.0) continue;
    r.s2 += p * p;
    r.s3 += p * p * p;
    std::size_t pair = 0;
    for (int j = 0; j < n; ++j) {
      const auto bj = (x >> j) & 1U;
      if (bj) r.bit_one[static_cast<std::size_t>(j)] += p;
      for (int k = j + 1; k < n; ++k, ++pair)
        if (bj != ((x >> k) & 1U)) r.pair_differ[pair] += p;
    }
  }
  for (double p : d.probs) r.score_var += p * (p - r.s2) * (p - r.s2);
  if (with_xeb) r.probs = d.probs;
  return r;
}

BatteryOutcome run_battery(const BatteryReference& ref, const SampleBatch& batch, double alpha) {
  BatteryOutcome out;
  if (batch.num_bits != ref.num_bits) throw qsim::DimensionMismatch("battery reference width differs from batch");
  if (batch.empty()) return out;

  const int n = ref.num_bits;
  const std::size_t m = batch.size();
  const double md = static_cast<double>(m);

  // Bit columns packed 64 samples per word.
  const std::size_t words = (m + 63) / 64;
  std::vector<std::uint64_t> cols(static_cast<std::size_t>(n) * words, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::uint64_t x = batch.samples[i];
    for (int j = 0; j < n; ++j)
      if ((x >> j) & 1U) cols[static_cast<std::size_t>(j) * words + i / 64] |= std::uint64_t{1} << (i % 64);
  }
  auto col = [&](int j) { return cols.data() + static_cast<std::size_t>(j) * words; };

  std::vector<std::uint64_t> ones(static_cast<std::size_t>(n), 0);
  for (int j = 0; j < n; ++j)
    for (std::size_t w = 0; w < words; ++w) ones[static_cast<std::size_t>(j)] += std::popcount(col(j)[w]);
  out.tests.push_back(max_binomial_test("bit-frequency", ones, ref.bit_one, md));

  if (n >= 2) {
    std::vector<std::uint64_t> differ;
    differ.reserve(ref.pair_differ.size());
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        std::uint64_t c = 0;
        for (std::size_t w = 0; w < words; ++w) c += std::popcount(col(j)[w] ^ col(k)[w]);
        differ.push_back(c);
      }
    out.tests.push_back(max_binomial_test("pair-correlation", differ, ref.pair_differ, md));
  }

  {
    BatteryTest t{"collisions", 0.0, 1.0};
    if (m >= 2) {
      std::vector<std::uint64_t> sorted = batch.samples;
      std::sort(sorted.begin(), sorted.end());
      std::uint64_t colliding_pairs = 0;
      std::uint64_t run = 1;
      for (std::size_t i = 1; i <= m; ++i) {
        if (i < m && sorted[i] == sorted[i - 1]) {
          ++run;
        } else {
          colliding_pairs += run * (run - 1) / 2;
          run = 1;
        }
      }
      const double pairs = md * (md - 1.0) / 2.0;
      const double mu = pairs * ref.s2;
      const double var = pairs * ((ref.s2 - ref.s2 * ref.s2) + 2.0 * (md - 2.0) * ref.score_var);
      t.statistic = static_cast<double>(colliding_pairs);
      if (mu < 30.0 && var > 0.0) {
        t.p_value = two_sided_poisson_p(mu, colliding_pairs);
      } else {
        double z = 0.0;
        t.p_value = z_test_p(static_cast<double>(colliding_pairs), mu, var, &z);
      }
    }
    out.tests.push_back(t);
  }

  if (ref.probs) {
    BatteryTest t{"xeb", 0.0, 1.0};
    double s = 0.0;
    for (std::uint64_t x : batch.samples) s += (*ref.probs)[x];
    t.statistic = s / md;
    double z = 0.0;
    t.p_value = z_test_p(t.statistic, ref.s2, ref.score_var / md, &z);
    out.tests.push_back(t);
  }

  out.threshold = alpha / static_cast<double>(out.tests.size());
  double min_p = 1.0;
  for (const auto& t : out.tests) min_p = std::min(min_p, t.p_value);
  out.result.decision = min_p < out.threshold;
  out.result.score = min_p > 0.0 ? -std::log10(min_p) : 300.0;
  return out;
}

DistinguisherResult battery_distinguisher(const BatteryReference& ref, const SampleBatch& batch, double alpha) {
  return run_battery(ref, batch, alpha).result;
}

}  // namespace vqa::strategies
