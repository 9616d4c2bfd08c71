#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "vqa/common/bits.hpp"
#include "vqa/common/rng.hpp"
#include "vqa/families/families.hpp"
#include "vqa/qsim/sampling.hpp"
#include "vqa/qsim/simulator.hpp"
#include "vqa/strategies/distinguishers.hpp"
#include "vqa/strategies/gf2.hpp"
#include "vqa/strategies/spoofers.hpp"

namespace vqa::strategies {
namespace {

using qsim::Distribution;
using qsim::SampleBatch;

// Brute-force GF(2) oracles: enumerate every vector of the cube.
std::set<std::uint64_t> brute_null_space(const std::vector<std::uint64_t>& rows, int n) {
  std::set<std::uint64_t> out;
  for (std::uint64_t v = 0; v < (1ULL << n); ++v) {
    bool ok = true;
    for (auto r : rows) ok = ok && dot_mod2(r, v) == 0;
    if (ok) out.insert(v);
  }
  return out;
}

std::set<std::uint64_t> span_of(const std::vector<std::uint64_t>& basis) {
  std::set<std::uint64_t> out{0};
  for (auto b : basis) {
    std::set<std::uint64_t> next = out;
    for (auto x : out) next.insert(x ^ b);
    out = next;
  }
  return out;
}

TEST(Gf2, NullSpaceMatchesBruteForce) {
  CounterRng r(1);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(r.uniform_below(8));
    std::vector<std::uint64_t> rows(r.uniform_below(2 * n + 1));
    for (auto& x : rows) x = r() & low_mask(n);
    const auto e = gf2_row_reduce(rows, n);
    const auto basis = gf2_null_space(e);
    const auto expected = brute_null_space(rows, n);
    EXPECT_EQ(span_of(basis), expected);
    EXPECT_EQ(std::size_t{1} << basis.size(), expected.size());
    EXPECT_EQ(span_of(e.rows), span_of(rows));
    EXPECT_EQ(e.rank() + static_cast<int>(basis.size()), n);
  }
}

SampleBatch batch_of(int n, std::vector<std::uint64_t> xs) { return SampleBatch{n, std::move(xs), "test", 0}; }

TEST(Xeb, IdentityCircuitOnZeros) {
  qsim::Circuit c(3);
  EXPECT_DOUBLE_EQ(xeb_score(c, batch_of(3, {0, 0, 0, 0})), 1.0);
  EXPECT_DOUBLE_EQ(default_xeb_threshold(10), 1.5 / 1024);
  EXPECT_TRUE(xeb_distinguisher(c, batch_of(3, {5, 6}), 0.0).decision);
  EXPECT_THROW(xeb_score(c, batch_of(4, {0})), qsim::DimensionMismatch);
}

TEST(Xeb, RandomCircuitAnchors) {
  const int n = 10;
  const auto fam = families::random_circuit_family(n, 20, 11);
  const double scale = 1 << n;
  int honest_accepts = 0, uniform_rejects = 0;
  const int trials = 100;
  double uniform_mean = 0;
  for (int k = 0; k < trials; ++k) {
    const auto c = fam.draw_at(k, 1).circuit;
    const Distribution d = qsim::output_distribution(c);
    const SampleBatch honest = qsim::sample(d, 10000, derive_seed(5, k));
    const SampleBatch unif = uniform_spoofer(n, 10000, derive_seed(6, k)).second;
    const double sh = xeb_score(d, honest) * scale;
    const double su = xeb_score(d, unif) * scale;
    if (k < 5) {
      EXPECT_GE(sh, 1.5);
      EXPECT_LE(sh, 2.5);
      EXPECT_GE(su, 0.8);
      EXPECT_LE(su, 1.2);
    }
    uniform_mean += su / trials;
    honest_accepts += xeb_distinguisher(d, honest).decision;
    uniform_rejects += !xeb_distinguisher(d, unif).decision;
  }
  EXPECT_GE(honest_accepts, 95);
  EXPECT_GE(uniform_rejects, 95);
  EXPECT_GE(uniform_mean, 0.95);
  EXPECT_LE(uniform_mean, 1.05);
}

// P[t uniform vectors of F_2^k span it] = prod_{i=0}^{k-1} (1 - 2^{i-t}).
double span_probability(int k, int t) {
  double p = 1.0;
  for (int i = 0; i < k; ++i) p *= 1.0 - std::ldexp(1.0, i - t);
  return p;
}

TEST(Simon, BruteForceAcceptanceAtFourBits) {
  // Enumerate every batch of t=4 strings at n=4 and run the distinguisher.
  const int n = 4, t = 4;
  const auto inst = families::make_simon_instance(n, 0b0110, 3);
  std::vector<std::uint64_t> orth;
  for (std::uint64_t y = 0; y < 16; ++y)
    if (dot_mod2(y, inst.shift) == 0) orth.push_back(y);
  std::uint64_t uniform_accepts = 0, honest_accepts = 0;
  for (std::uint64_t code = 0; code < (1ULL << (4 * t)); ++code) {
    std::vector<std::uint64_t> xs(t);
    for (int i = 0; i < t; ++i) xs[i] = (code >> (4 * i)) & 15;
    uniform_accepts += simon_distinguisher(inst, batch_of(n, xs)).decision;
  }
  for (std::uint64_t code = 0; code < (1ULL << (3 * t)); ++code) {
    std::vector<std::uint64_t> xs(t);
    for (int i = 0; i < t; ++i) xs[i] = orth[(code >> (3 * i)) & 7];
    honest_accepts += simon_distinguisher(inst, batch_of(n, xs)).decision;
  }
  const double pu = static_cast<double>(uniform_accepts) / (1ULL << (4 * t));
  const double ph = static_cast<double>(honest_accepts) / (1ULL << (3 * t));
  EXPECT_NEAR(ph, span_probability(n - 1, t), 1e-12);
  EXPECT_NEAR(pu, std::ldexp(1.0, -t) * span_probability(n - 1, t), 1e-12);
  EXPECT_LE(pu, std::ldexp(1.0, -(n - 2)));
}

TEST(Simon, HonestAndUniformRatesAtEightBits) {
  const int n = 8;
  const auto fam = families::simon_family(n, 4);
  int honest = 0, uniform = 0;
  const int trials = 2000;
  for (int k = 0; k < trials; ++k) {
    const auto draw = fam.draw_at(k, 0);
    const auto& inst = std::get<families::SimonInstance>(draw.metadata);
    const auto d = qsim::output_distribution(draw.circuit);
    honest += simon_distinguisher(inst, qsim::sample(d, 2 * n, derive_seed(1, k))).decision;
    uniform += simon_distinguisher(inst, uniform_spoofer(n, 2 * n, derive_seed(2, k)).second).decision;
  }
  EXPECT_NEAR(honest / double(trials), span_probability(n - 1, 2 * n), 0.01);
  EXPECT_GE(honest / double(trials), 0.99);
  EXPECT_LE(uniform / double(trials), 0.02);
  const auto inst = std::get<families::SimonInstance>(fam.draw_at(0, 0).metadata);
  EXPECT_FALSE(simon_distinguisher(inst, batch_of(n, std::vector<std::uint64_t>(20, 0))).decision);
}

TEST(Simon, SoundnessAcrossSizes) {
  for (int n = 4; n <= 10; ++n) {
    const auto inst = families::make_simon_instance(n, 1ULL << (n - 1) | 1, n);
    int accepts = 0;
    for (int k = 0; k < 10000; ++k)
      accepts += simon_distinguisher(inst, uniform_spoofer(n, 2 * n, derive_seed(n, k)).second).decision;
    EXPECT_LE(accepts / 1e4, std::ldexp(1.0, -(n - 2))) << "n=" << n;
  }
}

TEST(Battery, CalibratedOnIdenticalInputs) {
  const auto ref = BatteryReference::uniform(10);
  int differ = 0;
  const int trials = 400;
  for (int k = 0; k < trials; ++k) {
    const bool a = battery_distinguisher(ref, uniform_spoofer(10, 10000, derive_seed(1, k)).second).decision;
    const bool b = battery_distinguisher(ref, uniform_spoofer(10, 10000, derive_seed(2, k)).second).decision;
    differ += a != b;
  }
  EXPECT_LE(differ / double(trials), 0.06);
}

TEST(Battery, CalibratedAgainstNonUniformReference) {
  const int n = 6;
  const auto d = qsim::output_distribution(families::random_circuit_family(n, 12, 2).draw_at(0, 0).circuit);
  const auto ref = BatteryReference::from_distribution(d, true);
  int rejects = 0;
  const int trials = 1000;
  for (int k = 0; k < trials; ++k) rejects += battery_distinguisher(ref, qsim::sample(d, 2000, k)).decision;
  // Binomial(1000, 0.005) exceeds 15 with probability below 1e-3.
  EXPECT_LE(rejects, 15);
}

TEST(Battery, DetectsPointMass) {
  const auto ref = BatteryReference::uniform(4);
  const auto point = Distribution::point_mass(4, 9);
  int differ = 0;
  for (int k = 0; k < 500; ++k) {
    const bool a = battery_distinguisher(ref, uniform_spoofer(4, 100, derive_seed(3, k)).second).decision;
    const bool b = battery_distinguisher(ref, qsim::sample(point, 100, k)).decision;
    differ += a != b;
  }
  EXPECT_GE(differ / 500.0, 0.99);
}

TEST(Battery, EmptyBatchAndOutcomeShape) {
  const auto ref = BatteryReference::uniform(3);
  EXPECT_FALSE(battery_distinguisher(ref, batch_of(3, {})).decision);
  const auto out = run_battery(BatteryReference::from_distribution(Distribution::uniform(3), true),
                               uniform_spoofer(3, 500, 1).second);
  EXPECT_EQ(out.tests.size(), 4u);
  EXPECT_NEAR(out.threshold, kBatteryAlpha / 4, 1e-15);
  double min_p = 1.0;
  for (const auto& t : out.tests) min_p = std::min(min_p, t.p_value);
  EXPECT_NEAR(out.result.score, -std::log10(min_p), 1e-12);
}

TEST(Spoofers, Uniform) {
  const auto [desc, batch] = uniform_spoofer(1, 100000, 7);
  double ones = 0;
  for (auto x : batch.samples) ones += static_cast<double>(x);
  EXPECT_NEAR(ones / 1e5, 0.5, 0.01);
  EXPECT_EQ(desc.size, 1u);
  EXPECT_EQ(execute_description(desc, 100000).samples, batch.samples);
  EXPECT_LE(qsim::empirical_tvd(uniform_spoofer(4, 1000000, 1).second, Distribution::uniform(4)), 0.01);
}

TEST(Spoofers, DistinctUniform) {
  const auto perm = distinct_uniform_spoofer(2, 4, 3).second;
  EXPECT_EQ(std::set<std::uint64_t>(perm.samples.begin(), perm.samples.end()),
            (std::set<std::uint64_t>{0, 1, 2, 3}));
  const auto wide = distinct_uniform_spoofer(20, 100, 3).second;
  EXPECT_EQ(std::set<std::uint64_t>(wide.samples.begin(), wide.samples.end()).size(), 100u);
  EXPECT_THROW(distinct_uniform_spoofer(3, 9, 1), std::invalid_argument);
  // First coordinate over 10^4 runs: chi-squared with 7 dof, 99.9% quantile 24.32.
  std::vector<int> counts(8, 0);
  for (int k = 0; k < 10000; ++k) ++counts[distinct_uniform_spoofer(3, 5, derive_seed(9, k)).second.samples[0]];
  double chi2 = 0;
  for (int c : counts) chi2 += (c - 1250.0) * (c - 1250.0) / 1250.0;
  EXPECT_LT(chi2, 24.32);
  for (int k = 0; k < 200; ++k) {
    const auto b = distinct_uniform_spoofer(5, 20 + k % 13, k).second;
    EXPECT_EQ(std::set<std::uint64_t>(b.samples.begin(), b.samples.end()).size(), b.samples.size());
  }
}

TEST(Spoofers, OmniscientMatchesHonest) {
  qsim::Circuit bell(2);
  bell.add(qsim::gates::h(0)).add(qsim::gates::cnot(0, 1));
  const auto [desc, batch] = omniscient_spoofer(bell, 1000, 1);
  for (auto x : batch.samples) EXPECT_TRUE(x == 0 || x == 3);
  EXPECT_EQ(desc.size, 4u);
  EXPECT_EQ(execute_description(desc, 1000).samples, batch.samples);

  const auto c = families::random_circuit_family(8, 16, 1).draw_at(0, 0).circuit;
  const auto d = qsim::output_distribution(c);
  const double a = xeb_score(d, omniscient_spoofer(c, 20000, 2).second);
  const double b = xeb_score(d, qsim::sample(d, 20000, 3));
  double var = 0;
  for (double p : d.probs) var += p * p * p;
  var -= std::pow(d.collision_probability(), 2);
  EXPECT_NEAR(a, b, 3 * std::sqrt(2 * var / 20000));

  EXPECT_THROW(Spoofer("magic"), std::invalid_argument);
}

}  // namespace
}  // namespace vqa::strategies
