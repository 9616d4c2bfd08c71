#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "vqa/mcsp/mcsp.hpp"
#include "vqa/qsim/sampling.hpp"
#include "vqa/strategies/spoofers.hpp"

namespace vqa::mcsp {
namespace {

using qsim::Distribution;
using qsim::SampleBatch;

// Naive oracle: every gate sequence (operands any earlier wire, both orders)
// and every output tuple, evaluated on truth tables over the 2^r inputs.
// Returns, per distinct distribution (as a count vector), the smallest size.
std::map<std::vector<int>, int> naive_catalog(int n, int r, int size_bound) {
  const int inputs = 1 << r;
  std::map<std::vector<int>, int> best;
  std::vector<std::vector<int>> wires;
  wires.push_back(std::vector<int>(inputs, 0));
  for (int i = 0; i < r; ++i) {
    std::vector<int> w(inputs);
    for (int x = 0; x < inputs; ++x) w[x] = (x >> i) & 1;
    wires.push_back(w);
  }
  auto record_outputs = [&](int size) {
    const int nw = static_cast<int>(wires.size());
    std::vector<int> choice(n, 0);
    for (;;) {
      std::vector<int> counts(1 << n, 0);
      for (int x = 0; x < inputs; ++x) {
        int out = 0;
        for (int j = 0; j < n; ++j) out |= wires[choice[j]][x] << j;
        ++counts[out];
      }
      auto it = best.find(counts);
      if (it == best.end() || it->second > size) best[counts] = size;
      int j = 0;
      while (j < n && ++choice[j] == nw) choice[j++] = 0;
      if (j == n) break;
    }
  };
  std::function<void(int)> extend = [&](int size) {
    record_outputs(size);
    if (size == size_bound) return;
    const int nw = static_cast<int>(wires.size());
    for (int op = 0; op < 4; ++op) {
      for (int a = 0; a < nw; ++a) {
        for (int b = 0; b < (op == 3 ? 1 : nw); ++b) {
          std::vector<int> w(inputs);
          for (int x = 0; x < inputs; ++x) {
            const int u = wires[a][x], v = wires[b][x];
            w[x] = op == 0 ? (u & v) : op == 1 ? (u | v) : op == 2 ? (u ^ v) : 1 - u;
          }
          wires.push_back(w);
          extend(size + 1);
          wires.pop_back();
        }
      }
    }
  };
  extend(0);
  return best;
}

std::vector<int> counts_of(const Distribution& d, int r) {
  std::vector<int> c(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) c[i] = static_cast<int>(std::lround(d[i] * (1 << r)));
  return c;
}

TEST(Enumerate, MatchesNaiveOracle) {
  struct Case {
    int n, r, s;
  };
  for (const Case c : {Case{1, 0, 2}, Case{1, 1, 0}, Case{1, 1, 1}, Case{1, 2, 2}, Case{1, 3, 3}, Case{2, 1, 2},
                       Case{2, 2, 3}}) {
    const auto oracle = naive_catalog(c.n, c.r, c.s);
    const auto samplers = enumerate_samplers(c.n, c.r, c.s);
    EXPECT_EQ(samplers.size(), oracle.size()) << c.n << " " << c.r << " " << c.s;
    std::set<std::vector<int>> seen;
    for (const auto& s : samplers) {
      EXPECT_LE(static_cast<int>(s.size()), c.s);
      const auto counts = counts_of(exact_distribution(s), c.r);
      EXPECT_TRUE(seen.insert(counts).second) << "duplicate distribution";
      ASSERT_TRUE(oracle.count(counts));
      EXPECT_EQ(static_cast<int>(s.size()), oracle.at(counts)) << "not a smallest sampler";
    }
  }
}

TEST(Enumerate, KnownCounts) {
  EXPECT_EQ(enumerate_samplers(1, 1, 0).size(), 2u);  // constant 0 and the raw bit
  EXPECT_EQ(enumerate_samplers(1, 1, 1).size(), 3u);  // plus constant 1 via NOT
  const int r1[] = {2, 3, 5, 9, 17};
  const int r2[] = {4, 10, 35, 142, 286};
  for (int r = 0; r <= 4; ++r) {
    EXPECT_EQ(enumerate_samplers(1, r, 3).size(), static_cast<std::size_t>(r1[r]));
    EXPECT_EQ(enumerate_samplers(2, r, 3).size(), static_cast<std::size_t>(r2[r]));
  }
}

TEST(Enumerate, LazyOrderBySize) {
  SamplerEnumerator e(2, 2, 2);
  std::size_t last = 0, count = 0;
  while (auto s = e.next()) {
    EXPECT_GE(s->size(), last);
    last = s->size();
    ++count;
  }
  EXPECT_EQ(count, enumerate_samplers(2, 2, 2).size());
}

TEST(Budget, RefusesLargeSearches) {
  EXPECT_THROW(check_budget(5, 2, 2), BudgetExceeded);
  EXPECT_THROW(check_budget(2, 7, 2), BudgetExceeded);
  EXPECT_THROW(check_budget(2, 2, 6), BudgetExceeded);
  EXPECT_THROW(check_budget(0, 2, 2), std::invalid_argument);
  try {
    SamplerEnumerator(4, 6, 5);
    FAIL() << "expected refusal";
  } catch (const BudgetExceeded& e) {
    EXPECT_GT(e.estimated_count(), kEnumerationBudget);
  }
  EXPECT_NO_THROW(check_budget(2, 4, 3));
  EXPECT_LT(estimate_enumeration_work(1, 1, 1), estimate_enumeration_work(2, 2, 2));
}

MicroSampler xor_sampler() {
  MicroSampler s;
  s.r = 2;
  s.gates = {{Op::kXor, 1, 2}};
  s.outputs = {3};
  return s;
}

TEST(Sampler, ExactAndSampled) {
  const auto d = exact_distribution(xor_sampler());
  EXPECT_DOUBLE_EQ(d[0], 0.5);
  const auto b = run_sampler(xor_sampler(), 100000, 1);
  EXPECT_LE(qsim::empirical_tvd(b, d), 0.01);
  EXPECT_EQ(run_sampler(xor_sampler(), 100, 1).samples, run_sampler(xor_sampler(), 100, 1).samples);
  MicroSampler bad = xor_sampler();
  bad.gates[0].a = 3;  // self reference
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Netlist, RoundTripAndErrors) {
  MicroSampler s;
  s.r = 3;
  s.gates = {{Op::kAnd, 1, 2}, {Op::kNot, 4, 0}, {Op::kOr, 5, 3}};
  s.outputs = {6, 0, 1};
  const auto back = parse_netlist(to_netlist(s));
  EXPECT_EQ(to_netlist(back), to_netlist(s));
  EXPECT_EQ(exact_distribution(back).probs, exact_distribution(s).probs);
  EXPECT_THROW(parse_netlist("sampler r=1 n=1\ngate 2 NAND 1 0\noutputs 2\n"), std::invalid_argument);
  EXPECT_THROW(parse_netlist("sampler r=1 n=2\noutputs 1\n"), std::invalid_argument);
  EXPECT_THROW(parse_netlist("gate 2 AND 1 0\n"), std::invalid_argument);
}

SampleBatch batch_of(int n, std::vector<std::uint64_t> xs) { return SampleBatch{n, std::move(xs), "test", 0}; }

TEST(Solver, Examples) {
  const auto zeros = samp_mcsp_bruteforce(batch_of(1, std::vector<std::uint64_t>(50, 0)), 2, 0.0);
  ASSERT_TRUE(zeros.yes);
  EXPECT_EQ(zeros.witness->size(), 0u);
  EXPECT_EQ(zeros.achieved_distance, 0.0);

  const auto xors = samp_mcsp_bruteforce(run_sampler(xor_sampler(), 100000, 3), 1, 0.02);
  ASSERT_TRUE(xors.yes);
  EXPECT_EQ(xors.witness->size(), 0u);

  std::vector<std::uint64_t> skew(100, 0);
  for (int i = 0; i < 25; ++i) skew[i] = 1;
  const auto v = samp_mcsp_bruteforce(batch_of(1, skew), 1, 0.05, 2);
  ASSERT_TRUE(v.yes);
  EXPECT_EQ(v.witness->size(), 1u);
  EXPECT_NEAR(exact_distribution(*v.witness)[1], 0.25, 1e-15);
  EXPECT_LE(v.achieved_distance, 0.05);
}

TEST(Solver, YesWitnessesReSimulate) {
  const SamplerCatalog cat(2, 3, 3);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto planted = cat.sampler(seed * 7 % cat.size());
    const auto batch = run_sampler(planted, 20000, seed);
    const auto v = cat.solve(batch, 3, 0.02);
    ASSERT_TRUE(v.yes);
    EXPECT_LE(v.witness->size(), planted.size());
    EXPECT_LE(qsim::empirical_tvd(batch, exact_distribution(*v.witness)), 0.02);
    for (int b = static_cast<int>(v.witness->size()); b <= 3; ++b) EXPECT_TRUE(cat.solve(batch, b, 0.02).yes);
  }
}

TEST(Verifier, Examples) {
  EXPECT_EQ(universal_verifier(strategies::uniform_spoofer(3, 20000, 1).second, 1, 0.02), 0);
  EXPECT_EQ(universal_verifier(batch_of(3, {}), 0, 0.0), 0);

  // Eight distinct frequencies 1/36, 2/36, ..., 8/36.
  std::vector<std::uint64_t> xs;
  for (std::uint64_t x = 0; x < 8; ++x)
    for (std::uint64_t k = 0; k <= x; ++k) xs.push_back(x);
  const auto batch = batch_of(3, xs);
  EXPECT_EQ(universal_verifier(batch, 1, 0.01), 1);
  // The naive oracle confirms no size <= 1 sampler with 4 random bits is within 0.01.
  double closest = 1.0;
  for (const auto& [counts, size] : naive_catalog(3, 4, 1)) {
    double tvd = 0;
    for (std::size_t x = 0; x < 8; ++x) tvd += std::abs(counts[x] / 16.0 - (x + 1) / 36.0);
    closest = std::min(closest, tvd / 2);
  }
  EXPECT_GT(closest, 0.01);
  const auto v = samp_mcsp_bruteforce(batch, 1, 0.01);
  EXPECT_FALSE(v.yes);
  EXPECT_NEAR(v.achieved_distance, closest, 1e-12);
}

TEST(Verifier, VariantsAgree) {
  const auto batch = run_sampler(xor_sampler(), 5000, 9);
  const auto a = samp_mcsp_bruteforce(batch, 2, 0.02, 2, McspVariant::kSamp);
  const auto b = samp_mcsp_bruteforce(batch, 2, 0.02, 2, McspVariant::kObliviousSamp);
  EXPECT_EQ(a.yes, b.yes);
  EXPECT_EQ(a.achieved_distance, b.achieved_distance);
  EXPECT_EQ(b.variant, McspVariant::kObliviousSamp);
  EXPECT_STRNE(variant_name(McspVariant::kSamp), variant_name(McspVariant::kObliviousSamp));
}

TEST(Catalog, WorkerIndependent) {
  const SamplerCatalog a(2, 3, 3, 1), b(2, 3, 3, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(to_netlist(a.sampler(i)), to_netlist(b.sampler(i)));
  const auto batch = run_sampler(a.sampler(a.size() - 1), 10000, 4);
  EXPECT_EQ(to_netlist(*a.solve(batch, 3, 0.02).witness), to_netlist(*b.solve(batch, 3, 0.02).witness));
}

}  // namespace
}  // namespace vqa::mcsp
