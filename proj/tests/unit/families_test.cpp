#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "vqa/common/bits.hpp"
#include "vqa/common/rng.hpp"
#include "vqa/families/families.hpp"
#include "vqa/qsim/sampling.hpp"
#include "vqa/qsim/simulator.hpp"

namespace vqa::families {
namespace {

TEST(Simon, InstancesAreTwoToOneOnShiftCosets) {
  for (int n = kSimonMinBits; n <= 6; ++n) {
    for (std::uint64_t shift = 1; shift < (1ULL << n); shift += 3) {
      const SimonInstance inst = make_simon_instance(n, shift, shift * 31 + n);
      ASSERT_EQ(inst.table.size(), 1ULL << n);
      for (std::uint64_t x = 0; x < inst.table.size(); ++x) {
        for (std::uint64_t y = 0; y < inst.table.size(); ++y) {
          const bool same = inst.table[x] == inst.table[y];
          ASSERT_EQ(same, y == x || y == (x ^ shift));
        }
        ASSERT_LT(inst.table[x], 1ULL << (n - 1));
      }
      EXPECT_TRUE(is_valid_simon_instance(inst));
    }
  }
  EXPECT_THROW(make_simon_instance(4, 0, 1), std::invalid_argument);
  EXPECT_THROW(make_simon_instance(kSimonMaxBits + 1, 1, 1), std::invalid_argument);
}

TEST(Simon, OutputIsUniformOnShiftOrthogonalStrings) {
  for (int n : {2, 3, 4, 5}) {
    const std::uint64_t shift = (1ULL << n) - 2 + (n % 2);
    const auto d = qsim::output_distribution(simon_circuit(make_simon_instance(n, shift, 9)));
    ASSERT_EQ(d.num_bits, n);
    const double expected = 1.0 / static_cast<double>(1ULL << (n - 1));
    for (std::uint64_t y = 0; y < (1ULL << n); ++y) {
      EXPECT_NEAR(d[y], dot_mod2(y, shift) == 0 ? expected : 0.0, 1e-12) << "n=" << n << " y=" << y;
    }
  }
}

TEST(Simon, FamilyDrawsNonzeroShifts) {
  const auto fam = simon_family(4, 5);
  std::set<std::uint64_t> shifts;
  for (std::size_t k = 0; k < 200; ++k) {
    const auto d = fam.draw_at(k, 1);
    const auto& inst = std::get<SimonInstance>(d.metadata);
    EXPECT_NE(inst.shift, 0u);
    shifts.insert(inst.shift);
  }
  EXPECT_EQ(shifts.size(), 15u);
  const auto fixed = simon_fixed_shift_family(4, 0b1010, 5);
  for (std::size_t k = 0; k < 20; ++k)
    EXPECT_EQ(std::get<SimonInstance>(fixed.draw_at(k, 2).metadata).shift, 0b1010u);
}

TEST(Brickwork, GatesAreUnitary) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto u = haar_unitary4(s);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        qsim::Complex dot = 0;
        for (int k = 0; k < 4; ++k) dot += std::conj(u[k * 4 + i]) * u[k * 4 + j];
        EXPECT_NEAR(std::abs(dot - (i == j ? 1.0 : 0.0)), 0.0, 1e-12);
      }
  }
}

TEST(Brickwork, LayersAlternate) {
  RandomCircuitMeta meta;
  const auto c = brickwork_circuit(5, 3, 4, &meta);
  // layer 0: (0,1),(2,3); layer 1: (1,2),(3,4); layer 2: (0,1),(2,3)
  ASSERT_EQ(c.gates.size(), 6u);
  EXPECT_EQ(meta.gate_seeds.size(), 6u);
  EXPECT_EQ(c.gates[0].targets, (std::vector<int>{0, 1}));
  EXPECT_EQ(c.gates[2].targets, (std::vector<int>{1, 2}));
  EXPECT_EQ(c.gates[3].targets, (std::vector<int>{3, 4}));
  EXPECT_THROW(random_circuit_family(5, 0, 1), std::invalid_argument);
}

TEST(Brickwork, DeepCircuitsHavePorterThomasCollision) {
  // Deep random circuits: E sum p^2 approaches 2/(2^n + 1).
  const int n = 8;
  const auto fam = random_circuit_family(n, 24, 3);
  double mean = 0;
  const int draws = 40;
  for (int k = 0; k < draws; ++k) mean += qsim::output_distribution(fam.draw_at(k, 7).circuit).collision_probability();
  mean /= draws;
  EXPECT_NEAR(mean * ((1 << n) + 1) / 2.0, 1.0, 0.1);
}

TEST(PhaseStates, OutputIsUniform) {
  const auto d = qsim::output_distribution(phase_prs_circuit(6, 123, 2));
  for (double p : d.probs) EXPECT_NEAR(p, 1.0 / 64, 1e-12);
  const auto psi = qsim::run_circuit(phase_prs_circuit(4, 9, 4));
  for (std::uint64_t x = 0; x < 16; ++x) {
    const double angle = 2 * std::numbers::pi * keyed_phase_value(9, x, 4) / 4.0;
    EXPECT_NEAR(std::abs(psi[x] - std::polar(0.25, angle)), 0.0, 1e-12);
  }
}

TEST(PhaseStates, KeyedValuesAreBalanced) {
  int ones = 0;
  for (std::uint64_t x = 0; x < 4096; ++x) {
    const auto v = keyed_phase_value(42, x, 2);
    ASSERT_LT(v, 2u);
    ones += static_cast<int>(v);
  }
  EXPECT_NEAR(ones, 2048, 4 * 32);
  EXPECT_NE(keyed_phase_value(1, 5, 1 << 20), keyed_phase_value(2, 5, 1 << 20));
}

TEST(Extend, MeasuresDephasedRegister) {
  // H on one qubit, extended: the A marginal is unchanged and the reduced
  // state of A becomes diagonal.
  qsim::Circuit c(1);
  c.add(qsim::gates::h(0));
  const auto e = extend_circuit(c);
  EXPECT_EQ(e.num_qubits, 2);
  EXPECT_EQ(e.measured, (std::vector<int>{0}));
  const auto d = qsim::output_distribution(e);
  EXPECT_NEAR(d[0], 0.5, 1e-12);
  const auto psi = qsim::run_circuit(e);
  EXPECT_NEAR(std::abs(psi[0b11]), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(std::abs(psi[0b01]), 0.0, 1e-12);
  qsim::Circuit big(qsim::kMaxStateQubits / 2 + 1);
  EXPECT_THROW(extend_circuit(big), qsim::CapacityExceeded);
}

TEST(Finite, DrawAtCyclesMembers) {
  qsim::Circuit i(1), x(1);
  x.add(qsim::gates::x(0));
  const auto fam = CircuitFamily::finite("bit-flip", {i, x});
  EXPECT_TRUE(fam.is_finite());
  for (std::size_t k = 0; k < 6; ++k)
    EXPECT_EQ(std::get<MemberIndex>(fam.draw_at(k, 3).metadata).index, k % 2);
  const auto mix = family_mixture_distribution(fam, 10, 0);
  EXPECT_NEAR(mix[0], 0.5, 1e-15);
  EXPECT_THROW(simon_family(3, 1).enumerate(), std::logic_error);
}

TEST(Serialization, MetadataRoundTrip) {
  const SimonInstance inst = make_simon_instance(3, 5, 1);
  const auto back = metadata_from_json(metadata_to_json(inst));
  const auto& b = std::get<SimonInstance>(back);
  EXPECT_EQ(b.n, 3);
  EXPECT_EQ(b.shift, 5u);
  EXPECT_EQ(b.table, inst.table);
  const auto pk = std::get<PhaseKey>(metadata_from_json(metadata_to_json(PhaseKey{77, 4})));
  EXPECT_EQ(pk.key, 77u);
  EXPECT_EQ(pk.levels, 4);
  const auto fam = simon_family(3, 1);
  const auto j = draw_to_json(fam, fam.draw(2));
  EXPECT_EQ(j["family"]["name"], "simon");
  EXPECT_TRUE(j.contains("circuit"));
}

TEST(Simon, SampledOutputsAreOrthogonalToShift) {
  const auto inst = make_simon_instance(3, 0b011, 4);
  const auto batch = qsim::sample(qsim::output_distribution(simon_circuit(inst)), 10000, 1);
  for (auto y : batch.samples) ASSERT_EQ(dot_mod2(y, 0b011), 0);
  const auto d2 = qsim::output_distribution(simon_circuit(make_simon_instance(2, 0b11, 1)));
  EXPECT_NEAR(d2[0b01] + d2[0b10], 0.0, 1e-12);
}

TEST(Simon, MixtureOverDrawsIsNormalized) {
  const auto fam = simon_family(3, 8);
  const auto mix = family_mixture_distribution(fam, 32, 2);
  std::vector<double> expected(8, 0.0);
  for (std::size_t k = 0; k < 32; ++k) {
    const auto s = std::get<SimonInstance>(fam.draw_at(k, 2).metadata).shift;
    for (std::uint64_t y = 0; y < 8; ++y)
      if (dot_mod2(y, s) == 0) expected[y] += 0.25 / 32;
  }
  double total = 0;
  for (std::uint64_t y = 0; y < 8; ++y) {
    EXPECT_NEAR(mix[y], expected[y], 1e-12);
    total += mix[y];
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Brickwork, TenQubitCollisionBand) {
  const auto fam = random_circuit_family(10, 20, 6);
  double mean = 0;
  for (int k = 0; k < 50; ++k) mean += qsim::output_distribution(fam.draw_at(k, 1).circuit).collision_probability();
  mean = mean / 50 * 1024;
  EXPECT_GE(mean, 1.6);
  EXPECT_LE(mean, 2.4);
  const auto small = qsim::output_distribution(random_circuit_family(2, 1, 1).draw(0).circuit);
  double s = 0;
  for (double p : small.probs) s += p;
  EXPECT_NEAR(s, 1.0, 1e-9);
}

TEST(PhaseStates, DistinctKeysSameDistribution) {
  const auto a = phase_prs_circuit(5, 1), b = phase_prs_circuit(5, 2);
  EXPECT_NE(a.gates.back().phases, b.gates.back().phases);
  EXPECT_EQ(qsim::output_distribution(a).probs, qsim::output_distribution(b).probs);
  const auto zero = qsim::run_circuit(phase_state_circuit(3, std::vector<double>(8, 0.0)));
  for (std::uint64_t x = 0; x < 8; ++x) EXPECT_NEAR(std::abs(zero[x] - 1.0 / std::sqrt(8.0)), 0.0, 1e-12);
}

TEST(Extend, ReducedDiagonalMatchesOutputDistribution) {
  // Dense partial trace of |psi><psi| over register B, diagonal only.
  CounterRng r(3);
  for (int n = 1; n <= 5; ++n) {
    const auto c = brickwork_circuit(std::max(n, 2), 4, r(), nullptr);
    qsim::Circuit base = c;
    base.measured.clear();
    for (int q = 0; q < n; ++q) base.measured.push_back(q);
    const auto e = extend_circuit(base);
    const auto psi = qsim::run_circuit(e);
    const int nq = base.num_qubits;
    const auto target = qsim::output_distribution(base);
    std::vector<double> diag(std::size_t{1} << n, 0.0);
    for (std::size_t i = 0; i < psi.size(); ++i) {
      std::uint64_t a = 0;
      for (int j = 0; j < n; ++j) a |= ((i >> j) & 1ULL) << j;
      // Register B holds a copy of the measured bits, so only i with matching B contribute.
      std::uint64_t b = (i >> nq) & low_mask(n);
      if (std::norm(psi[i]) > 1e-15) {
        EXPECT_EQ(a, b);
      }
      diag[a] += std::norm(psi[i]);
    }
    for (std::uint64_t x = 0; x < diag.size(); ++x) EXPECT_NEAR(diag[x], target[x], 1e-9);
  }
  qsim::Circuit bell(2);
  bell.add(qsim::gates::h(0)).add(qsim::gates::cnot(0, 1));
  const auto d = qsim::output_distribution(extend_circuit(bell));
  EXPECT_NEAR(d[0], 0.5, 1e-12);
  EXPECT_NEAR(d[3], 0.5, 1e-12);
  EXPECT_NEAR(qsim::run_circuit(extend_circuit(qsim::Circuit(1)))[0].real(), 1.0, 1e-15);
}

}  // namespace
}  // namespace vqa::families
