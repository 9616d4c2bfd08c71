#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "vqa/common/rng.hpp"
#include "vqa/qsim/circuit_io.hpp"
#include "vqa/qsim/density_matrix.hpp"
#include "vqa/qsim/kernels.hpp"
#include "vqa/qsim/sampling.hpp"
#include "vqa/qsim/simulator.hpp"

namespace vqa::qsim {
namespace {

using Dense = std::vector<std::vector<Complex>>;
constexpr Complex kI{0.0, 1.0};

// Local matrix of a gate on its own targets, local index l = sum bit(targets[i]) << i.
Dense local_matrix(const Gate& g) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::kH: return {{r, r}, {r, -r}};
    case GateKind::kX: return {{0, 1}, {1, 0}};
    case GateKind::kY: return {{0, -kI}, {kI, 0}};
    case GateKind::kZ: return {{1, 0}, {0, -1}};
    case GateKind::kS: return {{1, 0}, {0, kI}};
    case GateKind::kT: return {{1, 0}, {0, std::exp(kI * (std::numbers::pi / 4))}};
    case GateKind::kPhase: return {{1, 0}, {0, std::exp(kI * g.angle)}};
    case GateKind::kUnitary1:
    case GateKind::kUnitary2: {
      const std::size_t d = g.kind == GateKind::kUnitary1 ? 2 : 4;
      Dense m(d, std::vector<Complex>(d));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m[i][j] = g.matrix[i * d + j];
      return m;
    }
    default: break;
  }
  const std::size_t d = std::size_t{1} << g.targets.size();
  Dense m(d, std::vector<Complex>(d, 0.0));
  for (std::size_t l = 0; l < d; ++l) {
    switch (g.kind) {
      case GateKind::kCnot: m[(l & 1) ? (l ^ 2) : l][l] = 1.0; break;
      case GateKind::kCz: m[l][l] = l == 3 ? -1.0 : 1.0; break;
      case GateKind::kSwap: m[((l & 1) << 1) | (l >> 1)][l] = 1.0; break;
      case GateKind::kOracle: {
        const std::size_t k = static_cast<std::size_t>(g.oracle_inputs);
        const std::size_t x = l & ((std::size_t{1} << k) - 1);
        const std::size_t y = l >> k;
        m[x | ((y ^ g.table[x]) << k)][l] = 1.0;
        break;
      }
      case GateKind::kPhaseTable: m[l][l] = std::exp(kI * g.phases[l]); break;
      default: ADD_FAILURE() << "unhandled gate";
    }
  }
  return m;
}

std::vector<Complex> dense_apply(int n, const Gate& g, const std::vector<Complex>& in) {
  const Dense u = local_matrix(g);
  std::vector<Complex> out(in.size(), 0.0);
  for (std::size_t j = 0; j < in.size(); ++j) {
    std::size_t l = 0, rest = j;
    for (std::size_t i = 0; i < g.targets.size(); ++i) {
      l |= ((j >> g.targets[i]) & 1U) << i;
      rest &= ~(std::size_t{1} << g.targets[i]);
    }
    for (std::size_t row = 0; row < u.size(); ++row) {
      std::size_t dst = rest;
      for (std::size_t i = 0; i < g.targets.size(); ++i) dst |= ((row >> i) & 1U) << g.targets[i];
      out[dst] += u[row][l] * in[j];
    }
  }
  (void)n;
  return out;
}

std::vector<Complex> dense_run(const Circuit& c) {
  std::vector<Complex> v(std::size_t{1} << c.num_qubits, 0.0);
  v[0] = 1.0;
  for (const auto& g : c.gates) v = dense_apply(c.num_qubits, g, v);
  return v;
}

std::vector<Complex> random_unitary(int dim, std::uint64_t seed) {
  // Gram-Schmidt on Gaussian columns, stored row-major.
  CounterRng r(seed);
  std::vector<std::vector<Complex>> cols(dim, std::vector<Complex>(dim));
  for (auto& c : cols)
    for (auto& a : c) a = {r.normal(), r.normal()};
  for (int c = 0; c < dim; ++c) {
    for (int p = 0; p < c; ++p) {
      Complex dot = 0;
      for (int i = 0; i < dim; ++i) dot += std::conj(cols[p][i]) * cols[c][i];
      for (int i = 0; i < dim; ++i) cols[c][i] -= dot * cols[p][i];
    }
    double nrm = 0;
    for (auto& a : cols[c]) nrm += std::norm(a);
    for (auto& a : cols[c]) a /= std::sqrt(nrm);
  }
  std::vector<Complex> m(static_cast<std::size_t>(dim * dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m[static_cast<std::size_t>(i * dim + j)] = cols[j][i];
  return m;
}

Circuit mixed_circuit(int n, std::uint64_t seed) {
  CounterRng r(seed);
  Circuit c(n);
  for (int step = 0; step < 40; ++step) {
    const int a = static_cast<int>(r.uniform_below(n));
    int b = static_cast<int>(r.uniform_below(n - 1));
    if (b >= a) ++b;
    switch (r.uniform_below(12)) {
      case 0: c.add(gates::h(a)); break;
      case 1: c.add(gates::x(a)); break;
      case 2: c.add(gates::y(a)); break;
      case 3: c.add(gates::z(a)); break;
      case 4: c.add(gates::s(a)); break;
      case 5: c.add(gates::t(a)); break;
      case 6: c.add(gates::phase(a, r.uniform01() * 6.0)); break;
      case 7: c.add(gates::cnot(a, b)); break;
      case 8: c.add(gates::cz(a, b)); break;
      case 9: c.add(gates::swap(a, b)); break;
      case 10: c.add(gates::unitary1(a, random_unitary(2, r()))); break;
      default: c.add(gates::unitary2(a, b, random_unitary(4, r()))); break;
    }
  }
  return c;
}

double max_diff(std::span<const Complex> a, const std::vector<Complex>& b) {
  double d = 0;
  for (std::size_t i = 0; i < b.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

TEST(Simulator, MatchesDenseOracleOnMixedCircuits) {
  for (auto backend : {kernels::Backend::kScalar, kernels::Backend::kAvx2}) {
    if (!kernels::set_backend(backend)) continue;
    for (int n : {2, 3, 5}) {
      for (std::uint64_t s = 0; s < 5; ++s) {
        const Circuit c = mixed_circuit(n, 1000 * n + s);
        const StateVector psi = run_circuit(c);
        EXPECT_LT(max_diff(psi.amplitudes(), dense_run(c)), 1e-10);
        EXPECT_NEAR(psi.norm_squared(), 1.0, 1e-10);
      }
    }
  }
  kernels::set_backend(kernels::Backend::kScalar);
}

TEST(Simulator, BellState) {
  Circuit c(2);
  c.add(gates::h(0)).add(gates::cnot(0, 1));
  const Distribution d = output_distribution(c);
  EXPECT_NEAR(d[0], 0.5, 1e-12);
  EXPECT_NEAR(d[3], 0.5, 1e-12);
  EXPECT_NEAR(d[1], 0.0, 1e-12);
  EXPECT_NEAR(d[2], 0.0, 1e-12);
}

TEST(Simulator, OracleAndPhaseTableMatchDense) {
  CounterRng r(77);
  Circuit c(5);
  for (int q = 0; q < 5; ++q) c.add(gates::h(q));
  std::vector<std::uint64_t> table(8);
  for (auto& t : table) t = r.uniform_below(4);
  c.add(gates::oracle({3, 0, 4}, {2, 1}, table));
  std::vector<double> phases(8);
  for (auto& p : phases) p = r.uniform01() * 6.28;
  c.add(gates::phase_table({1, 4, 2}, phases));
  c.add(gates::h(2));
  c.add(gates::unitary2(4, 1, random_unitary(4, 5)));
  EXPECT_LT(max_diff(run_circuit(c).amplitudes(), dense_run(c)), 1e-10);
}

TEST(Simulator, MarginalOrdersOutcomeBits) {
  Circuit c(3);
  c.add(gates::x(2));
  c.measured = {2, 0};
  const Distribution d = output_distribution(c);
  ASSERT_EQ(d.num_bits, 2);
  EXPECT_NEAR(d[1], 1.0, 1e-12);  // outcome bit 0 is qubit 2
  EXPECT_NEAR(amplitude_probability(c, 1, 2), 1.0, 1e-12);
  EXPECT_THROW(amplitude_probability(c, 1, 3), DimensionMismatch);
}

TEST(Simulator, InverseCircuitReturnsToZero) {
  const Circuit c = mixed_circuit(4, 9);
  Circuit both = c;
  for (const auto& g : inverse(c).gates) both.add(g);
  EXPECT_NEAR(output_distribution(both)[0], 1.0, 1e-10);
}

TEST(Circuit, ValidationRejectsBadGates) {
  Circuit c(2);
  c.add(gates::h(2));
  EXPECT_THROW(c.validate(), MalformedCircuit);
  Circuit d(2);
  d.add(gates::unitary1(0, {1, 1, 0, 1}));
  EXPECT_THROW(d.validate(), MalformedCircuit);
  Circuit e(2);
  e.add(gates::cnot(1, 1));
  EXPECT_THROW(e.validate(), MalformedCircuit);
  Circuit f(3);
  f.add(gates::oracle({0}, {1}, {0, 2}));  // table value exceeds output width
  EXPECT_THROW(f.validate(), MalformedCircuit);
  EXPECT_THROW(StateVector(kMaxStateQubits + 1), CapacityExceeded);
}

TEST(CircuitIo, RoundTrip) {
  Circuit c = mixed_circuit(4, 3);
  c.add(gates::oracle({0, 1}, {2}, {0, 1, 1, 0}));
  c.add(gates::phase_table({3}, {0.25, -1.5}));
  c.measured = {3, 1};
  const Circuit back = parse_circuit(serialize_circuit(c));
  ASSERT_EQ(back.gates.size(), c.gates.size());
  EXPECT_EQ(back.measured, c.measured);
  const Distribution a = output_distribution(c), b = output_distribution(back);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
  EXPECT_THROW(parse_circuit(R"({"num_qubits": 1, "gates": [{"kind": "Q", "targets": [0]}]})"),
               MalformedCircuit);
}

TEST(Distribution, TvdAndMixture) {
  const Distribution u = Distribution::uniform(2);
  const Distribution p = Distribution::point_mass(2, 3);
  EXPECT_NEAR(total_variation_distance(u, p), 0.75, 1e-15);
  const Distribution m = mixture({u, p});
  EXPECT_NEAR(m[3], 0.625, 1e-15);
  EXPECT_THROW(total_variation_distance(u, Distribution::uniform(3)), DimensionMismatch);
  EXPECT_THROW(Distribution(1, {0.7, 0.7}).validate(), std::invalid_argument);
  EXPECT_NEAR(u.collision_probability(), 0.25, 1e-15);
}

TEST(Sampling, AliasNeverEmitsZeroProbabilityOutcomes) {
  Distribution d(3, {0.5, 0.0, 0.25, 0.0, 0.0, 0.125, 0.0, 0.125});
  const SampleBatch b = sample(d, 100000, 11);
  std::vector<int> counts(8, 0);
  for (auto x : b.samples) ++counts[x];
  for (int x : {1, 3, 4, 6}) EXPECT_EQ(counts[x], 0);
  for (int x : {0, 2, 5, 7}) {
    const double se = std::sqrt(d[x] * (1 - d[x]) / 1e5);
    EXPECT_NEAR(counts[x] / 1e5, d[x], 5 * se);
  }
  const SampleBatch again = sample(d, 100000, 11);
  EXPECT_EQ(again.samples, b.samples);
}

TEST(Sampling, EmpiricalTvdShrinks) {
  const Distribution u = Distribution::uniform(4);
  EXPECT_LT(empirical_tvd(sample(u, 200000, 1), u), 0.01);
  SampleBatch empty;
  empty.num_bits = 4;
  for (double f : empirical_frequencies(empty)) EXPECT_EQ(f, 0.0);
}

TEST(Density, TraceDistanceOfPureStates) {
  // |0> vs |+>: trace distance sqrt(1 - |<0|+>|^2) = 1/sqrt(2).
  Circuit zero(1), plus(1);
  plus.add(gates::h(0));
  const auto r0 = DensityMatrix::pure(run_circuit(zero));
  const auto r1 = DensityMatrix::pure(run_circuit(plus));
  EXPECT_NEAR(trace_distance(r0, r1), 1.0 / std::sqrt(2.0), 1e-12);
  // Dephased: TVD of the diagonals.
  const auto d0 = diagonal_density(Distribution::point_mass(1, 0));
  const auto d1 = diagonal_density(Distribution::uniform(1));
  EXPECT_NEAR(trace_distance(d0, d1), 0.5, 1e-12);
}

TEST(Density, ReducedDensityOfBellIsMaximallyMixed) {
  Circuit c(2);
  c.add(gates::h(0)).add(gates::cnot(0, 1));
  const auto rho = reduced_density(run_circuit(c), 1);
  ASSERT_EQ(rho.dim(), 2);
  EXPECT_NEAR(rho.matrix()(0, 0).real(), 0.5, 1e-12);
  EXPECT_NEAR(rho.matrix()(1, 1).real(), 0.5, 1e-12);
  EXPECT_NEAR(std::abs(rho.matrix()(0, 1)), 0.0, 1e-12);
  Eigen::MatrixXcd bad(2, 2);
  bad << 1.0, 0.0, 0.0, 1.0;
  EXPECT_THROW(DensityMatrix{bad}, std::invalid_argument);
}

TEST(Sampling, PointMassAndConsistency) {
  const SampleBatch pm = sample(Distribution::point_mass(2, 3), 5, 1);
  EXPECT_EQ(pm.samples, (std::vector<std::uint64_t>(5, 3)));
  const Circuit c = mixed_circuit(8, 21);
  const Distribution d = output_distribution(c);
  EXPECT_LE(empirical_tvd(sample(d, 1000000, 2), d), 0.01);
}

Distribution random_distribution(int bits, CounterRng& r) {
  std::vector<double> p(std::size_t{1} << bits);
  double s = 0;
  for (auto& x : p) s += (x = r.uniform01());
  for (auto& x : p) x /= s;
  return Distribution(bits, p);
}

DensityMatrix random_density(int bits, CounterRng& r) {
  const int dim = 1 << bits;
  Eigen::MatrixXcd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = {r.normal(), r.normal()};
  Eigen::MatrixXcd m = a * a.adjoint();
  m /= m.trace().real();
  return DensityMatrix(m);
}

TEST(Density, DiagonalTraceDistanceEqualsTvd) {
  CounterRng r(8);
  for (int k = 0; k < 50; ++k) {
    const int bits = 1 + k % 4;
    const auto a = random_distribution(bits, r), b = random_distribution(bits, r);
    EXPECT_NEAR(trace_distance(diagonal_density(a), diagonal_density(b)), total_variation_distance(a, b), 1e-9);
  }
  EXPECT_NEAR(total_variation_distance(Distribution::uniform(2), Distribution(2, {0.5, 0.5, 0, 0})), 0.5, 1e-15);
  const auto d = diagonal_density(Distribution(1, {0.25, 0.75}));
  EXPECT_EQ(d.matrix()(1, 1).real(), 0.75);
  EXPECT_EQ(std::abs(d.matrix()(0, 1)), 0.0);
}

TEST(Density, TraceDistanceIsAMetric) {
  CounterRng r(9);
  for (int k = 0; k < 30; ++k) {
    const auto a = random_density(3, r), b = random_density(3, r), c = random_density(3, r);
    const double ab = trace_distance(a, b), bc = trace_distance(b, c), ac = trace_distance(a, c);
    EXPECT_LE(ac, ab + bc + 1e-8);
    EXPECT_NEAR(ab, trace_distance(b, a), 1e-12);
    EXPECT_NEAR(trace_distance(a, a), 0.0, 1e-12);
  }
  Circuit one(1);
  one.add(gates::x(0));
  EXPECT_NEAR(trace_distance(DensityMatrix::pure(run_circuit(Circuit(1))), DensityMatrix::pure(run_circuit(one))),
              1.0, 1e-12);
  EXPECT_THROW(trace_distance(random_density(1, r), random_density(2, r)), DimensionMismatch);
}

}  // namespace
}  // namespace vqa::qsim
