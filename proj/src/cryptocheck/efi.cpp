#include "vqa/cryptocheck/efi.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "vqa/common/parallel.hpp"
#include "vqa/qsim/sampling.hpp"
#include "vqa/qsim/simulator.hpp"

namespace vqa::cryptocheck {

using qsim::Distribution;

int StateGenerator::num_bits() const {
  if (const auto* c = std::get_if<qsim::Circuit>(&source)) return c->num_measured();
  return std::get<Distribution>(source).num_bits;
}

Distribution StateGenerator::measurement_distribution() const {
  if (const auto* c = std::get_if<qsim::Circuit>(&source)) return qsim::output_distribution(*c);
  return std::get<Distribution>(source);
}

qsim::DensityMatrix StateGenerator::density() const {
  if (num_bits() > qsim::kMaxDensityQubits) {
    throw qsim::CapacityExceeded("density matrices are limited to " + std::to_string(qsim::kMaxDensityQubits) +
                                 " qubits");
  }
  if (const auto* c = std::get_if<qsim::Circuit>(&source); c != nullptr && !dephase) {
    if (c->num_measured() != c->num_qubits) {
      for (int i = 0; i < c->num_measured(); ++i)
        if (c->measured[static_cast<std::size_t>(i)] != i)
          throw std::invalid_argument("pure-state generators must measure the low qubits in order");
      return qsim::reduced_density(qsim::run_circuit(*c), c->num_measured());
    }
    return qsim::DensityMatrix::pure(qsim::run_circuit(*c));
  }
  return qsim::diagonal_density(measurement_distribution());
}

double efi_statistical_farness(const EfiCandidate& c) {
  if (c.gen0.num_bits() != c.gen1.num_bits()) throw qsim::DimensionMismatch("EFI generators differ in width");
  return qsim::trace_distance(c.gen0.density(), c.gen1.density());
}

// ---- BatteryTally ----------------------------------------------------------------

std::size_t BatteryTally::slot(const std::string& name) {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  names_.push_back(name);
  accepts_.push_back({0, 0});
  return names_.size() - 1;
}

void BatteryTally::add(int side, const strategies::BatteryOutcome& out) {
  ++n_[side];
  accepts_[slot("battery")][side] += out.result.decision ? 1 : 0;
  for (const auto& t : out.tests) accepts_[slot(t.name)][side] += t.p_value < out.threshold ? 1 : 0;
}

void BatteryTally::merge(const BatteryTally& other) {
  n_[0] += other.n_[0];
  n_[1] += other.n_[1];
  for (std::size_t i = 0; i < other.names_.size(); ++i) {
    auto& a = accepts_[slot(other.names_[i])];
    a[0] += other.accepts_[i][0];
    a[1] += other.accepts_[i][1];
  }
}

namespace {

struct Entry {
  double advantage = 0.0;
  double sigma = 0.0;
};

Entry best_entry(const std::vector<std::array<std::size_t, 2>>& accepts, const std::size_t* n) {
  Entry best;
  if (n[0] == 0 || n[1] == 0) return best;
  const double n0 = static_cast<double>(n[0]);
  const double n1 = static_cast<double>(n[1]);
  for (const auto& a : accepts) {
    const double r0 = static_cast<double>(a[0]) / n0;
    const double r1 = static_cast<double>(a[1]) / n1;
    if (std::abs(r0 - r1) > best.advantage || (best.advantage == 0.0 && best.sigma == 0.0)) {
      best.advantage = std::abs(r0 - r1);
      best.sigma = std::sqrt(r0 * (1.0 - r0) / n0 + r1 * (1.0 - r1) / n1);
    }
  }
  return best;
}

}  // namespace

double BatteryTally::max_advantage() const { return best_entry(accepts_, n_).advantage; }

double BatteryTally::max_advantage_sigma() const { return best_entry(accepts_, n_).sigma; }

double efi_empirical_indistinguishability(const EfiCandidate& c, std::size_t m, std::size_t trials,
                                          std::uint64_t seed, unsigned workers) {
  if (c.gen0.num_bits() != c.gen1.num_bits()) throw qsim::DimensionMismatch("EFI generators differ in width");
  if (m == 0 || trials == 0) return 0.0;
  const Distribution d0 = c.gen0.measurement_distribution();
  const Distribution d1 = c.gen1.measurement_distribution();
  const auto ref = strategies::BatteryReference::from_distribution(d0, true);
  const qsim::AliasSampler s0(d0);
  const qsim::AliasSampler s1(d1);

  std::vector<BatteryTally> per(trials);
  parallel_for(trials, workers, [&](std::size_t i) {
    per[i].add(0, strategies::run_battery(ref, s0.draw(m, derive_seed(seed, i, 0))));
    per[i].add(1, strategies::run_battery(ref, s1.draw(m, derive_seed(seed, i, 1))));
  });
  BatteryTally total;
  for (const auto& t : per) total.merge(t);
  return total.max_advantage();
}

EfiReport efi_check(const EfiCandidate& c, std::size_t m, std::size_t trials, std::uint64_t seed,
                    std::optional<double> farness_threshold, double advantage_threshold, unsigned workers) {
  if (c.lambda < 1) throw std::invalid_argument("lambda must be >= 1");
  EfiReport r;
  r.statistical_farness = efi_statistical_farness(c);
  r.battery_advantage = efi_empirical_indistinguishability(c, m, trials, seed, workers);
  r.farness_threshold = farness_threshold.value_or(1.0 / static_cast<double>(c.lambda));
  r.advantage_threshold = advantage_threshold;
  r.verdict.farness_pass = r.statistical_farness >= r.farness_threshold;
  r.verdict.indistinguishability_not_refuted = r.battery_advantage <= advantage_threshold;
  return r;
}

// ---- Hybrid argument -------------------------------------------------------------

SampleSource source_from(const Distribution& d) {
  auto sampler = std::make_shared<const qsim::AliasSampler>(d);
  return [sampler](CounterRng& rng) { return (*sampler)(rng); };
}

SingleCopyDecider hybrid_amplify(MultiCopyDecider decider, SampleSource gen0, SampleSource gen1, std::size_t t) {
  if (t == 0) throw std::invalid_argument("hybrid_amplify needs t >= 1");
  return [decider = std::move(decider), gen0 = std::move(gen0), gen1 = std::move(gen1), t](
             std::uint64_t challenge, std::uint64_t seed) {
    CounterRng rng(seed);
    const std::size_t i = t == 1 ? 0 : rng.uniform_below(t);
    std::vector<std::uint64_t> copies(t);
    for (std::size_t j = 0; j < i; ++j) copies[j] = gen0(rng);
    copies[i] = challenge;
    for (std::size_t j = i + 1; j < t; ++j) copies[j] = gen1(rng);
    return decider(copies);
  };
}

namespace {

AdvantageEstimate rate_difference(std::size_t a0, std::size_t a1, std::size_t n) {
  const double p0 = static_cast<double>(a0) / static_cast<double>(n);
  const double p1 = static_cast<double>(a1) / static_cast<double>(n);
  return {p0 - p1, std::sqrt((p0 * (1.0 - p0) + p1 * (1.0 - p1)) / static_cast<double>(n))};
}

}  // namespace

AdvantageEstimate measure_single_copy_advantage(const SingleCopyDecider& d, const SampleSource& gen0,
                                                const SampleSource& gen1, std::size_t challenges,
                                                std::uint64_t seed) {
  if (challenges == 0) return {};
  std::size_t a[2] = {0, 0};
  for (std::size_t k = 0; k < challenges; ++k) {
    for (int side = 0; side < 2; ++side) {
      CounterRng rng(derive_seed(seed, k, 2 * static_cast<std::uint64_t>(side)));
      const std::uint64_t z = side == 0 ? gen0(rng) : gen1(rng);
      a[side] += d(z, derive_seed(seed, k, 2 * static_cast<std::uint64_t>(side) + 1)) ? 1 : 0;
    }
  }
  return rate_difference(a[0], a[1], challenges);
}

AdvantageEstimate measure_multi_copy_advantage(const MultiCopyDecider& d, const SampleSource& gen0,
                                               const SampleSource& gen1, std::size_t t, std::size_t runs,
                                               std::uint64_t seed) {
  if (runs == 0) return {};
  std::size_t a[2] = {0, 0};
  std::vector<std::uint64_t> copies(t);
  for (std::size_t k = 0; k < runs; ++k) {
    for (int side = 0; side < 2; ++side) {
      CounterRng rng(derive_seed(seed, k, static_cast<std::uint64_t>(side)));
      for (auto& z : copies) z = side == 0 ? gen0(rng) : gen1(rng);
      a[side] += d(copies) ? 1 : 0;
    }
  }
  return rate_difference(a[0], a[1], runs);
}

}  // namespace vqa::cryptocheck
