#include "vqa/cryptocheck/identify.hpp"

#include "vqa/common/parallel.hpp"
#include "vqa/common/rng.hpp"
#include "vqa/cryptocheck/efi.hpp"
#include "vqa/cryptocheck/haar.hpp"
#include "vqa/qsim/sampling.hpp"
#include "vqa/qsim/simulator.hpp"

namespace vqa::cryptocheck {

namespace {

BatteryGameResult summarize(const std::vector<BatteryTally>& per) {
  BatteryTally total;
  for (const auto& t : per) total.merge(t);
  return {total.max_advantage(), total.max_advantage_sigma(), per.size()};
}

}  // namespace

BatteryGameResult unidentifiability_test(const families::CircuitFamily& fam, std::size_t m, std::size_t trials,
                                         std::uint64_t seed, bool same_pair, unsigned workers) {
  if (m == 0 || trials == 0) return {0.0, 0.0, trials};
  const std::uint64_t draw_root = derive_seed(seed, 0);
  std::vector<BatteryTally> per(trials);
  parallel_for(trials, workers, [&](std::size_t k) {
    const auto ci = fam.draw_at(2 * k, draw_root);
    const qsim::Distribution di = qsim::output_distribution(ci.circuit);
    const qsim::Distribution dj =
        same_pair ? di : qsim::output_distribution(fam.draw_at(2 * k + 1, draw_root).circuit);
    const auto ref = strategies::BatteryReference::from_distribution(di, true);
    per[k].add(0, strategies::run_battery(ref, qsim::sample(di, m, derive_seed(seed, 1, k))));
    per[k].add(1, strategies::run_battery(ref, qsim::sample(dj, m, derive_seed(seed, 2, k))));
  });
  return summarize(per);
}

BatteryGameResult prs_shadow_test(const families::CircuitFamily& fam, std::size_t m, std::size_t trials,
                                  std::uint64_t seed, unsigned workers) {
  if (m == 0 || trials == 0) return {0.0, 0.0, trials};
  const std::uint64_t draw_root = derive_seed(seed, 0);
  std::vector<BatteryTally> per(trials);
  parallel_for(trials, workers, [&](std::size_t k) {
    const auto c = fam.draw_at(k, draw_root);
    const qsim::Distribution dc = qsim::output_distribution(c.circuit);
    const HaarOutcomeModel haar = haar_measurement_distribution(dc.num_bits, derive_seed(seed, 3, k));
    const auto ref = strategies::BatteryReference::from_distribution(dc, true);
    per[k].add(0, strategies::run_battery(ref, qsim::sample(dc, m, derive_seed(seed, 1, k))));
    per[k].add(1, strategies::run_battery(ref, qsim::sample(haar.p, m, derive_seed(seed, 2, k))));
  });
  return summarize(per);
}

}  // namespace vqa::cryptocheck
