#include "vqa/strategies/gf2.hpp"

#include "vqa/common/bits.hpp"

namespace vqa::strategies {

Gf2Echelon gf2_row_reduce(std::span<const std::uint64_t> rows, int n) {
  Gf2Echelon e{n, {}, {}};
  const std::uint64_t mask = low_mask(static_cast<unsigned>(n));
  for (std::uint64_t v : rows) {
    v &= mask;
    for (std::size_t i = 0; i < e.rows.size(); ++i)
      if ((v >> e.pivots[i]) & 1U) v ^= e.rows[i];
    if (v == 0) continue;
    const int pivot = 63 - std::countl_zero(v);
    // Keep the basis fully reduced: clear the new pivot from older rows.
    for (auto& r : e.rows)
      if ((r >> pivot) & 1U) r ^= v;
    e.rows.push_back(v);
    e.pivots.push_back(pivot);
    if (e.rank() == n) break;
  }
  return e;
}

std::vector<std::uint64_t> gf2_null_space(const Gf2Echelon& e) {
  std::uint64_t pivot_mask = 0;
  for (int p : e.pivots) pivot_mask |= std::uint64_t{1} << p;
  std::vector<std::uint64_t> basis;
  for (int free = 0; free < e.n; ++free) {
    if ((pivot_mask >> free) & 1U) continue;
    // Set the free bit, then each pivot bit equals that row's coefficient on it.
    std::uint64_t v = std::uint64_t{1} << free;
    for (std::size_t i = 0; i < e.rows.size(); ++i)
      if ((e.rows[i] >> free) & 1U) v |= std::uint64_t{1} << e.pivots[i];
    basis.push_back(v);
  }
  return basis;
}

}  // namespace vqa::strategies
