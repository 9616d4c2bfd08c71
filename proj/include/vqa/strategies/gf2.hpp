#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace vqa::strategies {

/// Row-reduced basis of the span of `rows` (each an n-bit vector).
struct Gf2Echelon {
  int n = 0;
  std::vector<std::uint64_t> rows;   // reduced rows, one pivot each
  std::vector<int> pivots;           // pivot bit of rows[i]

  int rank() const noexcept { return static_cast<int>(rows.size()); }
};

Gf2Echelon gf2_row_reduce(std::span<const std::uint64_t> rows, int n);

/// Basis of {v : r . v = 0 (mod 2) for every row r}.
std::vector<std::uint64_t> gf2_null_space(const Gf2Echelon& e);

}  // namespace vqa::strategies
