#pragma once

#include <cstdint>

#include "vqa/families/families.hpp"

namespace vqa::cryptocheck {

struct BatteryGameResult {
  double advantage = 0.0;
  double sigma = 0.0;
  std::size_t trials = 0;
};

/// Pairs (C_i, C_j) = (draw 2k, draw 2k+1). The battery is given C_i's exact
/// distribution and decides on samples of C_i versus samples of C_j.
/// same_pair = true uses C_j = C_i as a control.
BatteryGameResult unidentifiability_test(const families::CircuitFamily& fam, std::size_t m, std::size_t trials,
                                         std::uint64_t seed, bool same_pair = false, unsigned workers = 1);

/// Per trial: a family draw C and a Haar outcome model. The battery is given
/// C's exact distribution and decides on samples of C versus samples of the
/// Haar model.
BatteryGameResult prs_shadow_test(const families::CircuitFamily& fam, std::size_t m, std::size_t trials,
                                  std::uint64_t seed, unsigned workers = 1);

}  // namespace vqa::cryptocheck
