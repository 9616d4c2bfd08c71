#pragma once

#include <cstdint>
#include <vector>

#include "vqa/qsim/distribution.hpp"

namespace vqa::cryptocheck {

inline constexpr int kMaxHaarBits = 26;

/// Measurement statistics of a Haar-random n-qubit state:
/// p(x) = (g_x^2 + h_x^2) / (G + H) with g, h standard Gaussian vectors.
struct HaarOutcomeModel {
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<double> g;
  std::vector<double> h;
  double G = 0.0;  // sum g_x^2, chi-squared with 2^n degrees
  double H = 0.0;
  qsim::Distribution p;
};

/// Throws std::invalid_argument for n outside [1, 26].
HaarOutcomeModel haar_measurement_distribution(int n, std::uint64_t seed);

struct CollisionReport {
  int n = 0;
  std::size_t m = 0;
  std::size_t batches_per_draw = 0;
  std::vector<double> estimates;          // per Haar draw
  std::vector<double> birthday_values;    // C(m,2) * sum p^2 per draw
  double mean_estimate = 0.0;
  double bound_statement = 0.0;           // 50 m^2 2^-n
  double bound_markov = 0.0;              // 50 m^2 2^-n/2
  bool statement_vacuous = false;         // bound >= 1
  bool markov_vacuous = false;
  double fraction_within_statement = 0.0;
  double fraction_within_markov = 0.0;
};

/// For each Haar draw, estimates Pr[some pair among m samples collides] from
/// `batches_per_draw` independent batches.
CollisionReport collision_probability_check(int n, std::size_t m, std::size_t num_distributions,
                                            std::size_t batches_per_draw, std::uint64_t seed,
                                            unsigned workers = 1);

struct ChiSquaredReport {
  std::size_t k = 0;
  double x = 0.0;
  std::size_t trials = 0;
  double lower = 0.0;  // k - 2 sqrt(kx)
  double upper = 0.0;  // k + 2 sqrt(kx) + 2x
  std::size_t out_of_interval = 0;
  double out_frequency = 0.0;
  double bound = 0.0;  // 2 e^-x
  double sigma = 0.0;  // binomial sd at the bound
  double mean = 0.0;
  bool pass = false;   // out_frequency <= bound + 3 sigma
};

/// Throws std::invalid_argument for k == 0 or x <= 0.
ChiSquaredReport chi_squared_tail_check(std::size_t k, double x, std::size_t trials, std::uint64_t seed,
                                        unsigned workers = 1);

}  // namespace vqa::cryptocheck
