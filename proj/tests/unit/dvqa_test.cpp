#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <set>

#include "vqa/common/rng.hpp"
#include "vqa/dvqa/dvqa.hpp"
#include "vqa/dvqa/number_theory.hpp"

namespace vqa::dvqa {
namespace {

bool naive_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

TEST(NumberTheory, PrimalityAgreesWithTrialDivision) {
  for (std::uint64_t n = 0; n < 20000; ++n) ASSERT_EQ(is_prime(n), naive_prime(n)) << n;
  CounterRng r(1);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t n = (r() >> 24) | 1;  // up to 40 bits
    ASSERT_EQ(is_prime(n), naive_prime(n)) << n;
  }
  EXPECT_TRUE(is_prime((1ULL << 61) - 1));
  EXPECT_TRUE(is_prime(18446744073709551557ULL));  // largest 64-bit prime
  EXPECT_FALSE(is_prime(3215031751ULL));           // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_FALSE(is_prime(3825123056546413051ULL));  // strong pseudoprime to the first nine prime bases
  EXPECT_FALSE(is_prime(561));
}

TEST(NumberTheory, ModularArithmetic) {
  CounterRng r(2);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t m = r() | 1, a = r(), b = r();
    EXPECT_EQ(mul_mod(a, b, m), static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m));
  }
  for (std::uint64_t m : {7ULL, 97ULL, 1000003ULL}) {
    for (std::uint64_t base = 2; base < 30; ++base) {
      std::uint64_t acc = 1;
      for (std::uint64_t e = 0; e < 40; ++e) {
        EXPECT_EQ(pow_mod(base, e, m), acc);
        acc = acc * base % m;
      }
    }
  }
  for (std::uint64_t m : {9ULL, 35ULL, 101ULL}) {
    for (std::uint64_t a = 1; a < m; ++a) {
      if (gcd(a, m) != 1) continue;
      std::uint64_t inv = 0;
      for (std::uint64_t c = 1; c < m; ++c)
        if (a * c % m == 1) inv = c;
      EXPECT_EQ(inverse_mod(a, m), inv);
    }
  }
  EXPECT_EQ(gcd(84, 36), 12u);
}

TEST(NumberTheory, BlumRootsMatchExhaustiveSearch) {
  for (auto [p, q] : {std::pair<std::uint64_t, std::uint64_t>{7, 11}, {3, 19}, {23, 43}}) {
    const std::uint64_t n = p * q;
    for (std::uint64_t y = 0; y < n; ++y) {
      std::set<std::uint64_t> roots;
      for (std::uint64_t x = 0; x < n; ++x)
        if (x * x % n == y && gcd(x, n) == 1) roots.insert(std::min(x, n - x));
      const auto got = blum_square_roots(y, p, q);
      if (roots.empty()) {
        EXPECT_FALSE(got.has_value()) << y;
        continue;
      }
      ASSERT_TRUE(got.has_value()) << y;
      ASSERT_EQ(roots.size(), 2u);
      EXPECT_EQ(got->first, *roots.begin());
      EXPECT_EQ(got->second, *roots.rbegin());
    }
  }
  EXPECT_EQ(canonical_root(70, 77), 7u);
}

TEST(Setup, KeysAreBlumIntegers) {
  const auto keys = setup(16, 20, 3);
  ASSERT_EQ(keys.pp.moduli.size(), 20u);
  ASSERT_EQ(keys.vk.factors.size(), 20u);
  for (std::size_t i = 0; i < 20; ++i) {
    const auto [p, q] = keys.vk.factors[i];
    EXPECT_EQ(p * q, keys.pp.moduli[i]);
    EXPECT_TRUE(naive_prime(p));
    EXPECT_TRUE(naive_prime(q));
    EXPECT_EQ(p % 4, 3u);
    EXPECT_EQ(q % 4, 3u);
    EXPECT_LT(p, q);
    EXPECT_EQ(std::bit_width(p), 8);
    EXPECT_EQ(std::bit_width(keys.pp.moduli[i]), 16);
  }
  EXPECT_EQ(setup(16, 20, 3).pp.moduli, keys.pp.moduli);
  EXPECT_NE(setup(16, 20, 4).pp.moduli, keys.pp.moduli);
  EXPECT_THROW(setup(15, 1, 1), std::invalid_argument);
  EXPECT_THROW(setup(32, 0, 1), std::invalid_argument);
  EXPECT_EQ(keys.pp.hash_id, "sha256");
}

TEST(Claw, SearchFindsBothRoots) {
  const auto keys = setup(24, 4, 8);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto n = keys.pp.moduli[i];
    const auto [p, q] = keys.vk.factors[i];
    EXPECT_EQ(find_factor(n), p);
    const std::uint64_t y = mul_mod(12345, 12345, n);
    EXPECT_EQ(find_claw(y, n), *blum_square_roots(y, p, q));
  }
  EXPECT_THROW(find_factor(keys.pp.moduli[0], 16), SearchBudgetExceeded);
  EXPECT_EQ(claw_parity(0b1011, 0b0110, 0b0011), std::popcount(0b1011u & (0b0110u ^ 0b0011u)) & 1);
}

TEST(Protocol, CompletenessAcrossSizes) {
  for (int bits : {16, 24, 32}) {
    const auto keys = setup(bits, 5, static_cast<std::uint64_t>(bits));
    for (std::uint64_t s = 0; s < 1000; ++s)
      ASSERT_TRUE(designated_verify(keys.pp, keys.vk, honest_prove(keys.pp, s))) << bits << " " << s;
  }
}

TEST(Protocol, ChallengeBitsAreBalanced) {
  const auto keys = setup(32, 20, 5);
  int ones = 0, total = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    const auto t = honest_prove(keys.pp, s);
    for (std::size_t i = 0; i < t.rounds.size(); ++i) {
      EXPECT_EQ(t.rounds[i].b, challenge_bit(keys.pp, i, t.rounds[i].y));
      ones += t.rounds[i].b;
      ++total;
    }
  }
  EXPECT_EQ(total, 10000);
  EXPECT_NEAR(ones / 10000.0, 0.5, 0.05);
}

TEST(Protocol, FlippedResponseRejected) {
  const auto keys = setup(32, 8, 6);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto t = honest_prove(keys.pp, s);
    for (std::size_t i = 0; i < t.rounds.size(); ++i) {
      auto bad = t;
      if (bad.rounds[i].b == 0) bad.rounds[i].x ^= 1;
      else bad.rounds[i].m ^= 1;
      EXPECT_FALSE(designated_verify(keys.pp, keys.vk, bad));
    }
  }
}

TEST(Protocol, TamperedCommitments) {
  // Re-committing every round with a fresh square x'^2 re-derives every
  // challenge. The tamperer can open b = 0 with x' but can only keep the stale
  // parity on b = 1, so each round survives with probability 3/4.
  const auto keys = setup(32, 20, 7);
  CounterRng r(11);
  int changed = 0, rounds = 0, accepted = 0;
  const int trials = 1000;
  for (int k = 0; k < trials; ++k) {
    auto t = honest_prove(keys.pp, static_cast<std::uint64_t>(k));
    for (std::size_t i = 0; i < t.rounds.size(); ++i) {
      const std::uint64_t n = keys.pp.moduli[i];
      auto& rd = t.rounds[i];
      std::uint64_t x, y;
      do {
        x = 2 + r.uniform_below(n - 3);
        y = mul_mod(x, x, n);
      } while (y == rd.y || gcd(x, n) != 1);
      const int b = challenge_bit(keys.pp, i, y);
      changed += b != rd.b;
      ++rounds;
      rd.y = y;
      if (b == 0) {
        rd.b = 0;
        rd.x = x;
      } else if (rd.b == 0) {
        rd.b = 1;
        rd.d = 1;
        rd.m = r.coin() ? 1 : 0;
      }
    }
    accepted += designated_verify(keys.pp, keys.vk, t);
  }
  EXPECT_NEAR(changed / double(rounds), 0.5, 0.05);
  EXPECT_LE(accepted / double(trials), 0.01);
}

TEST(Protocol, SingleTamperedRoundKeepsOldResponse) {
  // Changing one y_i and keeping its response only survives when the
  // challenge stays at 1 and the stale parity happens to match: 1/4 * 1/2.
  const auto keys = setup(32, 20, 7);
  CounterRng r(12);
  int accepted = 0;
  const int trials = 2000;
  for (int k = 0; k < trials; ++k) {
    auto t = honest_prove(keys.pp, static_cast<std::uint64_t>(k));
    const std::size_t i = r.uniform_below(t.rounds.size());
    const std::uint64_t n = keys.pp.moduli[i];
    std::uint64_t y;
    do {
      const std::uint64_t x = 2 + r.uniform_below(n - 3);
      y = mul_mod(x, x, n);
    } while (y == t.rounds[i].y);
    t.rounds[i].y = y;
    accepted += designated_verify(keys.pp, keys.vk, t);
  }
  EXPECT_LE(accepted / double(trials), 0.125 + 3 * std::sqrt(0.125 * 0.875 / trials));
}

TEST(Protocol, NonResidueCommitmentRejected) {
  const auto keys = setup(16, 1, 9);
  const auto [p, q] = keys.vk.factors[0];
  auto t = honest_prove(keys.pp, 1);
  std::uint64_t y = 2;
  while (blum_square_roots(y, p, q).has_value() || gcd(y, keys.pp.moduli[0]) != 1) ++y;
  t.rounds[0].y = y;
  t.rounds[0].b = challenge_bit(keys.pp, 0, y);
  EXPECT_FALSE(designated_verify(keys.pp, keys.vk, t));
}

TEST(Simulators, OneRootPerRoundRate) {
  const auto keys = setup(32, 1, 12);
  int accepted = 0;
  for (std::uint64_t s = 0; s < 10000; ++s)
    accepted += designated_verify(keys.pp, keys.vk, classical_sim(keys.pp, SimStrategy::kOneRootGuess, s));
  EXPECT_GE(accepted / 1e4, 0.72);
  EXPECT_LE(accepted / 1e4, 0.78);
}

TEST(Simulators, TwentyRoundSoundness) {
  const auto keys = setup(32, 20, 13);
  int one_root = 0, replay = 0, random = 0;
  const int runs = 2000;
  for (std::uint64_t s = 0; s < runs; ++s) {
    one_root += designated_verify(keys.pp, keys.vk, classical_sim(keys.pp, SimStrategy::kOneRootGuess, s));
    random += designated_verify(keys.pp, keys.vk, classical_sim(keys.pp, SimStrategy::kRandomResponse, s));
    if (s < 200) replay += designated_verify(keys.pp, keys.vk, classical_sim(keys.pp, SimStrategy::kReplay, s));
  }
  const double p = std::pow(0.75, 20);
  EXPECT_LE(one_root / double(runs), p + 3 * std::sqrt(p * (1 - p) / runs));
  EXPECT_LE(random / double(runs), 1e-3);
  EXPECT_EQ(replay, 0);
}

TEST(Simulators, PublicVerifierCannotCheckClaws) {
  const auto keys = setup(32, 20, 14);
  int designated = 0, pub = 0;
  for (std::uint64_t s = 0; s < 300; ++s) {
    const auto t = classical_sim(keys.pp, SimStrategy::kOneRootGuess, s);
    designated += designated_verify(keys.pp, keys.vk, t);
    pub += public_verify(keys.pp, t);
  }
  EXPECT_EQ(pub, 300);
  EXPECT_LT(designated, 10);
}

TEST(Game, Separations) {
  const auto keys = setup(32, 20, 15);
  const auto sep = run_dvqa_game(keys, 200, SimStrategy::kOneRootGuess, 1);
  EXPECT_EQ(sep.honest_rate, 1.0);
  EXPECT_GE(sep.advantage, 0.99);
  const auto control = run_dvqa_game(keys, 200, SimStrategy::kHonest, 2);
  EXPECT_LE(control.advantage, 3 * control.std_error + 1e-12);
  const auto one = run_dvqa_experiment(32, 1, 20, 200, SimStrategy::kOneRootGuess, 3);
  EXPECT_NEAR(one.advantage, 0.25, 3 * one.std_error + 0.02);
  const auto par = run_dvqa_game(keys, 50, SimStrategy::kOneRootGuess, 1, 4);
  const auto seq = run_dvqa_game(keys, 50, SimStrategy::kOneRootGuess, 1, 1);
  EXPECT_EQ(par.sim_accepts, seq.sim_accepts);
  EXPECT_THROW(run_dvqa_game(keys, 0, SimStrategy::kHonest, 1), std::invalid_argument);
}

TEST(Serialization, RoundTripAndMismatch) {
  const auto keys = setup(24, 3, 16);
  const auto t = honest_prove(keys.pp, 5);
  const auto pp = public_params_from_json(to_json(keys.pp));
  const auto vk = verification_key_from_json(to_json(keys.vk));
  const auto back = transcript_from_json(to_json(t));
  EXPECT_EQ(pp.moduli, keys.pp.moduli);
  EXPECT_EQ(pp.modulus_bits, 24);
  EXPECT_EQ(vk.factors, keys.vk.factors);
  EXPECT_TRUE(designated_verify(pp, vk, back));
  EXPECT_TRUE(to_json(keys.pp)["moduli"][0].is_string());
  const auto other = setup(24, 3, 17);
  EXPECT_THROW(designated_verify(keys.pp, other.vk, t), std::invalid_argument);
  EXPECT_EQ(parse_strategy("replay"), SimStrategy::kReplay);
  EXPECT_THROW(parse_strategy("oracle"), std::invalid_argument);
}

}  // namespace
}  // namespace vqa::dvqa
