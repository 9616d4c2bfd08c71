#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vqa::dvqa {

inline constexpr int kMinModulusBits = 16;
inline constexpr int kMaxModulusBits = 64;
inline constexpr int kDefaultModulusBits = 32;
/// Trial divisions allowed per claw search.
inline constexpr std::uint64_t kClawSearchBudget = std::uint64_t{1} << 24;

struct PublicParams {
  int modulus_bits = kDefaultModulusBits;
  std::string hash_id = "sha256";
  std::vector<std::uint64_t> moduli;  // one Blum integer per round

  std::size_t rounds() const noexcept { return moduli.size(); }
};

struct VerificationKey {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> factors;  // (p, q), p < q
};

struct DvqaKeys {
  PublicParams pp;
  VerificationKey vk;
};

struct Round {
  std::uint64_t y = 0;  // commitment
  int b = 0;            // challenge
  std::uint64_t x = 0;  // b = 0: a square root of y
  std::uint64_t d = 0;  // b = 1: nonzero mask
  int m = 0;            // b = 1: parity of d & (x0 xor x1)
};

struct Transcript {
  std::vector<Round> rounds;
};

class SearchBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// k independent Blum integers of `modulus_bits` bits; throws
/// std::invalid_argument outside [16, 64] or for k < 1, std::runtime_error
/// when prime generation exhausts its retry budget.
DvqaKeys setup(int modulus_bits, std::size_t k, std::uint64_t seed);

/// First bit of SHA-256 over (domain, pp, round index, y).
int challenge_bit(const PublicParams& pp, std::size_t round, std::uint64_t y);

/// Smallest nontrivial factor of n by trial division; throws
/// SearchBudgetExceeded when sqrt(n) exceeds the budget.
std::uint64_t find_factor(std::uint64_t n, std::uint64_t budget = kClawSearchBudget);

/// Both canonical roots of y mod N found by exhaustive search (the stand-in
/// for quantum claw access).
std::pair<std::uint64_t, std::uint64_t> find_claw(std::uint64_t y, std::uint64_t n,
                                                  std::uint64_t budget = kClawSearchBudget);

/// Parity of d & (x0 xor x1) on the fixed-width encoding.
int claw_parity(std::uint64_t d, std::uint64_t x0, std::uint64_t x1) noexcept;

Transcript honest_prove(const PublicParams& pp, std::uint64_t seed);

enum class SimStrategy { kOneRootGuess, kReplay, kRandomResponse, kHonest };
const char* strategy_name(SimStrategy s) noexcept;
/// "one-root-guess", "replay", "random-response", "honest" (control).
SimStrategy parse_strategy(const std::string& name);

/// Classical simulators. kReplay presents an honest transcript made under
/// independently generated keys of the same shape; kHonest is a control.
Transcript classical_sim(const PublicParams& pp, SimStrategy strategy, std::uint64_t seed);

/// Per round: recompute b; b = 0 needs x^2 = y mod N; b = 1 needs d != 0
/// within the modulus width and m matching the claw parity computed from vk.
/// Throws std::invalid_argument when vk does not match pp.
bool designated_verify(const PublicParams& pp, const VerificationKey& vk, const Transcript& t);

/// Verifier without vk: checks the challenges and the b = 0 rounds and lets
/// every b = 1 round through.
bool public_verify(const PublicParams& pp, const Transcript& t);

struct DvqaReport {
  std::vector<int> honest_accepts;
  std::vector<int> sim_accepts;
  double honest_rate = 0.0;
  double sim_rate = 0.0;
  double advantage = 0.0;
  double std_error = 0.0;
};

/// q honest and q simulator transcripts at fixed keys.
DvqaReport run_dvqa_game(const DvqaKeys& keys, std::size_t q, SimStrategy sim, std::uint64_t seed,
                         unsigned workers = 1);

struct DvqaExperiment {
  std::vector<DvqaReport> per_key;
  double advantage = 0.0;  // mean over key draws
  double std_error = 0.0;
};

/// Outer average of run_dvqa_game over `key_draws` fresh setups.
DvqaExperiment run_dvqa_experiment(int modulus_bits, std::size_t k, std::size_t key_draws, std::size_t q,
                                   SimStrategy sim, std::uint64_t seed, unsigned workers = 1);

nlohmann::json to_json(const PublicParams& pp);
nlohmann::json to_json(const VerificationKey& vk);
nlohmann::json to_json(const Transcript& t);
PublicParams public_params_from_json(const nlohmann::json& j);
VerificationKey verification_key_from_json(const nlohmann::json& j);
Transcript transcript_from_json(const nlohmann::json& j);

}  // namespace vqa::dvqa
