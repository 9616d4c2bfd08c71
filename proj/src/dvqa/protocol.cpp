#include <bit>
#include <cmath>

#include "vqa/common/bits.hpp"
#include "vqa/common/hash.hpp"
#include "vqa/common/parallel.hpp"
#include "vqa/common/rng.hpp"
#include "vqa/dvqa/dvqa.hpp"
#include "vqa/dvqa/number_theory.hpp"

namespace vqa::dvqa {

namespace {

constexpr int kPrimeAttempts = 1 << 20;

std::uint64_t random_blum_prime(int bits, CounterRng& rng) {
  const std::uint64_t top = std::uint64_t{3} << (bits - 2);  // two leading ones
  const std::uint64_t span = std::uint64_t{1} << (bits - 2);
  for (int attempt = 0; attempt < kPrimeAttempts; ++attempt) {
    std::uint64_t c = top | rng.uniform_below(span);
    c |= 3U;  // c = 3 mod 4
    if (is_prime(c)) return c;
  }
  throw std::runtime_error("prime generation exhausted its retry budget");
}

std::uint64_t width_mask(int bits) { return low_mask(static_cast<unsigned>(bits)); }

std::uint64_t random_unit(std::uint64_t n, CounterRng& rng) {
  for (;;) {
    const std::uint64_t x = 1 + rng.uniform_below(n - 1);
    if (gcd(x, n) == 1) return x;
  }
}

std::uint64_t random_mask(int bits, CounterRng& rng) {
  for (;;) {
    const std::uint64_t d = rng() & width_mask(bits);
    if (d != 0) return d;
  }
}

void check_pp(const PublicParams& pp) {
  if (pp.hash_id != kHashId) throw std::invalid_argument("unsupported hash '" + pp.hash_id + "'");
  if (pp.modulus_bits < kMinModulusBits || pp.modulus_bits > kMaxModulusBits) {
    throw std::invalid_argument("modulus bits outside [16, 64]");
  }
}

}  // namespace

DvqaKeys setup(int modulus_bits, std::size_t k, std::uint64_t seed) {
  if (modulus_bits < kMinModulusBits || modulus_bits > kMaxModulusBits) {
    throw std::invalid_argument("modulus_bits must lie in [16, 64]");
  }
  if (k < 1) throw std::invalid_argument("setup needs k >= 1");
  DvqaKeys keys;
  keys.pp.modulus_bits = modulus_bits;
  keys.pp.hash_id = std::string(kHashId);
  const int pbits = modulus_bits / 2;
  const int qbits = modulus_bits - pbits;
  for (std::size_t i = 0; i < k; ++i) {
    CounterRng rng(derive_seed(seed, i));
    std::uint64_t p = random_blum_prime(pbits, rng);
    std::uint64_t q = random_blum_prime(qbits, rng);
    while (q == p) q = random_blum_prime(qbits, rng);
    if (p > q) std::swap(p, q);
    keys.pp.moduli.push_back(p * q);
    keys.vk.factors.emplace_back(p, q);
  }
  return keys;
}

int challenge_bit(const PublicParams& pp, std::size_t round, std::uint64_t y) {
  check_pp(pp);
  HashInput h("vqa.dvqa.challenge.v1");
  h.append(pp.hash_id).append_u64(static_cast<std::uint64_t>(pp.modulus_bits)).append_u64(pp.moduli.size());
  for (std::uint64_t n : pp.moduli) h.append_u64(n);
  h.append_u64(round).append_u64(y);
  return h.digest()[0] >> 7;
}

std::uint64_t find_factor(std::uint64_t n, std::uint64_t budget) {
  if (n < 4) throw std::invalid_argument("nothing to factor");
  if (n % 2 == 0) return 2;
  const auto limit = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n))) + 1;
  if (limit / 2 > budget) throw SearchBudgetExceeded("claw search exceeds its budget");
  for (std::uint64_t d = 3; d <= limit; d += 2)
    if (n % d == 0) return d;
  throw std::invalid_argument("modulus is prime");
}

std::pair<std::uint64_t, std::uint64_t> find_claw(std::uint64_t y, std::uint64_t n, std::uint64_t budget) {
  const std::uint64_t p = find_factor(n, budget);
  const auto roots = blum_square_roots(y, p, n / p);
  if (!roots) throw std::invalid_argument("commitment has no square root");
  return *roots;
}

int claw_parity(std::uint64_t d, std::uint64_t x0, std::uint64_t x1) noexcept {
  return std::popcount(d & (x0 ^ x1)) & 1;
}

Transcript honest_prove(const PublicParams& pp, std::uint64_t seed) {
  check_pp(pp);
  Transcript t;
  CounterRng rng(seed);
  for (std::size_t i = 0; i < pp.rounds(); ++i) {
    const std::uint64_t n = pp.moduli[i];
    Round r;
    const std::uint64_t x = random_unit(n, rng);
    r.y = mul_mod(x, x, n);
    r.b = challenge_bit(pp, i, r.y);
    if (r.b == 0) {
      r.x = x;
    } else {
      const auto [x0, x1] = find_claw(r.y, n);
      r.d = random_mask(pp.modulus_bits, rng);
      r.m = claw_parity(r.d, x0, x1);
    }
    t.rounds.push_back(r);
  }
  return t;
}

const char* strategy_name(SimStrategy s) noexcept {
  switch (s) {
    case SimStrategy::kOneRootGuess:
      return "one-root-guess";
    case SimStrategy::kReplay:
      return "replay";
    case SimStrategy::kRandomResponse:
      return "random-response";
    case SimStrategy::kHonest:
      return "honest";
  }
  return "?";
}

SimStrategy parse_strategy(const std::string& name) {
  for (auto s : {SimStrategy::kOneRootGuess, SimStrategy::kReplay, SimStrategy::kRandomResponse, SimStrategy::kHonest})
    if (name == strategy_name(s)) return s;
  throw std::invalid_argument("unknown simulator strategy '" + name + "'");
}

Transcript classical_sim(const PublicParams& pp, SimStrategy strategy, std::uint64_t seed) {
  check_pp(pp);
  if (strategy == SimStrategy::kHonest) return honest_prove(pp, seed);
  if (strategy == SimStrategy::kReplay) {
    const DvqaKeys old = setup(pp.modulus_bits, pp.rounds(), derive_seed(seed, 1));
    return honest_prove(old.pp, derive_seed(seed, 2));
  }
  Transcript t;
  CounterRng rng(seed);
  for (std::size_t i = 0; i < pp.rounds(); ++i) {
    const std::uint64_t n = pp.moduli[i];
    Round r;
    if (strategy == SimStrategy::kOneRootGuess) {
      const std::uint64_t x = random_unit(n, rng);
      r.y = mul_mod(x, x, n);
      r.b = challenge_bit(pp, i, r.y);
      if (r.b == 0) r.x = x;
    } else {
      r.y = 1 + rng.uniform_below(n - 1);
      r.b = challenge_bit(pp, i, r.y);
      if (r.b == 0) r.x = rng.uniform_below(n);
    }
    if (r.b == 1) {
      r.d = random_mask(pp.modulus_bits, rng);
      r.m = rng.coin() ? 1 : 0;
    }
    t.rounds.push_back(r);
  }
  return t;
}

namespace {

bool verify_rounds(const PublicParams& pp, const VerificationKey* vk, const Transcript& t) {
  check_pp(pp);
  if (vk != nullptr) {
    if (vk->factors.size() != pp.moduli.size()) throw std::invalid_argument("vk does not match pp");
    for (std::size_t i = 0; i < pp.moduli.size(); ++i) {
      const auto [p, q] = vk->factors[i];
      if (static_cast<unsigned __int128>(p) * q != pp.moduli[i]) throw std::invalid_argument("vk does not match pp");
    }
  }
  if (t.rounds.size() != pp.rounds()) return false;
  for (std::size_t i = 0; i < pp.rounds(); ++i) {
    const Round& r = t.rounds[i];
    const std::uint64_t n = pp.moduli[i];
    if (r.y == 0 || r.y >= n) return false;
    const int b = challenge_bit(pp, i, r.y);
    if (r.b != b) return false;
    if (b == 0) {
      if (r.x == 0 || r.x >= n || mul_mod(r.x, r.x, n) != r.y || gcd(r.y, n) != 1) return false;
      continue;
    }
    if (vk == nullptr) continue;
    if (r.d == 0 || (r.d & ~width_mask(pp.modulus_bits)) != 0 || (r.m != 0 && r.m != 1)) return false;
    const auto roots = blum_square_roots(r.y, vk->factors[i].first, vk->factors[i].second);
    if (!roots) return false;
    if (claw_parity(r.d, roots->first, roots->second) != r.m) return false;
  }
  return true;
}

double rate(const std::vector<int>& v) {
  double s = 0.0;
  for (int a : v) s += a;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

}  // namespace

bool designated_verify(const PublicParams& pp, const VerificationKey& vk, const Transcript& t) {
  return verify_rounds(pp, &vk, t);
}

bool public_verify(const PublicParams& pp, const Transcript& t) { return verify_rounds(pp, nullptr, t); }

DvqaReport run_dvqa_game(const DvqaKeys& keys, std::size_t q, SimStrategy sim, std::uint64_t seed,
                         unsigned workers) {
  if (q < 1) throw std::invalid_argument("run_dvqa_game needs q >= 1");
  DvqaReport rep;
  rep.honest_accepts.assign(q, 0);
  rep.sim_accepts.assign(q, 0);
  parallel_for(2 * q, workers, [&](std::size_t j) {
    const std::size_t i = j / 2;
    if (j % 2 == 0) {
      rep.honest_accepts[i] = designated_verify(keys.pp, keys.vk, honest_prove(keys.pp, derive_seed(seed, 0, i)));
    } else {
      rep.sim_accepts[i] =
          designated_verify(keys.pp, keys.vk, classical_sim(keys.pp, sim, derive_seed(seed, 1, i)));
    }
  });
  rep.honest_rate = rate(rep.honest_accepts);
  rep.sim_rate = rate(rep.sim_accepts);
  rep.advantage = std::abs(rep.honest_rate - rep.sim_rate);
  const double qd = static_cast<double>(q);
  rep.std_error =
      std::sqrt(rep.honest_rate * (1.0 - rep.honest_rate) / qd + rep.sim_rate * (1.0 - rep.sim_rate) / qd);
  return rep;
}

DvqaExperiment run_dvqa_experiment(int modulus_bits, std::size_t k, std::size_t key_draws, std::size_t q,
                                   SimStrategy sim, std::uint64_t seed, unsigned workers) {
  if (key_draws < 1) throw std::invalid_argument("key_draws must be >= 1");
  DvqaExperiment e;
  double se2 = 0.0;
  for (std::size_t j = 0; j < key_draws; ++j) {
    const DvqaKeys keys = setup(modulus_bits, k, derive_seed(seed, 2, j));
    e.per_key.push_back(run_dvqa_game(keys, q, sim, derive_seed(seed, 3, j), workers));
    e.advantage += e.per_key.back().advantage;
    se2 += e.per_key.back().std_error * e.per_key.back().std_error;
  }
  const double kd = static_cast<double>(key_draws);
  e.advantage /= kd;
  double var = 0.0;
  if (key_draws > 1) {
    for (const auto& r : e.per_key) var += (r.advantage - e.advantage) * (r.advantage - e.advantage);
    var /= kd - 1.0;
  }
  e.std_error = std::sqrt(var / kd + se2 / (kd * kd));
  return e;
}

// ---- Serialization ------------------------------------------------------------------

using nlohmann::json;

json to_json(const PublicParams& pp) {
  json moduli = json::array();
  for (auto n : pp.moduli) moduli.push_back(to_hex(n));
  return {{"hash", pp.hash_id}, {"modulus_bits", pp.modulus_bits}, {"moduli", moduli}};
}

json to_json(const VerificationKey& vk) {
  json f = json::array();
  for (auto [p, q] : vk.factors) f.push_back({to_hex(p), to_hex(q)});
  return {{"factors", f}};
}

json to_json(const Transcript& t) {
  json rounds = json::array();
  for (const auto& r : t.rounds) {
    json j = {{"y", to_hex(r.y)}, {"b", r.b}};
    if (r.b == 0) {
      j["x"] = to_hex(r.x);
    } else {
      j["d"] = to_hex(r.d);
      j["m"] = r.m;
    }
    rounds.push_back(std::move(j));
  }
  return {{"rounds", rounds}};
}

PublicParams public_params_from_json(const json& j) {
  PublicParams pp;
  pp.hash_id = j.at("hash").get<std::string>();
  pp.modulus_bits = j.at("modulus_bits").get<int>();
  for (const auto& n : j.at("moduli")) pp.moduli.push_back(parse_hex(n.get<std::string>()));
  check_pp(pp);
  return pp;
}

VerificationKey verification_key_from_json(const json& j) {
  VerificationKey vk;
  for (const auto& f : j.at("factors"))
    vk.factors.emplace_back(parse_hex(f.at(0).get<std::string>()), parse_hex(f.at(1).get<std::string>()));
  return vk;
}

Transcript transcript_from_json(const json& j) {
  Transcript t;
  for (const auto& rj : j.at("rounds")) {
    Round r;
    r.y = parse_hex(rj.at("y").get<std::string>());
    r.b = rj.at("b").get<int>();
    if (r.b == 0) {
      r.x = parse_hex(rj.at("x").get<std::string>());
    } else {
      r.d = parse_hex(rj.at("d").get<std::string>());
      r.m = rj.at("m").get<int>();
    }
    t.rounds.push_back(r);
  }
  return t;
}

}  // namespace vqa::dvqa
