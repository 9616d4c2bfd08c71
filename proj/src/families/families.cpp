#include "vqa/families/families.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "vqa/common/bits.hpp"
#include "vqa/common/hash.hpp"
#include "vqa/common/parallel.hpp"
#include "vqa/common/rng.hpp"
#include "vqa/qsim/circuit_io.hpp"
#include "vqa/qsim/simulator.hpp"

namespace vqa::families {

using qsim::Circuit;
using qsim::Complex;
namespace gates = qsim::gates;

CircuitFamily::CircuitFamily(std::string name, int num_qubits, int num_bits, nlohmann::json params,
                             DrawFn draw)
    : name_(std::move(name)),
      num_qubits_(num_qubits),
      num_bits_(num_bits),
      params_(std::move(params)),
      draw_(std::move(draw)) {}

CircuitFamily CircuitFamily::finite(std::string name, std::vector<Circuit> members) {
  if (members.empty()) throw std::invalid_argument("finite family needs at least one member");
  const int n = members.front().num_qubits;
  const int bits = members.front().num_measured();
  for (const auto& c : members) {
    c.validate();
    if (c.num_qubits != n || c.num_measured() != bits) {
      throw std::invalid_argument("family members must share their qubit count");
    }
  }
  auto shared = std::make_shared<const std::vector<Circuit>>(members);
  CircuitFamily fam(std::move(name), n, bits, {{"size", members.size()}},
                    [shared](std::uint64_t seed) {
                      CounterRng rng(seed);
                      const std::size_t k = rng.uniform_below(shared->size());
                      return FamilyDraw{seed, (*shared)[k], MemberIndex{k}};
                    });
  fam.members_ = std::move(members);
  return fam;
}

FamilyDraw CircuitFamily::draw_at(std::size_t k, std::uint64_t seed) const {
  if (members_) {
    const std::size_t idx = k % members_->size();
    return FamilyDraw{derive_seed(seed, k), (*members_)[idx], MemberIndex{idx}};
  }
  return draw(derive_seed(seed, k));
}

const std::vector<Circuit>& CircuitFamily::enumerate() const {
  if (!members_) throw std::logic_error("family '" + name_ + "' is not finite");
  return *members_;
}

// ---- Simon ----------------------------------------------------------------

namespace {

void check_simon_bits(int n) {
  if (n < kSimonMinBits || n > kSimonMaxBits) {
    throw std::invalid_argument("Simon instances need 2 <= n <= 12, got " + std::to_string(n));
  }
}

}  // namespace

SimonInstance make_simon_instance(int n, std::uint64_t shift, std::uint64_t seed) {
  check_simon_bits(n);
  const std::uint64_t size = std::uint64_t{1} << n;
  if (shift == 0) throw std::invalid_argument("Simon shift must be nonzero");
  if (shift >= size) throw std::invalid_argument("Simon shift wider than n bits");

  std::vector<std::uint64_t> values(size / 2);
  std::iota(values.begin(), values.end(), std::uint64_t{0});
  CounterRng rng(seed);
  for (std::size_t i = values.size(); i > 1; --i) std::swap(values[i - 1], values[rng.uniform_below(i)]);

  SimonInstance inst{n, shift, std::vector<std::uint64_t>(size)};
  std::size_t next = 0;
  for (std::uint64_t x = 0; x < size; ++x) {
    const std::uint64_t partner = x ^ shift;
    if (partner < x) continue;  // coset already assigned via its smaller element
    inst.table[x] = values[next];
    inst.table[partner] = values[next];
    ++next;
  }
  return inst;
}

bool is_valid_simon_instance(const SimonInstance& inst) {
  const std::uint64_t size = std::uint64_t{1} << inst.n;
  if (inst.shift == 0 || inst.shift >= size || inst.table.size() != size) return false;
  std::vector<int> hits(size / 2, 0);
  for (std::uint64_t x = 0; x < size; ++x) {
    if (inst.table[x] >= size / 2) return false;
    if (inst.table[x] != inst.table[x ^ inst.shift]) return false;
    ++hits[inst.table[x]];
  }
  for (int h : hits)
    if (h != 2) return false;
  return true;
}

Circuit simon_circuit(const SimonInstance& inst) {
  check_simon_bits(inst.n);
  const int n = inst.n;
  Circuit c(2 * n - 1);
  std::vector<int> a(n), b(n - 1);
  std::iota(a.begin(), a.end(), 0);
  std::iota(b.begin(), b.end(), n);
  for (int q : a) c.add(gates::h(q));
  c.add(gates::oracle(a, b, inst.table));
  for (int q : a) c.add(gates::h(q));
  c.measured = a;
  return c;
}

CircuitFamily simon_family(int n, std::uint64_t seed) {
  check_simon_bits(n);
  return CircuitFamily("simon", 2 * n - 1, n, {{"n", n}, {"seed", seed}}, [n, seed](std::uint64_t s) {
    const std::uint64_t draw_seed = derive_seed(seed, s);
    CounterRng rng(derive_seed(draw_seed, 0));
    const std::uint64_t shift = 1 + rng.uniform_below((std::uint64_t{1} << n) - 1);
    SimonInstance inst = make_simon_instance(n, shift, derive_seed(draw_seed, 1));
    Circuit c = simon_circuit(inst);
    return FamilyDraw{s, std::move(c), std::move(inst)};
  });
}

CircuitFamily simon_fixed_shift_family(int n, std::uint64_t shift, std::uint64_t seed) {
  make_simon_instance(n, shift, 0);  // validates arguments
  return CircuitFamily("simon-fixed-shift", 2 * n - 1, n,
                       {{"n", n}, {"shift", to_bit_string(shift, static_cast<unsigned>(n))}, {"seed", seed}},
                       [n, shift, seed](std::uint64_t s) {
                         SimonInstance inst = make_simon_instance(n, shift, derive_seed(seed, s));
                         Circuit c = simon_circuit(inst);
                         return FamilyDraw{s, std::move(c), std::move(inst)};
                       });
}

// ---- Brickwork ----------------------------------------------------------------

std::vector<Complex> haar_unitary4(std::uint64_t seed) {
  CounterRng rng(seed);
  constexpr int d = 4;
  Complex col[d][d];  // col[c][r]
  const double scale = std::numbers::sqrt2 / 2.0;
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) {
      const double re = rng.normal();
      const double im = rng.normal();
      col[c][r] = Complex{re, im} * scale;
    }
  // Modified Gram-Schmidt; the implied R has a positive real diagonal.
  for (int c = 0; c < d; ++c) {
    for (int p = 0; p < c; ++p) {
      Complex proj{0.0, 0.0};
      for (int r = 0; r < d; ++r) proj += std::conj(col[p][r]) * col[c][r];
      for (int r = 0; r < d; ++r) col[c][r] -= proj * col[p][r];
    }
    double norm = 0.0;
    for (int r = 0; r < d; ++r) norm += std::norm(col[c][r]);
    norm = std::sqrt(norm);
    for (int r = 0; r < d; ++r) col[c][r] /= norm;
  }
  std::vector<Complex> m(d * d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m[r * d + c] = col[c][r];
  return m;
}

Circuit brickwork_circuit(int n, int depth, std::uint64_t seed, RandomCircuitMeta* meta) {
  if (depth < 1) throw std::invalid_argument("brickwork depth must be >= 1");
  if (n < 2 || n > 14) throw std::invalid_argument("brickwork circuits need 2 <= n <= 14");
  Circuit c(n);
  if (meta != nullptr) *meta = RandomCircuitMeta{depth, {}};
  for (int layer = 0; layer < depth; ++layer) {
    for (int q = layer % 2; q + 1 < n; q += 2) {
      const std::uint64_t gate_seed = derive_seed(seed, static_cast<std::uint64_t>(layer),
                                                  static_cast<std::uint64_t>(q));
      c.add(gates::unitary2(q, q + 1, haar_unitary4(gate_seed)));
      if (meta != nullptr) meta->gate_seeds.push_back(gate_seed);
    }
  }
  return c;
}

CircuitFamily random_circuit_family(int n, int depth, std::uint64_t seed) {
  brickwork_circuit(n, depth, 0);  // validates arguments
  return CircuitFamily("random-brickwork", n, n, {{"n", n}, {"depth", depth}, {"seed", seed}},
                       [n, depth, seed](std::uint64_t s) {
                         RandomCircuitMeta meta;
                         Circuit c = brickwork_circuit(n, depth, derive_seed(seed, s), &meta);
                         return FamilyDraw{s, std::move(c), std::move(meta)};
                       });
}

// ---- Phase states ----------------------------------------------------------------

std::uint64_t keyed_phase_value(std::uint64_t key, std::uint64_t x, int levels) {
  const Digest256 d = HashInput("vqa.phase-prs.v1").append_u64(key).append_u64(x).digest();
  if (levels == 2) return d[0] >> 7;
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | d[static_cast<std::size_t>(i)];
  return v % static_cast<std::uint64_t>(levels);
}

Circuit phase_state_circuit(int n, std::vector<double> phases) {
  if (n < 1 || n > 14) throw std::invalid_argument("phase states need 1 <= n <= 14");
  Circuit c(n);
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (int q : all) c.add(gates::h(q));
  c.add(gates::phase_table(all, std::move(phases)));
  return c;
}

Circuit phase_prs_circuit(int n, std::uint64_t key, int levels) {
  if (levels < 2) throw std::invalid_argument("phase levels must be >= 2");
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> phases(size);
  for (std::uint64_t x = 0; x < size; ++x) {
    const auto f = keyed_phase_value(key, x, levels);
    phases[x] = 2.0 * std::numbers::pi * static_cast<double>(f) / levels;
  }
  return phase_state_circuit(n, std::move(phases));
}

CircuitFamily phase_prs_family(int n, std::uint64_t key_seed, int levels) {
  if (n < 1 || n > 14) throw std::invalid_argument("phase states need 1 <= n <= 14");
  return CircuitFamily("phase-prs", n, n, {{"n", n}, {"levels", levels}, {"key_seed", key_seed}},
                       [n, key_seed, levels](std::uint64_t s) {
                         const std::uint64_t key = derive_seed(key_seed, s);
                         return FamilyDraw{s, phase_prs_circuit(n, key, levels), PhaseKey{key, levels}};
                       });
}

// ---- Constructions -------------------------------------------------------------------

Circuit extend_circuit(const Circuit& c) {
  c.validate();
  std::vector<int> a = c.measured;
  if (a.empty()) {
    a.resize(static_cast<std::size_t>(c.num_qubits));
    std::iota(a.begin(), a.end(), 0);
  }
  const int total = c.num_qubits + static_cast<int>(a.size());
  if (total > qsim::kMaxStateQubits) {
    throw qsim::CapacityExceeded("extended circuit needs " + std::to_string(total) + " qubits");
  }
  Circuit out(total);
  out.gates = c.gates;
  for (std::size_t j = 0; j < a.size(); ++j) out.add(gates::cnot(a[j], c.num_qubits + static_cast<int>(j)));
  out.measured = a;
  return out;
}

qsim::Distribution family_mixture_distribution(const CircuitFamily& fam, std::size_t num_draws,
                                               std::uint64_t seed, unsigned workers) {
  if (num_draws == 0) throw std::invalid_argument("mixture needs at least one draw");
  std::vector<qsim::Distribution> parts(num_draws);
  parallel_for(num_draws, workers, [&](std::size_t k) {
    parts[k] = qsim::output_distribution(fam.draw_at(k, seed).circuit);
  });
  return qsim::mixture(parts);
}

// ---- Serialization -----------------------------------------------------------------------

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

nlohmann::json metadata_to_json(const FamilyMetadata& m) {
  return std::visit(
      Overloaded{
          [](const std::monostate&) { return nlohmann::json{{"type", "none"}}; },
          [](const SimonInstance& s) {
            std::vector<std::string> hex;
            hex.reserve(s.table.size());
            for (auto v : s.table) hex.push_back(to_hex(v));
            return nlohmann::json{{"type", "simon"},
                                  {"n", s.n},
                                  {"shift", to_bit_string(s.shift, static_cast<unsigned>(s.n))},
                                  {"table", hex}};
          },
          [](const PhaseKey& k) {
            return nlohmann::json{{"type", "phase"}, {"key", to_hex(k.key)}, {"levels", k.levels}};
          },
          [](const RandomCircuitMeta& r) {
            std::vector<std::string> hex;
            for (auto v : r.gate_seeds) hex.push_back(to_hex(v));
            return nlohmann::json{{"type", "random"}, {"depth", r.depth}, {"gate_seeds", hex}};
          },
          [](const MemberIndex& i) { return nlohmann::json{{"type", "member"}, {"index", i.index}}; },
      },
      m);
}

FamilyMetadata metadata_from_json(const nlohmann::json& j) {
  const auto type = j.at("type").get<std::string>();
  if (type == "none") return std::monostate{};
  if (type == "simon") {
    SimonInstance s;
    s.n = j.at("n").get<int>();
    s.shift = parse_bit_string(j.at("shift").get<std::string>());
    for (const auto& h : j.at("table")) s.table.push_back(parse_hex(h.get<std::string>()));
    if (!is_valid_simon_instance(s)) throw std::invalid_argument("Simon table is not 2-to-1 under its shift");
    return s;
  }
  if (type == "phase") return PhaseKey{parse_hex(j.at("key").get<std::string>()), j.at("levels").get<int>()};
  if (type == "random") {
    RandomCircuitMeta r{j.at("depth").get<int>(), {}};
    for (const auto& h : j.at("gate_seeds")) r.gate_seeds.push_back(parse_hex(h.get<std::string>()));
    return r;
  }
  if (type == "member") return MemberIndex{j.at("index").get<std::size_t>()};
  throw std::invalid_argument("unknown metadata type '" + type + "'");
}

nlohmann::json draw_to_json(const CircuitFamily& fam, const FamilyDraw& d) {
  return {{"family",
           {{"name", fam.name()}, {"num_qubits", fam.num_qubits()}, {"num_bits", fam.num_bits()},
            {"params", fam.params()}}},
          {"seed", to_hex(d.seed)},
          {"metadata", metadata_to_json(d.metadata)},
          {"circuit", qsim::to_json(d.circuit)}};
}

}  // namespace vqa::families
