#pragma once

#include <cstdint>
#include <functional>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vqa/qsim/circuit.hpp"
#include "vqa/qsim/distribution.hpp"

namespace vqa::families {

/// f: {0,1}^n -> {0,1}^{n-1}, exactly 2-to-1 with f(x) = f(x xor shift).
struct SimonInstance {
  int n = 0;
  std::uint64_t shift = 0;
  std::vector<std::uint64_t> table;
};

struct PhaseKey {
  std::uint64_t key = 0;
  int levels = 2;  // phase omega_levels^{f_k(x)}; 2 gives the binary phase state
};

struct RandomCircuitMeta {
  int depth = 0;
  std::vector<std::uint64_t> gate_seeds;  // one per two-qubit block, in gate order
};

struct MemberIndex {
  std::size_t index = 0;
};

using FamilyMetadata = std::variant<std::monostate, SimonInstance, PhaseKey, RandomCircuitMeta, MemberIndex>;

struct FamilyDraw {
  std::uint64_t seed = 0;
  qsim::Circuit circuit;
  FamilyMetadata metadata;
};

/// A seeded generator of circuits. Finite families also enumerate their
/// members; draw(seed) then picks a member uniformly.
class CircuitFamily {
 public:
  using DrawFn = std::function<FamilyDraw(std::uint64_t)>;

  CircuitFamily(std::string name, int num_qubits, int num_bits, nlohmann::json params, DrawFn draw);

  static CircuitFamily finite(std::string name, std::vector<qsim::Circuit> members);

  const std::string& name() const noexcept { return name_; }
  int num_qubits() const noexcept { return num_qubits_; }
  /// Width of the measured outcome.
  int num_bits() const noexcept { return num_bits_; }
  const nlohmann::json& params() const noexcept { return params_; }

  FamilyDraw draw(std::uint64_t seed) const { return draw_(seed); }

  /// The k-th draw of a sequence rooted at `seed`. Finite families cycle
  /// through their members (member k mod size) so any multiple of the
  /// family size averages over members exactly; other families use
  /// draw(derive_seed(seed, k)).
  FamilyDraw draw_at(std::size_t k, std::uint64_t seed) const;

  bool is_finite() const noexcept { return members_.has_value(); }
  const std::vector<qsim::Circuit>& enumerate() const;

 private:
  std::string name_;
  int num_qubits_;
  int num_bits_;
  nlohmann::json params_;
  DrawFn draw_;
  std::optional<std::vector<qsim::Circuit>> members_;
};

// ---- Simon ----------------------------------------------------------------

inline constexpr int kSimonMinBits = 2;
inline constexpr int kSimonMaxBits = 12;

/// Random pairing of the cosets {x, x xor shift} onto distinct (n-1)-bit
/// values. Throws std::invalid_argument for shift == 0 or n out of range.
SimonInstance make_simon_instance(int n, std::uint64_t shift, std::uint64_t seed);

/// True iff table(x) == table(y) exactly when y in {x, x xor shift}.
bool is_valid_simon_instance(const SimonInstance& inst);

/// H^n on register A (qubits 0..n-1), XOR oracle into register B
/// (qubits n..2n-2), H^n on A; measures A.
qsim::Circuit simon_circuit(const SimonInstance& inst);

/// Each draw picks a uniformly random nonzero shift and a fresh pairing.
CircuitFamily simon_family(int n, std::uint64_t seed);

/// Draws share `shift`; only the pairing varies.
CircuitFamily simon_fixed_shift_family(int n, std::uint64_t shift, std::uint64_t seed);

// ---- Brickwork random circuits ----------------------------------------------

/// Haar-random 4x4 unitary, row-major: Gram-Schmidt on a complex Gaussian
/// matrix (R has a positive real diagonal, which fixes the decomposition).
std::vector<qsim::Complex> haar_unitary4(std::uint64_t seed);

/// Layer l acts on pairs (q, q+1) with q = l mod 2, l mod 2 + 2, ...
qsim::Circuit brickwork_circuit(int n, int depth, std::uint64_t seed, RandomCircuitMeta* meta = nullptr);

/// Throws std::invalid_argument for depth < 1 or n outside [2, 14].
CircuitFamily random_circuit_family(int n, int depth, std::uint64_t seed);

// ---- Phase states -----------------------------------------------------------

/// f_k(x) in [0, levels): keyed SHA-256 of (key, x) reduced mod levels.
std::uint64_t keyed_phase_value(std::uint64_t key, std::uint64_t x, int levels);

/// H^n followed by |x> -> e^{i phases[x]} |x>.
qsim::Circuit phase_state_circuit(int n, std::vector<double> phases);

/// (1/sqrt N) sum_x omega_levels^{f_k(x)} |x>.
qsim::Circuit phase_prs_circuit(int n, std::uint64_t key, int levels = 2);

CircuitFamily phase_prs_family(int n, std::uint64_t key_seed, int levels = 2);

// ---- Constructions on families ------------------------------------------------

/// C followed by CNOT fan-out of each measured qubit of C onto a fresh
/// register B. The result measures the original (A) qubits. Throws
/// qsim::CapacityExceeded when the total exceeds the statevector cap.
qsim::Circuit extend_circuit(const qsim::Circuit& c);

/// Mean of the exact output distributions of draws draw_at(0..N-1, seed).
qsim::Distribution family_mixture_distribution(const CircuitFamily& fam, std::size_t num_draws,
                                               std::uint64_t seed, unsigned workers = 1);

// ---- Serialization ------------------------------------------------------------

nlohmann::json metadata_to_json(const FamilyMetadata& m);
FamilyMetadata metadata_from_json(const nlohmann::json& j);

/// {"family": {"name", "num_qubits", "num_bits", "params"}, "seed", "metadata", "circuit"}.
nlohmann::json draw_to_json(const CircuitFamily& fam, const FamilyDraw& d);

}  // namespace vqa::families
