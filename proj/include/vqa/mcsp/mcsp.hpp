#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vqa/qsim/distribution.hpp"

namespace vqa::mcsp {

enum class Op { kAnd, kOr, kXor, kNot };
const char* op_name(Op op) noexcept;

/// Wire 0 is the constant 0, wires 1..r the random bits, wire r+1+i the
/// output of gate i. Gate operands refer to earlier wires only.
struct McspGate {
  Op op = Op::kAnd;
  int a = 0;
  int b = 0;  // unused for NOT
};

struct MicroSampler {
  int r = 0;
  std::vector<McspGate> gates;
  std::vector<int> outputs;  // outputs[j] drives outcome bit j

  int num_outputs() const noexcept { return static_cast<int>(outputs.size()); }
  std::size_t size() const noexcept { return gates.size(); }
  int num_wires() const noexcept { return 1 + r + static_cast<int>(gates.size()); }

  /// Throws std::invalid_argument on forward references or bad widths.
  void validate() const;
};

inline constexpr int kMaxSimulatedRandomBits = 16;

/// Exact distribution by enumerating all 2^r random inputs (r <= 16).
qsim::Distribution exact_distribution(const MicroSampler& s);

/// Draws m outcomes by running the sampler on fresh random bits.
qsim::SampleBatch run_sampler(const MicroSampler& s, std::size_t m, std::uint64_t seed);

/// Netlist text:
///   sampler r=<r> n=<n>
///   gate <wire> <AND|OR|XOR> <a> <b>     or   gate <wire> NOT <a>
///   outputs <w0> <w1> ...
std::string to_netlist(const MicroSampler& s);
MicroSampler parse_netlist(const std::string& text);

// ---- Enumeration -------------------------------------------------------------------

inline constexpr int kMaxEnumOutputs = 4;
inline constexpr int kMaxEnumRandomBits = 6;
inline constexpr int kMaxEnumSize = 5;
inline constexpr double kEnumerationBudget = 2e8;

/// Raised when an enumeration would exceed the combinatorial budget.
class BudgetExceeded : public std::length_error {
 public:
  BudgetExceeded(const std::string& what, double estimate);
  double estimated_count() const noexcept { return estimate_; }

 private:
  double estimate_;
};

/// Work estimate for (n, r, size_bound): gate sequences up to reordering
/// times output tuples, summed over sizes.
double estimate_enumeration_work(int n, int r, int size_bound);

/// Throws BudgetExceeded when outside n <= 4, r <= 6, size <= 5 or when the
/// estimate exceeds kEnumerationBudget; std::invalid_argument for n < 1 or r < 0.
void check_budget(int n, int r, int size_bound);

/// Lazily yields one sampler per distinct exact output distribution, in
/// order of increasing size; the first sampler found for a distribution is
/// a smallest one.
class SamplerEnumerator {
 public:
  SamplerEnumerator(int n, int r, int size_bound);
  ~SamplerEnumerator();
  SamplerEnumerator(SamplerEnumerator&&) noexcept;
  SamplerEnumerator& operator=(SamplerEnumerator&&) noexcept;

  std::optional<MicroSampler> next();

 private:
  struct State;
  std::unique_ptr<State> state_;
};

std::vector<MicroSampler> enumerate_samplers(int n, int r, int size_bound);

// ---- Solver ------------------------------------------------------------------------

/// Which definition's guarantee a verdict exercises. Under the exact-TVD
/// test both are decided by the same search.
enum class McspVariant { kSamp, kObliviousSamp };
const char* variant_name(McspVariant v) noexcept;

struct McspVerdict {
  bool yes = false;
  std::optional<MicroSampler> witness;
  double achieved_distance = 1.0;  // witness TVD, or the closest candidate's on NO
  McspVariant variant = McspVariant::kSamp;
};

/// All canonical samplers for (n, r, size_bound) with their exact distributions.
class SamplerCatalog {
 public:
  SamplerCatalog(int n, int r, int size_bound, unsigned workers = 1);

  int num_outputs() const noexcept { return n_; }
  int random_bits() const noexcept { return r_; }
  int size_bound() const noexcept { return size_bound_; }
  std::size_t size() const noexcept { return samplers_.size(); }
  const MicroSampler& sampler(std::size_t i) const { return samplers_[i]; }
  const qsim::Distribution& distribution(std::size_t i) const { return dists_[i]; }

  /// Smallest (then earliest) sampler of size <= size_bound whose exact
  /// distribution lies within `tolerance` TVD of the batch's empirical
  /// distribution. An empty batch is fit by the first sampler at distance 0.
  McspVerdict solve(const qsim::SampleBatch& samples, int size_bound, double tolerance,
                    McspVariant variant = McspVariant::kSamp) const;

 private:
  int n_;
  int r_;
  int size_bound_;
  unsigned workers_;
  std::vector<MicroSampler> samplers_;
  std::vector<qsim::Distribution> dists_;
};

inline constexpr int kDefaultRandomBits = 4;

McspVerdict samp_mcsp_bruteforce(const qsim::SampleBatch& samples, int size_bound, double tolerance,
                                 int r = kDefaultRandomBits, McspVariant variant = McspVariant::kSamp);

/// 0 ("classical") iff a sampler of size <= declared size fits the samples;
/// 1 ("quantum") otherwise.
int universal_verifier(const qsim::SampleBatch& samples, int declared_spoofer_size, double tolerance,
                       int r = kDefaultRandomBits);

}  // namespace vqa::mcsp
