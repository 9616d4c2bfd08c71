#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "vqa/mcsp/mcsp.hpp"

namespace vqa::mcsp {

BudgetExceeded::BudgetExceeded(const std::string& what, double estimate)
    : std::length_error(what + " (estimated " + std::to_string(static_cast<long long>(estimate)) + " candidates)"),
      estimate_(estimate) {}

namespace {

double gate_choices(int wires) {
  const double w = wires;
  return 3.0 * w * (w - 1.0) / 2.0 + w;
}

}  // namespace

double estimate_enumeration_work(int n, int r, int size_bound) {
  const int base = 1 + r;
  double total = 0.0;
  double sequences = 1.0;
  double factorial = 1.0;
  for (int s = 0; s <= size_bound; ++s) {
    if (s > 0) {
      sequences *= gate_choices(base + s - 1);
      factorial *= s;
    }
    total += sequences / factorial * std::pow(static_cast<double>(base + s), n);
  }
  return total;
}

void check_budget(int n, int r, int size_bound) {
  if (n < 1 || r < 0 || size_bound < 0) throw std::invalid_argument("enumeration needs n >= 1, r >= 0, size >= 0");
  const double est = estimate_enumeration_work(n, r, size_bound);
  if (n > kMaxEnumOutputs || r > kMaxEnumRandomBits || size_bound > kMaxEnumSize) {
    throw BudgetExceeded("enumeration limited to n <= 4, r <= 6, size <= 5", est);
  }
  if (est > kEnumerationBudget) throw BudgetExceeded("enumeration exceeds the work budget", est);
}

// A node is a circuit prefix: the truth tables of its wires in creation
// order plus the gates that produced them.
struct Node {
  std::vector<std::uint64_t> tables;
  std::vector<McspGate> gates;
};

struct SamplerEnumerator::State {
  int n;
  int r;
  int size_bound;
  std::uint64_t full_mask;
  int level = 0;
  std::vector<Node> nodes;      // current level
  std::size_t node_idx = 0;
  std::vector<int> tuple;       // current output tuple (odometer)
  bool tuple_fresh = true;
  std::unordered_set<std::string> seen;

  State(int n_, int r_, int sb) : n(n_), r(r_), size_bound(sb) {
    const std::uint64_t points = std::uint64_t{1} << r;
    full_mask = points >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << points) - 1;
    Node root;
    root.tables.push_back(0);
    for (int i = 0; i < r; ++i) {
      std::uint64_t t = 0;
      for (std::uint64_t u = 0; u < points; ++u)
        if ((u >> i) & 1U) t |= std::uint64_t{1} << u;
      root.tables.push_back(t);
    }
    nodes.push_back(std::move(root));
    tuple.assign(static_cast<std::size_t>(n), 0);
  }

  bool advance_level() {
    if (level >= size_bound) return false;
    std::vector<Node> next;
    std::unordered_set<std::string> keys;
    for (const Node& nd : nodes) {
      const int w = static_cast<int>(nd.tables.size());
      auto push = [&](Op op, int a, int b, std::uint64_t t) {
        if (std::find(nd.tables.begin(), nd.tables.end(), t) != nd.tables.end()) return;
        Node child = nd;
        child.tables.push_back(t);
        child.gates.push_back({op, a, b});
        std::vector<std::uint64_t> sorted = child.tables;
        std::sort(sorted.begin(), sorted.end());
        std::string key(reinterpret_cast<const char*>(sorted.data()), sorted.size() * sizeof(std::uint64_t));
        if (keys.insert(std::move(key)).second) next.push_back(std::move(child));
      };
      for (int a = 0; a < w; ++a) {
        push(Op::kNot, a, 0, ~nd.tables[static_cast<std::size_t>(a)] & full_mask);
        for (int b = a + 1; b < w; ++b) {
          const std::uint64_t ta = nd.tables[static_cast<std::size_t>(a)];
          const std::uint64_t tb = nd.tables[static_cast<std::size_t>(b)];
          push(Op::kAnd, a, b, ta & tb);
          push(Op::kOr, a, b, ta | tb);
          push(Op::kXor, a, b, ta ^ tb);
        }
      }
    }
    nodes = std::move(next);
    node_idx = 0;
    ++level;
    return true;
  }

  std::string histogram_key(const Node& nd) const {
    const std::uint64_t points = std::uint64_t{1} << r;
    std::vector<std::uint16_t> counts(std::size_t{1} << n, 0);
    for (std::uint64_t u = 0; u < points; ++u) {
      std::size_t x = 0;
      for (int j = 0; j < n; ++j) x |= ((nd.tables[static_cast<std::size_t>(tuple[static_cast<std::size_t>(j)])] >> u) & 1U) << j;
      ++counts[x];
    }
    return std::string(reinterpret_cast<const char*>(counts.data()), counts.size() * sizeof(std::uint16_t));
  }

  // Steps the odometer over output tuples of the current node.
  bool step_tuple(int wires) {
    for (int j = n - 1; j >= 0; --j) {
      auto& t = tuple[static_cast<std::size_t>(j)];
      if (++t < wires) return true;
      t = 0;
    }
    return false;
  }

  std::optional<MicroSampler> next() {
    for (;;) {
      if (node_idx >= nodes.size()) {
        if (!advance_level() || nodes.empty()) return std::nullopt;
        tuple_fresh = true;
        continue;
      }
      const Node& nd = nodes[node_idx];
      const int wires = static_cast<int>(nd.tables.size());
      if (tuple_fresh) {
        std::fill(tuple.begin(), tuple.end(), 0);
        tuple_fresh = false;
      } else if (!step_tuple(wires)) {
        ++node_idx;
        tuple_fresh = true;
        continue;
      }
      if (seen.insert(histogram_key(nd)).second) {
        MicroSampler s;
        s.r = r;
        s.gates = nd.gates;
        s.outputs = tuple;
        return s;
      }
    }
  }
};

SamplerEnumerator::SamplerEnumerator(int n, int r, int size_bound) {
  check_budget(n, r, size_bound);
  state_ = std::make_unique<State>(n, r, size_bound);
}

SamplerEnumerator::~SamplerEnumerator() = default;
SamplerEnumerator::SamplerEnumerator(SamplerEnumerator&&) noexcept = default;
SamplerEnumerator& SamplerEnumerator::operator=(SamplerEnumerator&&) noexcept = default;

std::optional<MicroSampler> SamplerEnumerator::next() { return state_->next(); }

std::vector<MicroSampler> enumerate_samplers(int n, int r, int size_bound) {
  SamplerEnumerator e(n, r, size_bound);
  std::vector<MicroSampler> out;
  while (auto s = e.next()) out.push_back(std::move(*s));
  return out;
}

}  // namespace vqa::mcsp
