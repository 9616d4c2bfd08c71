#include <sstream>

#include "vqa/common/rng.hpp"
#include "vqa/mcsp/mcsp.hpp"

namespace vqa::mcsp {

const char* op_name(Op op) noexcept {
  switch (op) {
    case Op::kAnd:
      return "AND";
    case Op::kOr:
      return "OR";
    case Op::kXor:
      return "XOR";
    case Op::kNot:
      return "NOT";
  }
  return "?";
}

void MicroSampler::validate() const {
  if (r < 0 || r > kMaxSimulatedRandomBits) throw std::invalid_argument("sampler needs 0 <= r <= 16");
  if (outputs.empty() || outputs.size() > 63) throw std::invalid_argument("sampler needs 1..63 outputs");
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const int self = 1 + r + static_cast<int>(i);
    const auto& g = gates[i];
    if (g.a < 0 || g.a >= self) throw std::invalid_argument("gate " + std::to_string(self) + ": bad operand");
    if (g.op != Op::kNot && (g.b < 0 || g.b >= self)) {
      throw std::invalid_argument("gate " + std::to_string(self) + ": bad operand");
    }
  }
  for (int w : outputs)
    if (w < 0 || w >= num_wires()) throw std::invalid_argument("output wire " + std::to_string(w) + " out of range");
}

namespace {

std::uint64_t evaluate(const MicroSampler& s, std::uint64_t input, std::vector<std::uint8_t>& wires) {
  wires.resize(static_cast<std::size_t>(s.num_wires()));
  wires[0] = 0;
  for (int i = 0; i < s.r; ++i) wires[static_cast<std::size_t>(1 + i)] = (input >> i) & 1U;
  std::size_t w = static_cast<std::size_t>(1 + s.r);
  for (const auto& g : s.gates) {
    const std::uint8_t a = wires[static_cast<std::size_t>(g.a)];
    const std::uint8_t b = g.op == Op::kNot ? 0 : wires[static_cast<std::size_t>(g.b)];
    switch (g.op) {
      case Op::kAnd:
        wires[w] = a & b;
        break;
      case Op::kOr:
        wires[w] = a | b;
        break;
      case Op::kXor:
        wires[w] = a ^ b;
        break;
      case Op::kNot:
        wires[w] = a ^ 1U;
        break;
    }
    ++w;
  }
  std::uint64_t x = 0;
  for (std::size_t j = 0; j < s.outputs.size(); ++j)
    x |= static_cast<std::uint64_t>(wires[static_cast<std::size_t>(s.outputs[j])]) << j;
  return x;
}

}  // namespace

qsim::Distribution exact_distribution(const MicroSampler& s) {
  s.validate();
  if (s.num_outputs() > 24) throw std::invalid_argument("exact distribution limited to 24 outputs");
  const std::uint64_t inputs = std::uint64_t{1} << s.r;
  std::vector<std::uint64_t> counts(std::size_t{1} << s.num_outputs(), 0);
  std::vector<std::uint8_t> wires;
  for (std::uint64_t u = 0; u < inputs; ++u) ++counts[evaluate(s, u, wires)];
  std::vector<double> p(counts.size());
  for (std::size_t x = 0; x < counts.size(); ++x) p[x] = static_cast<double>(counts[x]) / static_cast<double>(inputs);
  return qsim::Distribution(s.num_outputs(), std::move(p));
}

qsim::SampleBatch run_sampler(const MicroSampler& s, std::size_t m, std::uint64_t seed) {
  s.validate();
  qsim::SampleBatch b{s.num_outputs(), std::vector<std::uint64_t>(m), "micro-sampler", seed};
  CounterRng rng(seed);
  std::vector<std::uint8_t> wires;
  for (auto& x : b.samples) x = evaluate(s, rng(), wires);
  return b;
}

std::string to_netlist(const MicroSampler& s) {
  std::ostringstream os;
  os << "sampler r=" << s.r << " n=" << s.num_outputs() << '\n';
  int w = 1 + s.r;
  for (const auto& g : s.gates) {
    os << "gate " << w++ << ' ' << op_name(g.op) << ' ' << g.a;
    if (g.op != Op::kNot) os << ' ' << g.b;
    os << '\n';
  }
  os << "outputs";
  for (int o : s.outputs) os << ' ' << o;
  os << '\n';
  return os.str();
}

MicroSampler parse_netlist(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  MicroSampler s;
  int declared_n = -1;
  bool header = false;
  bool have_outputs = false;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("netlist line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word) || word[0] == '#') continue;
    if (word == "sampler") {
      std::string rs, ns;
      if (header || !(ls >> rs >> ns) || rs.rfind("r=", 0) != 0 || ns.rfind("n=", 0) != 0) fail("bad header");
      s.r = std::stoi(rs.substr(2));
      declared_n = std::stoi(ns.substr(2));
      header = true;
    } else if (word == "gate") {
      if (!header || have_outputs) fail("gate outside the body");
      int wire = 0;
      std::string op;
      McspGate g;
      if (!(ls >> wire >> op >> g.a)) fail("bad gate");
      if (wire != s.num_wires()) fail("gates must be numbered consecutively");
      if (op == "AND") g.op = Op::kAnd;
      else if (op == "OR") g.op = Op::kOr;
      else if (op == "XOR") g.op = Op::kXor;
      else if (op == "NOT") g.op = Op::kNot;
      else fail("unknown op '" + op + "'");
      if (g.op != Op::kNot && !(ls >> g.b)) fail("missing operand");
      s.gates.push_back(g);
    } else if (word == "outputs") {
      if (!header || have_outputs) fail("misplaced outputs");
      int w = 0;
      while (ls >> w) s.outputs.push_back(w);
      have_outputs = true;
    } else {
      fail("unknown directive '" + word + "'");
    }
    std::string extra;
    if (ls.clear(), ls >> extra) fail("trailing text");
  }
  if (!header || !have_outputs) throw std::invalid_argument("netlist needs a header and an outputs line");
  if (declared_n != s.num_outputs()) throw std::invalid_argument("netlist output count differs from header");
  s.validate();
  return s;
}

}  // namespace vqa::mcsp
