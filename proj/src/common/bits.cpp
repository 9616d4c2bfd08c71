#include "vqa/common/bits.hpp"

#include <stdexcept>

namespace vqa {

std::string to_bit_string(std::uint64_t value, unsigned bits) {
  std::string out(bits, '0');
  for (unsigned i = 0; i < bits; ++i) {
    if ((value >> i) & 1U) out[bits - 1 - i] = '1';
  }
  return out;
}

std::uint64_t parse_bit_string(std::string_view text) {
  if (text.size() > 64) throw std::invalid_argument("bit string longer than 64 bits");
  std::uint64_t v = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bit string contains '" + std::string(1, c) + "'");
    }
    v = (v << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

std::string to_hex(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  if (value == 0) return "0x0";
  std::string out;
  while (value != 0) {
    out.insert(out.begin(), kDigits[value & 0xF]);
    value >>= 4;
  }
  return "0x" + out;
}

std::uint64_t parse_hex(std::string_view text) {
  if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
  if (text.empty() || text.size() > 16) throw std::invalid_argument("bad hex integer");
  std::uint64_t v = 0;
  for (char c : text) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else throw std::invalid_argument("bad hex digit in '" + std::string(text) + "'");
    v = (v << 4) | static_cast<std::uint64_t>(d);
  }
  return v;
}

}  // namespace vqa
