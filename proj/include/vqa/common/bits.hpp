#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

namespace vqa {

/// GF(2) inner product of two bit vectors.
constexpr int dot_mod2(std::uint64_t a, std::uint64_t b) noexcept {
  return std::popcount(a & b) & 1;
}

constexpr std::uint64_t low_mask(unsigned bits) noexcept {
  return bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
}

/// Renders `value` as `bits` characters, most significant bit first, so the
/// string reads as the binary numeral of the basis index.
std::string to_bit_string(std::uint64_t value, unsigned bits);

/// Inverse of to_bit_string. Throws std::invalid_argument on characters
/// other than '0'/'1' or strings longer than 64.
std::uint64_t parse_bit_string(std::string_view text);

std::string to_hex(std::uint64_t value);
std::uint64_t parse_hex(std::string_view text);

}  // namespace vqa
