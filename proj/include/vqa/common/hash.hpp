#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vqa {

using Digest256 = std::array<std::uint8_t, 32>;

/// Identifier recorded wherever a digest must be re-derivable.
inline constexpr std::string_view kHashId = "sha256";

Digest256 sha256(std::span<const std::uint8_t> data);
Digest256 sha256(std::string_view data);
std::string digest_hex(const Digest256& d);

/// Length-prefixed byte builder for domain-separated hash inputs.
class HashInput {
 public:
  explicit HashInput(std::string_view domain) { append(domain); }

  HashInput& append(std::string_view bytes);
  HashInput& append_u64(std::uint64_t v);

  Digest256 digest() const { return sha256(bytes_); }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
};

}  // namespace vqa
