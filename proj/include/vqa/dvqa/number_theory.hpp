#pragma once

#include <cstdint>
#include <optional>
#include <utility>

namespace vqa::dvqa {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept;
std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept;

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n) noexcept;

/// a^-1 mod m; requires gcd(a, m) == 1.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m);

/// The two essentially distinct square roots of a quadratic residue y
/// modulo a Blum integer p*q, each normalized to min(r, N - r), returned in
/// increasing order. nullopt when y is not a unit residue.
std::optional<std::pair<std::uint64_t, std::uint64_t>> blum_square_roots(std::uint64_t y, std::uint64_t p,
                                                                         std::uint64_t q);

/// min(x, n - x).
std::uint64_t canonical_root(std::uint64_t x, std::uint64_t n) noexcept;

}  // namespace vqa::dvqa
