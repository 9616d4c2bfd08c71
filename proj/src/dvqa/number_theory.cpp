#include "vqa/dvqa/number_theory.hpp"

#include <stdexcept>

namespace vqa::dvqa {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  // Extended Euclid on signed 128-bit values.
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    const __int128 q = r / new_r;
    const __int128 tt = t - q * new_t;
    t = new_t;
    new_t = tt;
    const __int128 rr = r - q * new_r;
    r = new_r;
    new_r = rr;
  }
  if (r != 1) throw std::invalid_argument("value is not invertible");
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

std::uint64_t canonical_root(std::uint64_t x, std::uint64_t n) noexcept { return x <= n - x ? x : n - x; }

std::optional<std::pair<std::uint64_t, std::uint64_t>> blum_square_roots(std::uint64_t y, std::uint64_t p,
                                                                         std::uint64_t q) {
  const std::uint64_t n = p * q;
  if (y == 0 || y >= n || gcd(y, n) != 1) return std::nullopt;
  const std::uint64_t rp = pow_mod(y % p, (p + 1) / 4, p);
  const std::uint64_t rq = pow_mod(y % q, (q + 1) / 4, q);
  if (mul_mod(rp, rp, p) != y % p || mul_mod(rq, rq, q) != y % q) return std::nullopt;
  const std::uint64_t cp = mul_mod(q, inverse_mod(q % p, p), n);  // 1 mod p, 0 mod q
  const std::uint64_t cq = mul_mod(p, inverse_mod(p % q, q), n);  // 0 mod p, 1 mod q
  auto crt = [&](std::uint64_t a, std::uint64_t b) {
    const unsigned __int128 s = static_cast<unsigned __int128>(mul_mod(a, cp, n)) + mul_mod(b, cq, n);
    return static_cast<std::uint64_t>(s % n);
  };
  std::uint64_t r0 = canonical_root(crt(rp, rq), n);
  std::uint64_t r1 = canonical_root(crt(rp, (q - rq) % q), n);
  if (r0 > r1) std::swap(r0, r1);
  return std::make_pair(r0, r1);
}

}  // namespace vqa::dvqa
