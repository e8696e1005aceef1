#pragma once

#include <cstdint>

namespace kqmc {

__extension__ using uint128 = unsigned __int128;
__extension__ using int128 = __int128;

// Nonnegative residue of a modulo m (m > 0), for any sign of a.
constexpr std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

constexpr std::int64_t mod_floor(int128 a, std::int64_t m) {
  const auto r = static_cast<std::int64_t>(a % m);
  return r < 0 ? r + m : r;
}

constexpr std::uint64_t mulmod(std::uint64_t a, std::uint64_t b,
                               std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<uint128>(a) * b % m);
}

constexpr std::uint64_t powmod(std::uint64_t base, std::uint64_t exp,
                               std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

}  // namespace kqmc
