#pragma once

#include <cstdint>

namespace tsd {

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(std::uint64_t n) noexcept;

/// A prime in [2^61, 2^62) drawn from an mt19937_64 stream seeded with `seed`.
std::uint64_t random_prime_62(std::uint64_t seed);

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept;

/// Inverse of a modulo prime p (a != 0 mod p).
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) noexcept { return pow_mod(a, p - 2, p); }

}  // namespace tsd
