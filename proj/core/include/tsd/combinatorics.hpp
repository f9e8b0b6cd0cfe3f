#pragma once

#include <cstddef>
#include <cstdint>

namespace tsd {

/// C(n, k); zero outside 0 <= k <= n. Exact for all values the library uses (n < 64).
constexpr std::uint64_t binomial(std::int64_t n, std::int64_t k) noexcept {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

/// Colex index of the pair {a, b}, a < b.
constexpr std::size_t pair_index(int a, int b) noexcept {
  return static_cast<std::size_t>(b) * static_cast<std::size_t>(b - 1) / 2 +
         static_cast<std::size_t>(a);
}

}  // namespace tsd
