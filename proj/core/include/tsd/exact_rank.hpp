#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tsd/matrix.hpp"

namespace tsd {

/// Either the rationals (p == 0) or the prime field F_p.
struct Field {
  std::uint64_t p = 0;

  static constexpr Field rational() noexcept { return {0}; }
  static Field prime(std::uint64_t p);

  bool is_rational() const noexcept { return p == 0; }
  std::string name() const { return is_rational() ? "Q" : std::to_string(p); }
  bool operator==(const Field&) const = default;
};

enum class Side { left, right };

enum class RankMethod {
  modular_full_rank,  // rank mod a random large prime already equals min(rows, cols)
  fraction_free,      // exact big-integer elimination
};

std::string to_string(RankMethod m);

struct RankReport {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t q_rank = 0;
  std::map<std::uint64_t, std::size_t> p_ranks;
  bool nonsingular = false;
  RankMethod method = RankMethod::fraction_free;
  std::uint64_t prng_seed = 0;
  std::uint64_t screen_prime = 0;
};

/// Rank over Q by fraction-free (Bareiss) elimination on GMP integers.
std::size_t rank_exact_integer(const IntMatrix& m);

/// Rank over F_p. Throws std::invalid_argument if p is not prime.
/// p == 2 takes a packed-bitset path.
std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p);

/// Screens with one random 62-bit prime from `seed`; full rank there certifies
/// full rank over Q, otherwise rank_exact_integer decides. `primes` are
/// reported in p_ranks.
RankReport rank_certified(const IntMatrix& m, std::span<const std::uint64_t> primes,
                          std::uint64_t seed = 0);

/// Line-oriented record: q_rank=, nonsingular=, p_rank[p]=, method=, prng_seed=, screen_prime=.
std::string format_rank_report(const RankReport& r);

/// vec^T m == 0 (left) or m vec == 0 (right), over `field`.
bool verify_kernel_vector(std::span<const std::int64_t> vec, const IntMatrix& m, Side side,
                          Field field);

/// Basis of the right kernel over Q as primitive integer vectors, one per
/// non-pivot column of the reduced row echelon form.
std::vector<std::vector<std::int64_t>> right_kernel_basis(const IntMatrix& m);

}  // namespace tsd
