#include "tsd/exact_rank.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "tsd/primes.hpp"

namespace tsd {

Field Field::prime(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("Field::prime: " + std::to_string(p) + " is not prime");
  return {p};
}

std::string to_string(RankMethod m) {
  switch (m) {
    case RankMethod::modular_full_rank:
      return "modular_full_rank";
    case RankMethod::fraction_free:
      return "fraction_free";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

mpz_class to_mpz(std::int64_t x) {
  mpz_class z;
  mpz_set_si(z.get_mpz_t(), static_cast<long>(x));
  return z;
}

std::uint64_t reduce(std::int64_t x, std::uint64_t p) {
  const auto sp = static_cast<std::int64_t>(p);
  std::int64_t r = x % sp;
  if (r < 0) r += sp;
  return static_cast<std::uint64_t>(r);
}

// Among rows [from, rows) with a nonzero in column c, the one with the fewest
// nonzeros to the right of c; ties go to the lowest row index.
template <class IsZero>
std::size_t choose_pivot(std::size_t from, std::size_t rows, std::size_t cols, std::size_t c,
                         IsZero is_zero) {
  std::size_t best = kNone;
  std::size_t best_count = kNone;
  for (std::size_t i = from; i < rows; ++i) {
    if (is_zero(i, c)) continue;
    std::size_t count = 0;
    for (std::size_t j = c + 1; j < cols; ++j) count += !is_zero(i, j);
    if (count < best_count) {
      best = i;
      best_count = count;
    }
  }
  return best;
}

std::size_t rank_gf2(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t words = (cols + 63) / 64;
  std::vector<std::uint64_t> bits(rows * words, 0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (m(i, j) & 1) bits[i * words + j / 64] |= 1ull << (j % 64);

  auto row = [&](std::size_t i) { return bits.data() + i * words; };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t mask = 1ull << (c % 64);
    std::size_t pivot = kNone;
    for (std::size_t i = rank; i < rows; ++i) {
      if (row(i)[w] & mask) {
        pivot = i;
        break;
      }
    }
    if (pivot == kNone) continue;
    if (pivot != rank) std::swap_ranges(row(pivot), row(pivot) + words, row(rank));
    const std::uint64_t* prow = row(rank);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      std::uint64_t* r = row(i);
      if (r[w] & mask) {
        for (std::size_t k = w; k < words; ++k) r[k] ^= prow[k];
      }
    }
    ++rank;
  }
  return rank;
}

template <class MulMod>
std::size_t rank_gfp(const IntMatrix& m, std::uint64_t p, MulMod mul) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::uint64_t> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = reduce(m(i, j), p);

  auto at = [&](std::size_t i, std::size_t j) -> std::uint64_t& { return a[i * cols + j]; };
  auto is_zero = [&](std::size_t i, std::size_t j) { return at(i, j) == 0; };

  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    const std::size_t pivot = choose_pivot(rank, rows, cols, c, is_zero);
    if (pivot == kNone) continue;
    if (pivot != rank) {
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(pivot * cols + c),
                       a.begin() + static_cast<std::ptrdiff_t>(pivot * cols + cols),
                       a.begin() + static_cast<std::ptrdiff_t>(rank * cols + c));
    }
    const std::uint64_t inv = inv_mod(at(rank, c), p);
    for (std::size_t j = c; j < cols; ++j) at(rank, j) = mul(at(rank, j), inv);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const std::uint64_t f = at(i, c);
      if (f == 0) continue;
      const std::uint64_t neg = p - f;
      for (std::size_t j = c; j < cols; ++j) {
        const std::uint64_t pj = at(rank, j);
        if (pj == 0) continue;
        std::uint64_t x = at(i, j) + mul(neg, pj);
        if (x >= p) x -= p;
        at(i, j) = x;
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t rank_exact_integer(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<mpz_class> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = to_mpz(m(i, j));

  auto at = [&](std::size_t i, std::size_t j) -> mpz_class& { return a[i * cols + j]; };
  auto is_zero = [&](std::size_t i, std::size_t j) { return sgn(at(i, j)) == 0; };

  // Bareiss: after k pivots every live entry is a (k+1)-minor of the input,
  // so the division by the previous pivot is exact.
  mpz_class prev = 1;
  mpz_class t;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    const std::size_t pivot = choose_pivot(rank, rows, cols, c, is_zero);
    if (pivot == kNone) continue;
    if (pivot != rank) {
      for (std::size_t j = c; j < cols; ++j) swap(at(pivot, j), at(rank, j));
    }
    const mpz_class& piv = at(rank, c);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const mpz_class f = at(i, c);
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_mul(t.get_mpz_t(), piv.get_mpz_t(), at(i, j).get_mpz_t());
        if (sgn(f) != 0) mpz_submul(t.get_mpz_t(), f.get_mpz_t(), at(rank, j).get_mpz_t());
        mpz_divexact(at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      at(i, c) = 0;
    }
    prev = piv;
    ++rank;
  }
  return rank;
}

std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("rank_mod_p: " + std::to_string(p) + " is not prime");
  if (p == 2) return rank_gf2(m);
  if (p < (1ull << 32)) {
    return rank_gfp(m, p, [p](std::uint64_t x, std::uint64_t y) { return x * y % p; });
  }
  return rank_gfp(m, p, [p](std::uint64_t x, std::uint64_t y) { return mul_mod(x, y, p); });
}

RankReport rank_certified(const IntMatrix& m, std::span<const std::uint64_t> primes,
                          std::uint64_t seed) {
  for (auto p : primes) {
    if (!is_prime(p)) throw std::invalid_argument("rank_certified: " + std::to_string(p) + " is not prime");
  }
  RankReport r;
  r.rows = m.rows();
  r.cols = m.cols();
  r.prng_seed = seed;
  r.screen_prime = random_prime_62(seed);

  const std::size_t full = std::min(m.rows(), m.cols());
  // rank mod p <= rank over Q, so a full-rank screen is a certificate.
  const std::size_t screened = rank_mod_p(m, r.screen_prime);
  if (screened == full) {
    r.q_rank = full;
    r.method = RankMethod::modular_full_rank;
  } else {
    r.q_rank = rank_exact_integer(m);
    r.method = RankMethod::fraction_free;
  }
  r.nonsingular = m.square() && r.q_rank == m.rows();
  for (auto p : primes) r.p_ranks[p] = rank_mod_p(m, p);
  return r;
}

std::string format_rank_report(const RankReport& r) {
  std::ostringstream out;
  out << "q_rank=" << r.q_rank << '\n';
  out << "nonsingular=" << (r.nonsingular ? "true" : "false") << '\n';
  for (const auto& [p, rank] : r.p_ranks) out << "p_rank[" << p << "]=" << rank << '\n';
  out << "method=" << to_string(r.method) << '\n';
  out << "prng_seed=" << r.prng_seed << '\n';
  out << "screen_prime=" << r.screen_prime << '\n';
  return out.str();
}

bool verify_kernel_vector(std::span<const std::int64_t> vec, const IntMatrix& m, Side side,
                          Field field) {
  const std::size_t inner = side == Side::left ? m.rows() : m.cols();
  const std::size_t outer = side == Side::left ? m.cols() : m.rows();
  if (vec.size() != inner) throw std::invalid_argument("verify_kernel_vector: dimension mismatch");
  if (!field.is_rational() && !is_prime(field.p)) {
    throw std::invalid_argument("verify_kernel_vector: field characteristic is not prime");
  }

  for (std::size_t o = 0; o < outer; ++o) {
    if (field.is_rational()) {
      mpz_class acc = 0;
      for (std::size_t k = 0; k < inner; ++k) {
        const std::int64_t entry = side == Side::left ? m(k, o) : m(o, k);
        if (entry == 0 || vec[k] == 0) continue;
        acc += to_mpz(entry) * to_mpz(vec[k]);
      }
      if (sgn(acc) != 0) return false;
    } else {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < inner; ++k) {
        const std::int64_t entry = side == Side::left ? m(k, o) : m(o, k);
        if (entry == 0 || vec[k] == 0) continue;
        acc = (acc + mul_mod(reduce(entry, field.p), reduce(vec[k], field.p), field.p)) % field.p;
      }
      if (acc != 0) return false;
    }
  }
  return true;
}

std::vector<std::vector<std::int64_t>> right_kernel_basis(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<mpq_class> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = mpq_class(to_mpz(m(i, j)));
  auto at = [&](std::size_t i, std::size_t j) -> mpq_class& { return a[i * cols + j]; };

  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = kNone;
    for (std::size_t i = rank; i < rows; ++i) {
      if (sgn(at(i, c)) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == kNone) continue;
    for (std::size_t j = 0; j < cols; ++j) swap(at(pivot, j), at(rank, j));
    const mpq_class inv = 1 / at(rank, c);
    for (std::size_t j = c; j < cols; ++j) at(rank, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || sgn(at(i, c)) == 0) continue;
      const mpq_class f = at(i, c);
      for (std::size_t j = c; j < cols; ++j) at(i, j) -= f * at(rank, j);
    }
    pivot_cols.push_back(c);
    ++rank;
  }

  std::vector<char> is_pivot(cols, 0);
  for (auto c : pivot_cols) is_pivot[c] = 1;

  std::vector<std::vector<std::int64_t>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<mpq_class> x(cols, 0);
    x[f] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) x[pivot_cols[r]] = -at(r, f);

    mpz_class denom_lcm = 1;
    for (const auto& q : x) mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> ints;
    ints.reserve(cols);
    mpz_class g = 0;
    for (const auto& q : x) {
      mpz_class z = q.get_num() * (denom_lcm / q.get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
      ints.push_back(std::move(z));
    }
    std::vector<std::int64_t> vec;
    vec.reserve(cols);
    for (auto& z : ints) {
      if (sgn(g) != 0) z /= g;
      if (!z.fits_slong_p()) throw std::overflow_error("right_kernel_basis: entry exceeds int64");
      vec.push_back(z.get_si());
    }
    basis.push_back(std::move(vec));
  }
  return basis;
}

}  // namespace tsd
