#pragma once

// Independent reference routines for tests. Nothing here calls into the
// library's elimination, canonical labeling or trade search code.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "tsd/design.hpp"
#include "tsd/matrix.hpp"

namespace tsd::oracle {

inline Design fano() {
  return Design(7, 1, {3}, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
}

/// Dense textbook Gaussian elimination over F_p (p small) or Q (p == 0, GMP rationals).
inline std::size_t rank(const IntMatrix& m, std::uint64_t p = 0) {
  std::vector<std::vector<mpq_class>> a(m.rows(), std::vector<mpq_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      long x = static_cast<long>(m(i, j));
      if (p) x = ((x % static_cast<long>(p)) + static_cast<long>(p)) % static_cast<long>(p);
      a[i][j] = x;
    }
  auto norm = [p](mpq_class& q) {
    if (!p) return;
    mpz_class n = q.get_num() % static_cast<unsigned long>(p);
    if (n < 0) n += static_cast<unsigned long>(p);
    q = n;
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && a[piv][c] == 0) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[piv], a[r]);
    mpq_class inv;
    if (p) {
      mpz_class z = a[r][c].get_num(), out;
      mpz_class pp = static_cast<unsigned long>(p);
      mpz_invert(out.get_mpz_t(), z.get_mpz_t(), pp.get_mpz_t());
      inv = out;
    } else {
      inv = 1 / a[r][c];
    }
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (a[i][c] == 0) continue;
      mpq_class f = a[i][c] * inv;
      norm(f);
      for (std::size_t j = c; j < m.cols(); ++j) {
        a[i][j] -= f * a[r][j];
        norm(a[i][j]);
      }
    }
    ++r;
  }
  return r;
}

/// N_2 by direct subset test, rows in colex order of pairs.
inline IntMatrix n2_direct(const Design& d) {
  std::vector<std::pair<int, int>> pairs;
  for (int b = 1; b < d.v(); ++b)
    for (int a = 0; a < b; ++a) pairs.push_back({a, b});
  IntMatrix m(pairs.size(), d.size());
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) {
      const auto& blk = d[j];
      const bool has_a = std::find(blk.begin(), blk.end(), pairs[i].first) != blk.end();
      const bool has_b = std::find(blk.begin(), blk.end(), pairs[i].second) != blk.end();
      m(i, j) = has_a && has_b;
    }
  return m;
}

/// Lexicographically least sorted block list over all v! relabelings.
inline std::vector<Block> brute_canonical(const Design& d) {
  std::vector<Point> perm(static_cast<std::size_t>(d.v()));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Block> best;
  do {
    std::vector<Block> img;
    for (const auto& b : d.blocks()) {
      Block x;
      for (Point p : b) x.push_back(perm[p]);
      std::sort(x.begin(), x.end());
      img.push_back(std::move(x));
    }
    std::sort(img.begin(), img.end());
    if (best.empty() || img < best) best = std::move(img);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Backtracking over all labeled TS_lambda(v): cover the first deficient pair
/// in lexicographic order by a nondecreasing run of third points.
template <class Emit>
void all_labeled_triple_systems(int v, int lambda, Emit emit) {
  std::vector<std::vector<int>> need(v, std::vector<int>(v, lambda));
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < v; ++x)
    for (int y = x + 1; y < v; ++y) pairs.push_back({x, y});
  std::vector<Block> blocks;
  auto rec = [&](auto& self, std::size_t p, int min_z) -> void {
    while (p < pairs.size() && need[pairs[p].first][pairs[p].second] == 0) {
      ++p;
      if (p < pairs.size()) min_z = pairs[p].second + 1;
    }
    if (p == pairs.size()) {
      emit(Design(v, lambda, {3}, blocks));
      return;
    }
    const auto [x, y] = pairs[p];
    for (int z = min_z; z < v; ++z) {
      if (need[x][z] == 0 || need[y][z] == 0) continue;
      --need[x][y], --need[y][x], --need[x][z], --need[z][x], --need[y][z], --need[z][y];
      blocks.push_back({x, y, z});
      self(self, p, z);
      blocks.pop_back();
      ++need[x][y], ++need[y][x], ++need[x][z], ++need[z][x], ++need[y][z], ++need[z][y];
    }
  };
  rec(rec, 0, 2);
}

/// First STS(9) found by plain backtracking.
inline Design first_sts9() {
  Design found;
  bool have = false;
  struct Stop {};
  try {
    all_labeled_triple_systems(9, 1, [&](const Design& d) {
      found = d;
      have = true;
      throw Stop{};
    });
  } catch (const Stop&) {
  }
  if (!have) throw std::logic_error("no STS(9) found");
  return found;
}

/// Every (u,v,x,y,a,b) tuple of distinct points with all eight quadrilateral
/// blocks present, normalized to an unordered pair of sorted sides.
inline std::set<std::pair<std::vector<Block>, std::vector<Block>>> brute_quadrilaterals(const Design& d) {
  std::set<Block> present;
  for (const auto& b : d.blocks()) present.insert(b);
  auto has = [&](Block b) {
    std::sort(b.begin(), b.end());
    return present.count(b) != 0;
  };
  std::set<std::pair<std::vector<Block>, std::vector<Block>>> out;
  const int n = d.v();
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
              std::set<int> pts = {u, v, x, y, a, b};
              if (pts.size() != 6) continue;
              std::vector<Block> s1 = {{u, v, a}, {x, y, a}, {u, x, b}, {v, y, b}};
              std::vector<Block> s2 = {{u, v, b}, {x, y, b}, {u, x, a}, {v, y, a}};
              bool ok = true;
              for (auto* s : {&s1, &s2})
                for (auto& blk : *s) {
                  ok = ok && has(blk);
                  std::sort(blk.begin(), blk.end());
                }
              if (!ok) continue;
              std::sort(s1.begin(), s1.end());
              std::sort(s2.begin(), s2.end());
              if (s2 < s1) std::swap(s1, s2);
              out.emplace(s1, s2);
            }
  return out;
}

inline std::vector<Point> random_permutation(int v, std::mt19937_64& rng) {
  std::vector<Point> perm(static_cast<std::size_t>(v));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

inline std::vector<std::size_t> random_index_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

}  // namespace tsd::oracle
