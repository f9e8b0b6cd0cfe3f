#include "tsd/trades.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "tsd/combinatorics.hpp"
#include "tsd/incidence.hpp"

namespace tsd {

namespace {

std::vector<std::size_t> pair_multiset(const std::vector<Block>& blocks) {
  std::vector<std::size_t> pairs;
  for (const auto& b : blocks)
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j) pairs.push_back(pair_index(b[i], b[j]));
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

std::uint64_t triple_key(Point a, Point b, Point c, int v) {
  Point t[3] = {a, b, c};
  std::sort(t, t + 3);
  const auto n = static_cast<std::uint64_t>(v);
  return (static_cast<std::uint64_t>(t[0]) * n + static_cast<std::uint64_t>(t[1])) * n +
         static_cast<std::uint64_t>(t[2]);
}

}  // namespace

bool is_trade(const Trade& t) {
  if (!std::is_sorted(t.side_a.begin(), t.side_a.end()) || !std::is_sorted(t.side_b.begin(), t.side_b.end())) {
    return false;
  }
  if (t.side_a == t.side_b) return false;
  return pair_multiset(t.side_a) == pair_multiset(t.side_b);
}

std::vector<RepeatedBlock> repeated_blocks(const Design& d) {
  std::vector<RepeatedBlock> out;
  const auto blocks = sorted_blocks(d);
  for (std::size_t i = 0; i < blocks.size();) {
    std::size_t j = i;
    while (j < blocks.size() && blocks[j] == blocks[i]) ++j;
    if (j - i >= 2) out.push_back({blocks[i], static_cast<int>(j - i)});
    i = j;
  }
  return out;
}

std::vector<Trade> find_quadrilateral_trades(const Design& d) {
  if (!d.is_triple_system()) throw std::invalid_argument("find_quadrilateral_trades: design has non-triple blocks");
  const int v = d.v();
  std::unordered_set<std::uint64_t> present;
  for (const auto& b : d.blocks()) present.insert(triple_key(b[0], b[1], b[2], v));
  auto has = [&](Point p, Point q, Point r) { return present.count(triple_key(p, q, r, v)) != 0; };

  std::set<std::pair<std::vector<Block>, std::vector<Block>>> found;
  std::vector<Point> others;
  for (Point a = 0; a < v; ++a) {
    for (Point b = a + 1; b < v; ++b) {
      // Pairs {p, q} lying in a block with a and in a block with b.
      std::vector<std::vector<char>> edge(static_cast<std::size_t>(v), std::vector<char>(static_cast<std::size_t>(v), 0));
      others.clear();
      for (Point p = 0; p < v; ++p) {
        if (p == a || p == b) continue;
        others.push_back(p);
        for (Point q = p + 1; q < v; ++q) {
          if (q == a || q == b) continue;
          if (has(p, q, a) && has(p, q, b)) edge[p][q] = edge[q][p] = 1;
        }
      }
      // Each 4-cycle u-v-y-x splits into matchings {uv, xy} and {ux, vy}.
      for (Point u : others) {
        for (Point w : others) {
          if (w == u || !edge[u][w]) continue;
          for (Point x : others) {
            if (x == u || x == w || !edge[u][x]) continue;
            for (Point y : others) {
              if (y == u || y == w || y == x || !edge[x][y] || !edge[w][y]) continue;
              std::vector<Block> side_a = {{u, w, a}, {x, y, a}, {u, x, b}, {w, y, b}};
              std::vector<Block> side_b = {{u, w, b}, {x, y, b}, {u, x, a}, {w, y, a}};
              for (auto* side : {&side_a, &side_b}) {
                for (auto& blk : *side) std::sort(blk.begin(), blk.end());
                std::sort(side->begin(), side->end());
              }
              if (side_b < side_a) std::swap(side_a, side_b);
              found.emplace(std::move(side_a), std::move(side_b));
            }
          }
        }
      }
    }
  }

  std::vector<Trade> trades;
  trades.reserve(found.size());
  for (const auto& [side_a, side_b] : found) {
    std::set<Point> support;
    for (const auto& blk : side_a) support.insert(blk.begin(), blk.end());
    trades.push_back({side_a, side_b, std::vector<Point>(support.begin(), support.end())});
  }
  return trades;
}

KernelWitness trade_to_kernel(const Trade& t, const Design& d) {
  if (!is_trade(t)) throw std::invalid_argument("trade_to_kernel: sides do not form a trade");

  std::vector<char> used(d.size(), 0);
  std::vector<std::int64_t> vec(d.size(), 0);
  auto embed = [&](const std::vector<Block>& side, std::int64_t sign) {
    for (const auto& blk : side) {
      std::size_t col = 0;
      while (col < d.size() && (used[col] || d[col] != blk)) ++col;
      if (col == d.size()) throw std::invalid_argument("trade_to_kernel: trade is not embedded in the design");
      used[col] = 1;
      vec[col] = sign;
    }
  };
  embed(t.side_a, +1);
  embed(t.side_b, -1);

  KernelWitness w{std::move(vec), Side::right, Field::rational()};
  if (!verify_kernel_vector(w.vector, build_incidence(d, 2).to_dense(), Side::right, Field::rational())) {
    throw std::logic_error("trade_to_kernel: induced vector is not in the kernel of N_2");
  }
  return w;
}

KernelWitness repeat_to_kernel(const Design& d, std::size_t i, std::size_t j) {
  if (i >= d.size() || j >= d.size() || i == j || d[i] != d[j]) {
    throw std::invalid_argument("repeat_to_kernel: need two distinct occurrences of one block");
  }
  std::vector<std::int64_t> vec(d.size(), 0);
  vec[i] = 1;
  vec[j] = -1;
  return {std::move(vec), Side::right, Field::rational()};
}

KernelWitness pencil_vector(Point x, int v) {
  if (x < 0 || x >= v) throw std::invalid_argument("pencil_vector: point out of range");
  std::vector<std::int64_t> vec(binomial(v, 2), 0);
  for (Point y = 0; y < v; ++y) {
    if (y != x) vec[pair_index(std::min(x, y), std::max(x, y))] = 1;
  }
  return {std::move(vec), Side::left, Field::prime(2)};
}

KernelWitness gram_f3_witness(const Design& d) {
  if (!d.is_triple_system() || !validate_pbd(d).is_valid) {
    throw std::invalid_argument("gram_f3_witness: design is not a valid triple system");
  }
  return {std::vector<std::int64_t>(binomial(d.v(), 2), 1), Side::right, Field::prime(3)};
}

}  // namespace tsd
