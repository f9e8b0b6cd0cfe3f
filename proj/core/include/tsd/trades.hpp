#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tsd/design.hpp"
#include "tsd/exact_rank.hpp"

namespace tsd {

/// Two distinct block multisets on a common support that cover the same pair
/// multiset.
struct Trade {
  std::vector<Block> side_a;
  std::vector<Block> side_b;
  std::vector<Point> support;

  bool operator==(const Trade&) const = default;
};

/// Side lists are sorted, sides are distinct and cover identical pairs.
bool is_trade(const Trade& t);

/// A vector certified to lie in a kernel of some matrix derived from a design:
/// indexed by blocks for trade vectors, by pairs (colex) for pencil and Gram witnesses.
struct KernelWitness {
  std::vector<std::int64_t> vector;
  Side side = Side::right;
  Field field = Field::rational();
};

struct RepeatedBlock {
  Block block;
  int multiplicity = 0;

  bool operator==(const RepeatedBlock&) const = default;
};

/// Blocks with multiplicity >= 2, in lexicographic order.
std::vector<RepeatedBlock> repeated_blocks(const Design& d);

/// Every quadrilateral {u,v,a},{x,y,a},{u,x,b},{v,y,b} whose a<->b image is
/// also present, reported once per unordered pair of sides, sorted.
std::vector<Trade> find_quadrilateral_trades(const Design& d);

/// +1 on columns matching side_a, -1 on columns matching side_b, using
/// distinct block occurrences of d. Verified against N_2 over Q.
KernelWitness trade_to_kernel(const Trade& t, const Design& d);

/// e_i - e_j for two occurrences i != j of the same block.
KernelWitness repeat_to_kernel(const Design& d, std::size_t i, std::size_t j);

/// Indicator over the C(v,2) pairs of those containing x; left kernel of N_2 mod 2
/// for any triple system.
KernelWitness pencil_vector(Point x, int v);

/// All-ones over pairs; right kernel of N_2 N_2^T mod 3 for a valid triple system.
KernelWitness gram_f3_witness(const Design& d);

}  // namespace tsd
