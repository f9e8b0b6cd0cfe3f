#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tsd {

using Point = int;
using Block = std::vector<Point>;

/// Raised when a design violates its structural invariants or cannot be parsed.
class DesignError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A pairwise balanced design candidate: v points, an index lambda, a declared
/// set of admissible block sizes and an ordered multiset of blocks.
///
/// Construction enforces the structural invariants (points in range, blocks
/// strictly increasing, sizes in K). Pair coverage is *not* enforced here; use
/// validate_pbd for that. Repeated blocks are stored as repeated entries so that
/// block index == incidence column index.
class Design {
 public:
  Design() = default;

  /// Blocks are sorted on entry. An empty `block_sizes` means "derive K from
  /// the blocks actually present".
  Design(int v, int lambda, std::vector<int> block_sizes, std::vector<Block> blocks);

  int v() const noexcept { return v_; }
  int lambda() const noexcept { return lambda_; }
  const std::vector<int>& block_sizes() const noexcept { return block_sizes_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  const Block& operator[](std::size_t i) const { return blocks_[i]; }

  /// Sizes that actually occur, sorted ascending.
  std::vector<int> used_block_sizes() const;
  int max_block_size() const noexcept;
  bool is_triple_system() const noexcept;

  /// Same parameters and same block sequence.
  bool operator==(const Design&) const = default;

 private:
  int v_ = 0;
  int lambda_ = 1;
  std::vector<int> block_sizes_;
  std::vector<Block> blocks_;
};

struct AdmissibilityReport {
  std::int64_t alpha = 0;
  std::int64_t beta = 0;
  bool global_ok = false;
  bool local_ok = false;

  bool ok() const noexcept { return global_ok && local_ok; }
};

struct PairDeviation {
  std::pair<Point, Point> pair;
  int multiplicity = 0;

  bool operator==(const PairDeviation&) const = default;
};

struct PairCoverageReport {
  bool is_valid = true;
  std::vector<PairDeviation> deviations;
};

Design parse_design(std::string_view text);
Design read_design_file(const std::filesystem::path& path);

/// Canonical text: header, then blocks in lexicographic order (repeats adjacent).
std::string serialize_design(const Design& d);
void write_design_file(const std::filesystem::path& path, const Design& d);

/// Blocks of `d` in lexicographic order.
std::vector<Block> sorted_blocks(const Design& d);

/// True when both designs carry the same block multiset on the same v.
bool same_block_multiset(const Design& a, const Design& b);

PairCoverageReport validate_pbd(const Design& d);

AdmissibilityReport admissible(int v, int lambda, std::span<const int> block_sizes);

/// All C(v,3) triples once each; a TS_{v-2}(v).
Design complete_triple_design(int v);

/// Every block repeated m times (consecutively); lambda scaled by m.
Design scale_copies(const Design& d, int m);

/// Image of `d` under the point map x -> perm[x]. `perm` must be a permutation of 0..v-1.
Design relabel(const Design& d, std::span<const Point> perm);

}  // namespace tsd
