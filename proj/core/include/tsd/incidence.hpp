#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tsd/design.hpp"
#include "tsd/matrix.hpp"

namespace tsd {

/// Colexicographic rank of a strictly increasing s-subset of [0, v).
std::size_t subset_rank(std::span<const Point> subset, int v);

/// Inverse of subset_rank.
std::vector<Point> subset_unrank(std::size_t rank, int s, int v);

/// Inclusion matrix of s-subsets (rows, colex order) versus blocks (columns,
/// design order). Stored column-major as sorted row-index lists.
class IncidenceMatrix {
 public:
  IncidenceMatrix(int s, int v, std::size_t rows, std::vector<std::vector<std::uint32_t>> columns);

  int s() const noexcept { return s_; }
  int v() const noexcept { return v_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }

  /// Sorted row indices holding a one in column j.
  std::span<const std::uint32_t> column(std::size_t j) const { return columns_[j]; }

  bool at(std::size_t i, std::size_t j) const;
  std::vector<std::int64_t> row_sums() const;
  std::vector<std::int64_t> column_sums() const;
  IntMatrix to_dense() const;

 private:
  int s_;
  int v_;
  std::size_t rows_;
  std::vector<std::vector<std::uint32_t>> columns_;
};

/// N_s of a design. Requires 1 <= s <= max block size.
IncidenceMatrix build_incidence(const Design& d, int s);

/// N_2 N_2^T: entry (P, Q) counts blocks containing P u Q.
using GramMatrix = IntMatrix;
GramMatrix gram(const IncidenceMatrix& n2);

}  // namespace tsd
