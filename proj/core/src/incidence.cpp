#include "tsd/incidence.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "tsd/combinatorics.hpp"

namespace tsd {

std::size_t subset_rank(std::span<const Point> subset, int v) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    const Point p = subset[i];
    if (p < 0 || p >= v || (i > 0 && subset[i - 1] >= p)) {
      throw std::invalid_argument("subset_rank: subset must be strictly increasing within [0, v)");
    }
    r += binomial(p, static_cast<std::int64_t>(i) + 1);
  }
  return r;
}

std::vector<Point> subset_unrank(std::size_t rank, int s, int v) {
  if (s < 0 || s > v || rank >= binomial(v, s)) {
    throw std::invalid_argument("subset_unrank: rank out of range");
  }
  std::vector<Point> out(static_cast<std::size_t>(s));
  int c = v - 1;
  for (int i = s; i >= 1; --i) {
    while (binomial(c, i) > rank) --c;
    out[static_cast<std::size_t>(i - 1)] = c;
    rank -= binomial(c, i);
    --c;
  }
  return out;
}

IncidenceMatrix::IncidenceMatrix(int s, int v, std::size_t rows,
                                 std::vector<std::vector<std::uint32_t>> columns)
    : s_(s), v_(v), rows_(rows), columns_(std::move(columns)) {}

bool IncidenceMatrix::at(std::size_t i, std::size_t j) const {
  const auto& col = columns_[j];
  return std::binary_search(col.begin(), col.end(), static_cast<std::uint32_t>(i));
}

std::vector<std::int64_t> IncidenceMatrix::row_sums() const {
  std::vector<std::int64_t> sums(rows_, 0);
  for (const auto& col : columns_)
    for (auto r : col) ++sums[r];
  return sums;
}

std::vector<std::int64_t> IncidenceMatrix::column_sums() const {
  std::vector<std::int64_t> sums;
  sums.reserve(columns_.size());
  for (const auto& col : columns_) sums.push_back(static_cast<std::int64_t>(col.size()));
  return sums;
}

IntMatrix IncidenceMatrix::to_dense() const {
  IntMatrix m(rows_, columns_.size());
  for (std::size_t j = 0; j < columns_.size(); ++j)
    for (auto r : columns_[j]) m(r, j) = 1;
  return m;
}

namespace {

// Appends the colex ranks of every s-subset of `block` to `out`.
void collect_subsets(const Block& block, int s, int v, std::vector<std::uint32_t>& out) {
  const int k = static_cast<int>(block.size());
  std::vector<int> idx(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) idx[i] = i;
  std::vector<Point> subset(static_cast<std::size_t>(s));
  for (;;) {
    for (int i = 0; i < s; ++i) subset[i] = block[idx[i]];
    out.push_back(static_cast<std::uint32_t>(subset_rank(subset, v)));
    int i = s - 1;
    while (i >= 0 && idx[i] == k - s + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

IncidenceMatrix build_incidence(const Design& d, int s) {
  if (s < 1 || s > d.max_block_size()) {
    throw std::invalid_argument("build_incidence: s=" + std::to_string(s) +
                                " outside [1, max block size]");
  }
  const std::size_t rows = binomial(d.v(), s);
  std::vector<std::vector<std::uint32_t>> columns;
  columns.reserve(d.size());
  for (const auto& b : d.blocks()) {
    std::vector<std::uint32_t> col;
    col.reserve(binomial(static_cast<std::int64_t>(b.size()), s));
    if (static_cast<int>(b.size()) >= s) collect_subsets(b, s, d.v(), col);
    std::sort(col.begin(), col.end());
    columns.push_back(std::move(col));
  }
  return IncidenceMatrix(s, d.v(), rows, std::move(columns));
}

GramMatrix gram(const IncidenceMatrix& n2) {
  if (n2.s() != 2) throw std::invalid_argument("gram: incidence matrix must have s = 2");
  GramMatrix g(n2.rows(), n2.rows());
  for (std::size_t j = 0; j < n2.cols(); ++j) {
    const auto col = n2.column(j);
    for (auto p : col)
      for (auto q : col) ++g(p, q);
  }
  return g;
}

}  // namespace tsd
