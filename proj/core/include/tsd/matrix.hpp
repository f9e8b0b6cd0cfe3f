#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tsd {

/// Dense row-major integer matrix. The rank routines reduce entries mod p or
/// lift them to big integers, so plain int64 storage is enough for inputs.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const std::int64_t> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  IntMatrix transpose() const;
  IntMatrix permuted(std::span<const std::size_t> row_perm, std::span<const std::size_t> col_perm) const;
  std::int64_t trace() const;
  std::size_t nonzeros() const;

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Exact product; throws std::overflow_error if an entry leaves int64 range.
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

/// Sparse triple text: `rows cols field`, one `i j value` per nonzero in
/// row-major order, terminated by `-1 -1 0`.
std::string format_sparse_triples(const IntMatrix& m, std::string_view field = "Z");
IntMatrix parse_sparse_triples(std::string_view text);

}  // namespace tsd
