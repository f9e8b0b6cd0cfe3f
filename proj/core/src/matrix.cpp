#include "tsd/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tsd {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::permuted(std::span<const std::size_t> row_perm,
                              std::span<const std::size_t> col_perm) const {
  if (row_perm.size() != rows_ || col_perm.size() != cols_) {
    throw std::invalid_argument("permuted: permutation size mismatch");
  }
  IntMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(row_perm[i], col_perm[j]) = (*this)(i, j);
  return out;
}

std::int64_t IntMatrix::trace() const {
  std::int64_t t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

std::size_t IntMatrix::nonzeros() const {
  std::size_t n = 0;
  for (auto x : data_) n += (x != 0);
  return n;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const std::int64_t x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        std::int64_t prod = 0;
        if (__builtin_mul_overflow(x, b(k, j), &prod) ||
            __builtin_add_overflow(c(i, j), prod, &c(i, j))) {
          throw std::overflow_error("multiply: int64 overflow");
        }
      }
    }
  }
  return c;
}

std::string format_sparse_triples(const IntMatrix& m, std::string_view field) {
  std::ostringstream out;
  out << m.rows() << ' ' << m.cols() << ' ' << field << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) out << i << ' ' << j << ' ' << m(i, j) << '\n';
  out << "-1 -1 0\n";
  return out.str();
}

IntMatrix parse_sparse_triples(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string field;
  if (!(in >> rows >> cols >> field)) throw std::runtime_error("sparse matrix: malformed header");
  IntMatrix m(rows, cols);
  for (;;) {
    long long i = 0;
    long long j = 0;
    long long value = 0;
    if (!(in >> i >> j >> value)) throw std::runtime_error("sparse matrix: missing terminator");
    if (i == -1 && j == -1) break;
    if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= rows || static_cast<std::size_t>(j) >= cols) {
      throw std::runtime_error("sparse matrix: entry index out of range");
    }
    m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = value;
  }
  return m;
}

}  // namespace tsd
