#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rxtx/exact_int.hpp"
#include "rxtx/op_counter.hpp"

namespace rxtx {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The two supported element domains.
template <typename T>
concept Element = std::same_as<T, double> || std::same_as<T, ExactInt>;

/// Row-major dense matrix.
template <Element T>
class DenseMatrix {
 public:
  using value_type = T;

  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw DimensionError("DenseMatrix: data length != rows*cols");
  }
  DenseMatrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("DenseMatrix: ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

namespace detail {

inline std::string dims(std::size_t r, std::size_t c) { return std::to_string(r) + "x" + std::to_string(c); }

template <Element T>
void require_same_shape(const DenseMatrix<T>& a, const DenseMatrix<T>& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string(what) + ": shape mismatch " + dims(a.rows(), a.cols()) + " vs " +
                         dims(b.rows(), b.cols()));
}

}  // namespace detail

template <Element T>
DenseMatrix<T> add(const DenseMatrix<T>& a, const DenseMatrix<T>& b, OpCounter* counter = nullptr) {
  detail::require_same_shape(a, b, "add");
  DenseMatrix<T> c(a.rows(), a.cols());
  auto x = a.data(), y = b.data();
  auto z = c.data();
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = x[i] + y[i];
  count_adds(counter, z.size());
  return c;
}

template <Element T>
DenseMatrix<T> sub(const DenseMatrix<T>& a, const DenseMatrix<T>& b, OpCounter* counter = nullptr) {
  detail::require_same_shape(a, b, "sub");
  DenseMatrix<T> c(a.rows(), a.cols());
  auto x = a.data(), y = b.data();
  auto z = c.data();
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = x[i] - y[i];
  count_adds(counter, z.size());
  return c;
}

/// In-place a += sign*b. Counted as one addition per element.
template <Element T>
void accumulate(DenseMatrix<T>& a, const DenseMatrix<T>& b, int sign, OpCounter* counter = nullptr) {
  detail::require_same_shape(a, b, "accumulate");
  auto x = a.data();
  auto y = b.data();
  if (sign >= 0) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  } else {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= y[i];
  }
  count_adds(counter, x.size());
}

// Sign changes are not arithmetic operations in the cost model and are never counted.
template <Element T>
DenseMatrix<T> negate(const DenseMatrix<T>& a) {
  DenseMatrix<T> c(a.rows(), a.cols());
  auto x = a.data();
  auto z = c.data();
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = -x[i];
  return c;
}

template <Element T>
DenseMatrix<T> transpose(const DenseMatrix<T>& a) {
  DenseMatrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

/// Schoolbook product; exactly rows*inner*cols multiplications when counted.
template <Element T>
DenseMatrix<T> naive_multiply(const DenseMatrix<T>& a, const DenseMatrix<T>& b, OpCounter* counter = nullptr) {
  if (a.cols() != b.rows())
    throw DimensionError("naive_multiply: inner dimension mismatch " + detail::dims(a.rows(), a.cols()) + " * " +
                         detail::dims(b.rows(), b.cols()));
  const std::size_t p = a.rows(), q = a.cols(), r = b.cols();
  DenseMatrix<T> c(p, r);
  if (q == 0) return c;
  for (std::size_t i = 0; i < p; ++i) {
    auto out = c.row(i);
    // first k initialises instead of accumulating, so adds are q-1 per entry
    const T a0 = a(i, 0);
    auto b0 = b.row(0);
    for (std::size_t j = 0; j < r; ++j) out[j] = a0 * b0[j];
    for (std::size_t k = 1; k < q; ++k) {
      const T aik = a(i, k);
      auto bk = b.row(k);
      for (std::size_t j = 0; j < r; ++j) out[j] += aik * bk[j];
    }
  }
  count_mults(counter, p * q * r);
  count_adds(counter, p * r * (q - 1));
  return c;
}

/// a * b^t without materialising the transpose. a is p x q, b is r x q.
template <Element T>
DenseMatrix<T> naive_multiply_abt(const DenseMatrix<T>& a, const DenseMatrix<T>& b, OpCounter* counter = nullptr) {
  if (a.cols() != b.cols())
    throw DimensionError("naive_multiply_abt: inner dimension mismatch " + detail::dims(a.rows(), a.cols()) +
                         " * (" + detail::dims(b.rows(), b.cols()) + ")^t");
  const std::size_t p = a.rows(), q = a.cols(), r = b.rows();
  DenseMatrix<T> c(p, r);
  if (q == 0) return c;
  for (std::size_t i = 0; i < p; ++i) {
    auto ai = a.row(i);
    for (std::size_t j = 0; j < r; ++j) {
      auto bj = b.row(j);
      T s = ai[0] * bj[0];
      for (std::size_t k = 1; k < q; ++k) s += ai[k] * bj[k];
      c(i, j) = s;
    }
  }
  count_mults(counter, p * q * r);
  count_adds(counter, p * r * (q - 1));
  return c;
}

/// x * x^t computing only the upper triangle and mirroring it.
/// For square n x n input this performs n^2(n+1)/2 multiplications.
template <Element T>
DenseMatrix<T> naive_gram(const DenseMatrix<T>& x, OpCounter* counter = nullptr) {
  const std::size_t n = x.rows(), m = x.cols();
  DenseMatrix<T> c(n, n);
  if (m == 0) return c;
  for (std::size_t i = 0; i < n; ++i) {
    auto xi = x.row(i);
    for (std::size_t j = i; j < n; ++j) {
      auto xj = x.row(j);
      T s = xi[0] * xj[0];
      for (std::size_t k = 1; k < m; ++k) s += xi[k] * xj[k];
      c(i, j) = s;
      c(j, i) = s;
    }
  }
  const std::size_t entries = n * (n + 1) / 2;
  count_mults(counter, entries * m);
  count_adds(counter, entries * (m - 1));
  return c;
}

/// Copy of the rectangle [r0, r0+rows) x [c0, c0+cols); cells outside the source are zero.
template <Element T>
DenseMatrix<T> extract_block(const DenseMatrix<T>& x, std::size_t r0, std::size_t c0, std::size_t rows,
                             std::size_t cols) {
  DenseMatrix<T> b(rows, cols);
  const std::size_t rend = std::min(x.rows(), r0 + rows);
  const std::size_t cend = std::min(x.cols(), c0 + cols);
  for (std::size_t i = r0; i < rend; ++i)
    for (std::size_t j = c0; j < cend; ++j) b(i - r0, j - c0) = x(i, j);
  return b;
}

/// Writes b into x at (r0, c0), clipping anything that falls outside x.
template <Element T>
void place_block(DenseMatrix<T>& x, const DenseMatrix<T>& b, std::size_t r0, std::size_t c0) {
  const std::size_t rend = std::min(x.rows(), r0 + b.rows());
  const std::size_t cend = std::min(x.cols(), c0 + b.cols());
  for (std::size_t i = r0; i < rend; ++i)
    for (std::size_t j = c0; j < cend; ++j) x(i, j) = b(i - r0, j - c0);
}

inline std::size_t round_up(std::size_t v, std::size_t multiple) {
  return multiple == 0 ? v : (v + multiple - 1) / multiple * multiple;
}

/// g x g zero-padded split of a matrix. Blocks are stored row-major: block k sits at grid
/// position (k / g, k % g), so for g = 4 blocks[0..3] form the first block-row.
template <Element T>
struct BlockPartition {
  std::size_t source_rows = 0;
  std::size_t source_cols = 0;
  std::size_t grid = 0;
  std::size_t padded_rows = 0;
  std::size_t padded_cols = 0;
  std::vector<DenseMatrix<T>> blocks;

  std::size_t block_rows() const { return padded_rows / grid; }
  std::size_t block_cols() const { return padded_cols / grid; }
  const DenseMatrix<T>& at(std::size_t bi, std::size_t bj) const { return blocks[bi * grid + bj]; }
};

template <Element T>
BlockPartition<T> partition(const DenseMatrix<T>& x, std::size_t grid) {
  if (grid == 0) throw std::invalid_argument("partition: grid must be positive");
  BlockPartition<T> p;
  p.source_rows = x.rows();
  p.source_cols = x.cols();
  p.grid = grid;
  p.padded_rows = round_up(x.rows(), grid);
  p.padded_cols = round_up(x.cols(), grid);
  const std::size_t br = p.block_rows(), bc = p.block_cols();
  p.blocks.reserve(grid * grid);
  for (std::size_t bi = 0; bi < grid; ++bi)
    for (std::size_t bj = 0; bj < grid; ++bj) p.blocks.push_back(extract_block(x, bi * br, bj * bc, br, bc));
  return p;
}

/// Inverse of partition: stitches the blocks and crops to the source shape.
template <Element T>
DenseMatrix<T> assemble(const BlockPartition<T>& p) {
  DenseMatrix<T> x(p.source_rows, p.source_cols);
  const std::size_t br = p.block_rows(), bc = p.block_cols();
  for (std::size_t bi = 0; bi < p.grid; ++bi)
    for (std::size_t bj = 0; bj < p.grid; ++bj) place_block(x, p.at(bi, bj), bi * br, bj * bc);
  return x;
}

/// Number of upper-triangle block positions of a g x g grid.
inline std::size_t upper_block_count(std::size_t grid) { return grid * (grid + 1) / 2; }

/// Row-major index of upper-triangle position (i, j), i <= j.
inline std::size_t upper_block_index(std::size_t grid, std::size_t i, std::size_t j) {
  return i * grid - i * (i - 1) / 2 + (j - i);
}

/// Builds an n x n symmetric matrix from the upper-triangle blocks (ordered (0,0),(0,1),...,(1,1),...).
/// Every strict-lower entry, including those inside diagonal blocks, is a copy of its mirror.
template <Element T>
DenseMatrix<T> assemble_symmetric(std::span<const DenseMatrix<T>> upper, std::size_t grid, std::size_t n) {
  if (upper.size() != upper_block_count(grid))
    throw DimensionError("assemble_symmetric: expected " + std::to_string(upper_block_count(grid)) + " blocks");
  const std::size_t b = upper[0].rows();
  DenseMatrix<T> c(n, n);
  for (std::size_t i = 0; i < grid; ++i)
    for (std::size_t j = i; j < grid; ++j) {
      const auto& blk = upper[upper_block_index(grid, i, j)];
      if (blk.rows() != b || blk.cols() != b) throw DimensionError("assemble_symmetric: ragged blocks");
      place_block(c, blk, i * b, j * b);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) c(i, j) = c(j, i);
  return c;
}

template <Element T>
bool is_symmetric(const DenseMatrix<T>& c) {
  if (c.rows() != c.cols()) return false;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = i + 1; j < c.cols(); ++j)
      if (!(c(i, j) == c(j, i))) return false;
  return true;
}

/// ||a - b||_F / ||b||_F (0 when both vanish).
double relative_frobenius_error(const DenseMatrix<double>& a, const DenseMatrix<double>& b);
double max_abs_difference(const DenseMatrix<double>& a, const DenseMatrix<double>& b);

using MatrixF = DenseMatrix<double>;
using MatrixZ = DenseMatrix<ExactInt>;

}  // namespace rxtx
