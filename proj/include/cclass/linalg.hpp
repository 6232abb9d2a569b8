#pragma once

#include "cclass/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace cclass {

using DenseVec = std::vector<Q>;

/// Sparse vector with strictly increasing indices and no stored zeros.
class SparseVec {
 public:
  using Entry = std::pair<std::size_t, Q>;

  SparseVec() = default;
  static SparseVec from_dense(const DenseVec& v);
  static SparseVec unit(std::size_t index, const Q& value = 1);
  DenseVec to_dense(std::size_t dim) const;

  /// Appends an entry; the index must exceed every stored index.
  void push_back(std::size_t index, const Q& value);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  const Entry& front() const { return entries_.front(); }
  const Entry& back() const { return entries_.back(); }
  Q get(std::size_t index) const;

  /// *this += a * x
  SparseVec& add_scaled(const Q& a, const SparseVec& x);
  SparseVec& scale(const Q& a);

  SparseVec& operator+=(const SparseVec& x) { return add_scaled(1, x); }
  SparseVec& operator-=(const SparseVec& x) { return add_scaled(-1, x); }
  friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
  friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
  friend SparseVec operator*(const Q& s, SparseVec a) { return a.scale(s); }
  friend bool operator==(const SparseVec& a, const SparseVec& b);

 private:
  std::vector<Entry> entries_;
};

/// Unordered accumulation of sparse contributions.
class SparseAccumulator {
 public:
  void add(std::size_t index, const Q& value);
  SparseVec take();

 private:
  std::map<std::size_t, Q> acc_;
};

Q dot(const SparseVec& a, const DenseVec& b);
Q dot(const SparseVec& a, const SparseVec& b);
bool is_zero(const DenseVec& v);

/// Column-major sparse matrix.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);
  SparseMatrix(std::size_t rows, std::vector<SparseVec> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  const SparseVec& column(std::size_t j) const { return columns_[j]; }
  void set_column(std::size_t j, SparseVec v) { columns_[j] = std::move(v); }
  const std::vector<SparseVec>& columns() const { return columns_; }
  std::size_t nonzeros() const;

  DenseVec apply(const DenseVec& x) const;
  SparseVec apply(const SparseVec& x) const;
  SparseMatrix transpose() const;
  bool is_zero() const;

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVec> columns_;
};

/// Incremental row echelon form over Q.
///
/// Vectors are inserted one at a time and numbered in insertion order. Every
/// insertion that turns out dependent yields an exact relation among the
/// inserted vectors, so the same object gives ranks, kernels, image bases and
/// membership certificates.
class Echelon {
 public:
  explicit Echelon(std::size_t dim, bool track = true);

  /// True if v was independent of everything inserted before.
  bool insert(const SparseVec& v);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  std::size_t inserted() const { return inserted_; }

  /// Relations Σ c_i v_i = 0 over insertion indices, one per dependent insert.
  const std::vector<SparseVec>& dependencies() const { return dependencies_; }
  /// Insertion indices of the vectors that were independent.
  const std::vector<std::size_t>& independent() const { return independent_; }

  bool contains(const SparseVec& v) const;
  /// Coefficients c over insertion indices with Σ c_i v_i = v, if v is in the span.
  std::optional<SparseVec> express(const SparseVec& v) const;

 private:
  struct Row {
    SparseVec v;
    SparseVec comb;
  };
  void reduce(SparseVec& v, SparseVec* comb) const;

  std::size_t dim_;
  bool track_;
  std::size_t inserted_ = 0;
  std::vector<Row> rows_;
  std::vector<int> pivot_row_;
  std::vector<SparseVec> dependencies_;
  std::vector<std::size_t> independent_;
};

std::size_t rank(const SparseMatrix& m);
/// Basis of the null space, one vector per dependent column.
std::vector<SparseVec> kernel_basis(const SparseMatrix& m);
/// Square matrix restricted to the coordinate subspace spanned by idx; throws unless it is invariant.
SparseMatrix restrict_to_coords(const SparseMatrix& m, const std::vector<std::size_t>& idx);

/// Small dense matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Q& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Q& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const;
  Q trace() const;
  bool is_zero() const;
  /// Throws std::domain_error when singular.
  Matrix inverse() const;
  std::size_t rank() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Q& s);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Q& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend DenseVec operator*(const Matrix& a, const DenseVec& v);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Q> data_;
};

}  // namespace cclass
