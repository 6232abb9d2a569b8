#pragma once

#include "cclass/linalg.hpp"

#include <optional>
#include <vector>

namespace cclass {

/// Σ_{k≤N} c_k τ^k + O(τ^{N+1}) with τ = t − t₀. Order −1 means nothing is known.
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  /// Order is coeffs.size() − 1.
  explicit TruncatedSeries(std::vector<Q> coeffs);
  /// Pads with zeros or truncates to the given order.
  TruncatedSeries(std::vector<Q> coeffs, int order);

  static TruncatedSeries constant(const Q& c, int order);
  /// The series τ.
  static TruncatedSeries variable(int order);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Q>& coeffs() const { return c_; }
  const Q& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  Q& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }

  TruncatedSeries truncate(int order) const;
  bool is_zero() const;
  std::optional<int> first_nonzero() const;

  TruncatedSeries derivative() const;
  /// Constant term 0; gains one order.
  TruncatedSeries antiderivative() const;
  TruncatedSeries inverse() const;
  TruncatedSeries pow(int k) const;
  /// (c₀ + …)^e for rational e; needs c₀ = 1.
  TruncatedSeries pow(const Q& e) const;
  /// Needs a zero constant term so that every coefficient stays rational.
  TruncatedSeries exp() const;
  /// this(inner(τ)); inner must have zero constant term.
  TruncatedSeries compose(const TruncatedSeries& inner) const;
  /// Compositional inverse of a series with c₀ = 0, c₁ ≠ 0.
  TruncatedSeries reversion() const;

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const Q& s);
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator-(TruncatedSeries a) { return a *= -1; }
  friend TruncatedSeries operator*(const Q& s, TruncatedSeries a) { return a *= s; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b);
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return a.c_ == b.c_; }

 private:
  std::vector<Q> c_;
};

/// m×m matrix-valued series, stored as coefficient matrices.
class MatrixSeries {
 public:
  MatrixSeries() = default;
  MatrixSeries(std::size_t m, int order);
  explicit MatrixSeries(std::vector<Matrix> coeffs);

  static MatrixSeries identity(std::size_t m, int order);
  static MatrixSeries scalar(const TruncatedSeries& s, std::size_t m);
  static MatrixSeries from_entries(const std::vector<std::vector<TruncatedSeries>>& entries);

  std::size_t dim() const { return m_; }
  int order() const { return static_cast<int>(c_.size()) - 1; }
  const Matrix& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  Matrix& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }

  TruncatedSeries entry(std::size_t i, std::size_t j) const;
  TruncatedSeries trace() const;
  MatrixSeries truncate(int order) const;
  bool is_zero() const;
  MatrixSeries derivative() const;
  MatrixSeries antiderivative() const;
  MatrixSeries inverse() const;
  MatrixSeries compose(const TruncatedSeries& inner) const;

  MatrixSeries& operator+=(const MatrixSeries& o);
  MatrixSeries& operator-=(const MatrixSeries& o);
  friend MatrixSeries operator+(MatrixSeries a, const MatrixSeries& b) { return a += b; }
  friend MatrixSeries operator-(MatrixSeries a, const MatrixSeries& b) { return a -= b; }
  friend MatrixSeries operator*(const MatrixSeries& a, const MatrixSeries& b);
  friend MatrixSeries operator*(const TruncatedSeries& s, const MatrixSeries& a);
  friend MatrixSeries operator*(const Q& s, MatrixSeries a);
  friend bool operator==(const MatrixSeries& a, const MatrixSeries& b) { return a.m_ == b.m_ && a.c_ == b.c_; }

 private:
  std::size_t m_ = 0;
  std::vector<Matrix> c_;
};

}  // namespace cclass
