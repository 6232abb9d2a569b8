#include "cclass/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace cclass {

TruncatedSeries::TruncatedSeries(std::vector<Q> coeffs) : c_(std::move(coeffs)) {}

TruncatedSeries::TruncatedSeries(std::vector<Q> coeffs, int order) : c_(std::move(coeffs)) {
  c_.resize(static_cast<std::size_t>(std::max(order + 1, 0)));
}

TruncatedSeries TruncatedSeries::constant(const Q& c, int order) { return TruncatedSeries({c}, order); }

TruncatedSeries TruncatedSeries::variable(int order) { return TruncatedSeries({0, 1}, order); }

TruncatedSeries TruncatedSeries::truncate(int order) const {
  if (order > this->order()) throw std::invalid_argument("TruncatedSeries::truncate: cannot raise the order");
  return TruncatedSeries(std::vector<Q>(c_.begin(), c_.begin() + (order + 1)));
}

bool TruncatedSeries::is_zero() const { return cclass::is_zero(c_); }

std::optional<int> TruncatedSeries::first_nonzero() const {
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (sgn(c_[k]) != 0) return static_cast<int>(k);
  return std::nullopt;
}

TruncatedSeries TruncatedSeries::derivative() const {
  std::vector<Q> d;
  for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long>(k));
  return TruncatedSeries(std::move(d));
}

TruncatedSeries TruncatedSeries::antiderivative() const {
  if (c_.empty()) return TruncatedSeries(std::vector<Q>{0});
  std::vector<Q> r(c_.size() + 1);
  for (std::size_t k = 0; k < c_.size(); ++k) r[k + 1] = c_[k] / static_cast<long>(k + 1);
  return TruncatedSeries(std::move(r));
}

TruncatedSeries TruncatedSeries::inverse() const {
  if (c_.empty()) return *this;
  if (sgn(c_[0]) == 0) throw std::domain_error("series inverse needs a nonzero constant term");
  const int n = order();
  std::vector<Q> b(c_.size());
  Q inv0 = 1 / c_[0];
  b[0] = inv0;
  for (int k = 1; k <= n; ++k) {
    Q s = 0;
    for (int i = 1; i <= k; ++i)
      if (sgn(c_[i]) != 0) s += c_[i] * b[k - i];
    b[k] = -inv0 * s;
  }
  return TruncatedSeries(std::move(b));
}

TruncatedSeries TruncatedSeries::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  TruncatedSeries result = constant(1, order());
  TruncatedSeries base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

TruncatedSeries TruncatedSeries::pow(const Q& e) const {
  if (e.get_den() == 1 && e.get_num().fits_sint_p()) return pow(static_cast<int>(e.get_num().get_si()));
  if (c_.empty()) return *this;
  if (c_[0] != 1) throw std::domain_error("rational power of a series needs constant term 1");
  const int n = order();
  std::vector<Q> b(c_.size());
  b[0] = 1;
  for (int k = 1; k <= n; ++k) {
    Q s = 0;
    for (int i = 1; i <= k; ++i)
      if (sgn(c_[i]) != 0) s += ((e + 1) * i - k) * c_[i] * b[k - i];
    b[k] = s / k;
  }
  return TruncatedSeries(std::move(b));
}

TruncatedSeries TruncatedSeries::exp() const {
  if (c_.empty()) return *this;
  if (sgn(c_[0]) != 0) throw std::domain_error("exp needs a series with zero constant term");
  const int n = order();
  std::vector<Q> b(c_.size());
  b[0] = 1;
  for (int k = 1; k <= n; ++k) {
    Q s = 0;
    for (int i = 1; i <= k; ++i)
      if (sgn(c_[i]) != 0) s += c_[i] * b[k - i] * i;
    b[k] = s / k;
  }
  return TruncatedSeries(std::move(b));
}

TruncatedSeries TruncatedSeries::compose(const TruncatedSeries& inner) const {
  if (inner.order() >= 0 && sgn(inner[0]) != 0)
    throw std::invalid_argument("compose needs an inner series with zero constant term");
  const int n = std::min(order(), inner.order());
  if (n < 0) return TruncatedSeries();
  TruncatedSeries g = inner.truncate(n);
  TruncatedSeries r = constant(c_[static_cast<std::size_t>(n)], n);
  for (int k = n - 1; k >= 0; --k) {
    r = r * g;
    r[0] += c_[static_cast<std::size_t>(k)];
  }
  return r;
}

TruncatedSeries TruncatedSeries::reversion() const {
  const int n = order();
  if (n < 1) throw std::invalid_argument("reversion needs order >= 1");
  if (sgn(c_[0]) != 0 || sgn(c_[1]) == 0)
    throw std::domain_error("reversion needs c0 = 0 and c1 != 0");
  // powers[j][k] = [τ^k] G^j
  std::vector<std::vector<Q>> powers(static_cast<std::size_t>(n + 1), std::vector<Q>(c_.size()));
  std::vector<Q>& g = powers[1];
  g[1] = 1 / c_[1];
  for (int k = 2; k <= n; ++k) {
    Q s = 0;
    for (int j = 2; j <= k; ++j) {
      Q pk = 0;
      for (int i = 1; i <= k - j + 1; ++i) pk += g[i] * powers[j - 1][k - i];
      powers[j][k] = pk;
      s += c_[j] * pk;
    }
    g[k] = -s / c_[1];
  }
  return TruncatedSeries(g);
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  c_.resize(std::min(c_.size(), o.c_.size()));
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  c_.resize(std::min(c_.size(), o.c_.size()));
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Q& s) {
  for (auto& c : c_) c *= s;
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t n = std::min(a.c_.size(), b.c_.size());
  std::vector<Q> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j)
      if (sgn(b.c_[j]) != 0) r[i + j] += a.c_[i] * b.c_[j];
  }
  return TruncatedSeries(std::move(r));
}

TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) {
  const int n = std::min(a.order(), b.order());
  if (n < 0) return TruncatedSeries();
  if (sgn(b[0]) == 0) throw std::domain_error("division by a series with zero constant term");
  return a.truncate(n) * b.truncate(n).inverse();
}

// ---------------------------------------------------------------------------

MatrixSeries::MatrixSeries(std::size_t m, int order)
    : m_(m), c_(static_cast<std::size_t>(std::max(order + 1, 0)), Matrix(m, m)) {}

MatrixSeries::MatrixSeries(std::vector<Matrix> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) throw std::invalid_argument("MatrixSeries needs at least one coefficient to fix the size");
  m_ = c_[0].rows();
  for (const auto& c : c_)
    if (c.rows() != m_ || c.cols() != m_) throw std::invalid_argument("MatrixSeries coefficients must be square of equal size");
}

MatrixSeries MatrixSeries::identity(std::size_t m, int order) {
  MatrixSeries r(m, order);
  if (order >= 0) r.c_[0] = Matrix::identity(m);
  return r;
}

MatrixSeries MatrixSeries::scalar(const TruncatedSeries& s, std::size_t m) {
  MatrixSeries r(m, s.order());
  for (int k = 0; k <= s.order(); ++k)
    for (std::size_t i = 0; i < m; ++i) r.c_[static_cast<std::size_t>(k)](i, i) = s[k];
  return r;
}

MatrixSeries MatrixSeries::from_entries(const std::vector<std::vector<TruncatedSeries>>& e) {
  const std::size_t m = e.size();
  int order = -1;
  bool first = true;
  for (const auto& row : e) {
    if (row.size() != m) throw std::invalid_argument("MatrixSeries::from_entries: not square");
    for (const auto& s : row) {
      order = first ? s.order() : std::min(order, s.order());
      first = false;
    }
  }
  MatrixSeries r(m, order);
  for (int k = 0; k <= order; ++k)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) r.c_[static_cast<std::size_t>(k)](i, j) = e[i][j][k];
  return r;
}

TruncatedSeries MatrixSeries::entry(std::size_t i, std::size_t j) const {
  std::vector<Q> c;
  for (const auto& mk : c_) c.push_back(mk(i, j));
  return TruncatedSeries(std::move(c));
}

TruncatedSeries MatrixSeries::trace() const {
  std::vector<Q> c;
  for (const auto& mk : c_) c.push_back(mk.trace());
  return TruncatedSeries(std::move(c));
}

MatrixSeries MatrixSeries::truncate(int order) const {
  if (order > this->order()) throw std::invalid_argument("MatrixSeries::truncate: cannot raise the order");
  MatrixSeries r(m_, order);
  for (int k = 0; k <= order; ++k) r.c_[static_cast<std::size_t>(k)] = c_[static_cast<std::size_t>(k)];
  return r;
}

bool MatrixSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Matrix& m) { return m.is_zero(); });
}

MatrixSeries MatrixSeries::derivative() const {
  MatrixSeries r(m_, order() - 1);
  for (int k = 1; k <= order(); ++k) r.c_[static_cast<std::size_t>(k - 1)] = Q(k) * c_[static_cast<std::size_t>(k)];
  return r;
}

MatrixSeries MatrixSeries::antiderivative() const {
  MatrixSeries r(m_, order() + 1);
  for (int k = 0; k <= order(); ++k) r.c_[static_cast<std::size_t>(k + 1)] = Q(1, k + 1) * c_[static_cast<std::size_t>(k)];
  return r;
}

MatrixSeries MatrixSeries::inverse() const {
  const int n = order();
  if (n < 0) return *this;
  MatrixSeries b(m_, n);
  Matrix b0 = c_[0].inverse();
  b.c_[0] = b0;
  for (int k = 1; k <= n; ++k) {
    Matrix s(m_, m_);
    for (int i = 1; i <= k; ++i) {
      if (c_[static_cast<std::size_t>(i)].is_zero()) continue;
      s += c_[static_cast<std::size_t>(i)] * b.c_[static_cast<std::size_t>(k - i)];
    }
    b.c_[static_cast<std::size_t>(k)] = Q(-1) * (b0 * s);
  }
  return b;
}

MatrixSeries MatrixSeries::compose(const TruncatedSeries& inner) const {
  if (inner.order() >= 0 && sgn(inner[0]) != 0)
    throw std::invalid_argument("compose needs an inner series with zero constant term");
  const int n = std::min(order(), inner.order());
  if (n < 0) return MatrixSeries(m_, -1);
  TruncatedSeries g = inner.truncate(n);
  MatrixSeries r(m_, n);
  r.c_[0] = c_[static_cast<std::size_t>(n)];
  for (int k = n - 1; k >= 0; --k) {
    r = g * r;
    r.c_[0] += c_[static_cast<std::size_t>(k)];
  }
  return r;
}

MatrixSeries& MatrixSeries::operator+=(const MatrixSeries& o) {
  if (m_ != o.m_) throw std::invalid_argument("MatrixSeries sum: size mismatch");
  c_.resize(std::min(c_.size(), o.c_.size()));
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

MatrixSeries& MatrixSeries::operator-=(const MatrixSeries& o) {
  if (m_ != o.m_) throw std::invalid_argument("MatrixSeries difference: size mismatch");
  c_.resize(std::min(c_.size(), o.c_.size()));
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

MatrixSeries operator*(const MatrixSeries& a, const MatrixSeries& b) {
  if (a.m_ != b.m_) throw std::invalid_argument("MatrixSeries product: size mismatch");
  const int n = std::min(a.order(), b.order());
  MatrixSeries r(a.m_, n);
  for (int i = 0; i <= n; ++i) {
    const Matrix& ai = a.c_[static_cast<std::size_t>(i)];
    if (ai.is_zero()) continue;
    for (int j = 0; i + j <= n; ++j) r.c_[static_cast<std::size_t>(i + j)] += ai * b.c_[static_cast<std::size_t>(j)];
  }
  return r;
}

MatrixSeries operator*(const TruncatedSeries& s, const MatrixSeries& a) {
  const int n = std::min(s.order(), a.order());
  MatrixSeries r(a.m_, n);
  for (int i = 0; i <= n; ++i) {
    if (sgn(s[i]) == 0) continue;
    for (int j = 0; i + j <= n; ++j) r.c_[static_cast<std::size_t>(i + j)] += s[i] * a.c_[static_cast<std::size_t>(j)];
  }
  return r;
}

MatrixSeries operator*(const Q& s, MatrixSeries a) {
  for (auto& c : a.c_) c *= s;
  return a;
}

}  // namespace cclass
