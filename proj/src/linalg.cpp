#include "cclass/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace cclass {

SparseVec SparseVec::from_dense(const DenseVec& v) {
  SparseVec r;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) r.entries_.emplace_back(i, v[i]);
  return r;
}

SparseVec SparseVec::unit(std::size_t index, const Q& value) {
  SparseVec r;
  if (sgn(value) != 0) r.entries_.emplace_back(index, value);
  return r;
}

DenseVec SparseVec::to_dense(std::size_t dim) const {
  DenseVec r(dim);
  for (const auto& [i, c] : entries_) {
    if (i >= dim) throw std::out_of_range("SparseVec::to_dense: index beyond dimension");
    r[i] = c;
  }
  return r;
}

void SparseVec::push_back(std::size_t index, const Q& value) {
  if (!entries_.empty() && entries_.back().first >= index)
    throw std::logic_error("SparseVec::push_back: indices must increase");
  if (sgn(value) != 0) entries_.emplace_back(index, value);
}

Q SparseVec::get(std::size_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::size_t i) { return e.first < i; });
  if (it != entries_.end() && it->first == index) return it->second;
  return 0;
}

SparseVec& SparseVec::add_scaled(const Q& a, const SparseVec& x) {
  if (sgn(a) == 0 || x.empty()) return *this;
  if (&x == this) {
    SparseVec copy = x;
    return add_scaled(a, copy);
  }
  std::vector<Entry> out;
  out.reserve(entries_.size() + x.entries_.size());
  auto i = entries_.begin();
  auto j = x.entries_.begin();
  while (i != entries_.end() || j != x.entries_.end()) {
    if (j == x.entries_.end() || (i != entries_.end() && i->first < j->first)) {
      out.push_back(std::move(*i));
      ++i;
    } else if (i == entries_.end() || j->first < i->first) {
      out.emplace_back(j->first, a * j->second);
      ++j;
    } else {
      Q s = i->second + a * j->second;
      if (sgn(s) != 0) out.emplace_back(i->first, std::move(s));
      ++i;
      ++j;
    }
  }
  entries_ = std::move(out);
  return *this;
}

SparseVec& SparseVec::scale(const Q& a) {
  if (sgn(a) == 0) {
    entries_.clear();
    return *this;
  }
  for (auto& e : entries_) e.second *= a;
  return *this;
}

bool operator==(const SparseVec& a, const SparseVec& b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t k = 0; k < a.entries_.size(); ++k)
    if (a.entries_[k].first != b.entries_[k].first || a.entries_[k].second != b.entries_[k].second)
      return false;
  return true;
}

void SparseAccumulator::add(std::size_t index, const Q& value) {
  if (sgn(value) == 0) return;
  auto [it, fresh] = acc_.try_emplace(index, value);
  if (!fresh) it->second += value;
}

SparseVec SparseAccumulator::take() {
  SparseVec r;
  for (auto& [i, c] : acc_)
    if (sgn(c) != 0) r.push_back(i, c);
  acc_.clear();
  return r;
}

Q dot(const SparseVec& a, const DenseVec& b) {
  Q s = 0;
  for (const auto& [i, c] : a) s += c * b[i];
  return s;
}

Q dot(const SparseVec& a, const SparseVec& b) {
  Q s = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      s += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return s;
}

bool is_zero(const DenseVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Q& q) { return sgn(q) == 0; });
}

// ---------------------------------------------------------------------------

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

SparseMatrix::SparseMatrix(std::size_t rows, std::vector<SparseVec> columns)
    : rows_(rows), columns_(std::move(columns)) {
  for (const auto& c : columns_)
    if (!c.empty() && c.back().first >= rows_)
      throw std::out_of_range("SparseMatrix: column entry beyond row count");
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

DenseVec SparseMatrix::apply(const DenseVec& x) const {
  if (x.size() != cols()) throw std::invalid_argument("SparseMatrix::apply: size mismatch");
  DenseVec y(rows_);
  for (std::size_t j = 0; j < cols(); ++j) {
    if (sgn(x[j]) == 0) continue;
    for (const auto& [i, c] : columns_[j]) y[i] += c * x[j];
  }
  return y;
}

SparseVec SparseMatrix::apply(const SparseVec& x) const {
  SparseAccumulator acc;
  for (const auto& [j, xj] : x) {
    if (j >= cols()) throw std::invalid_argument("SparseMatrix::apply: index beyond columns");
    for (const auto& [i, c] : columns_[j]) acc.add(i, c * xj);
  }
  return acc.take();
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<SparseVec> cols(rows_);
  for (std::size_t j = 0; j < columns_.size(); ++j)
    for (const auto& [i, c] : columns_[j]) cols[i].push_back(j, c);
  return SparseMatrix(columns_.size(), std::move(cols));
}

bool SparseMatrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(), [](const SparseVec& c) { return c.empty(); });
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("SparseMatrix product: shape mismatch");
  std::vector<SparseVec> cols(b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) cols[j] = a.apply(b.column(j));
  return SparseMatrix(a.rows(), std::move(cols));
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("SparseMatrix sum: shape mismatch");
  std::vector<SparseVec> cols(a.columns_);
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] += b.column(j);
  return SparseMatrix(a.rows(), std::move(cols));
}

SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("SparseMatrix difference: shape mismatch");
  std::vector<SparseVec> cols(a.columns_);
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] -= b.column(j);
  return SparseMatrix(a.rows(), std::move(cols));
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  return a.rows_ == b.rows_ && a.columns_ == b.columns_;
}

// ---------------------------------------------------------------------------

Echelon::Echelon(std::size_t dim, bool track) : dim_(dim), track_(track), pivot_row_(dim, -1) {}

void Echelon::reduce(SparseVec& v, SparseVec* comb) const {
  std::size_t from = 0;
  for (;;) {
    auto it = std::find_if(v.begin(), v.end(), [&](const SparseVec::Entry& e) {
      return e.first >= from && pivot_row_[e.first] >= 0;
    });
    if (it == v.end()) return;
    const Row& row = rows_[static_cast<std::size_t>(pivot_row_[it->first])];
    Q coef = -it->second;
    from = it->first + 1;
    v.add_scaled(coef, row.v);
    if (comb) comb->add_scaled(coef, row.comb);
  }
}

bool Echelon::insert(const SparseVec& v) {
  if (!v.empty() && v.back().first >= dim_) throw std::out_of_range("Echelon::insert: index beyond dimension");
  std::size_t tag = inserted_++;
  SparseVec r = v;
  SparseVec comb;
  if (track_) comb = SparseVec::unit(tag);
  reduce(r, track_ ? &comb : nullptr);
  if (r.empty()) {
    if (track_) dependencies_.push_back(std::move(comb));
    return false;
  }
  Q inv = 1 / r.front().second;
  r.scale(inv);
  if (track_) comb.scale(inv);
  pivot_row_[r.front().first] = static_cast<int>(rows_.size());
  rows_.push_back(Row{std::move(r), std::move(comb)});
  independent_.push_back(tag);
  return true;
}

bool Echelon::contains(const SparseVec& v) const {
  SparseVec r = v;
  reduce(r, nullptr);
  return r.empty();
}

std::optional<SparseVec> Echelon::express(const SparseVec& v) const {
  if (!track_) throw std::logic_error("Echelon::express needs tracking");
  SparseVec r = v;
  SparseVec comb;
  reduce(r, &comb);
  if (!r.empty()) return std::nullopt;
  // r = v - Σ rows, and each row is comb·inputs, so v = -comb·inputs.
  comb.scale(-1);
  return comb;
}

std::size_t rank(const SparseMatrix& m) {
  Echelon e(m.rows(), false);
  for (const auto& c : m.columns()) e.insert(c);
  return e.rank();
}

std::vector<SparseVec> kernel_basis(const SparseMatrix& m) {
  Echelon e(m.rows(), true);
  for (const auto& c : m.columns()) e.insert(c);
  return e.dependencies();
}

// ---------------------------------------------------------------------------

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Q Matrix::trace() const {
  if (rows_ != cols_) throw std::invalid_argument("trace of a non-square matrix");
  Q s = 0;
  for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
  return s;
}

bool Matrix::is_zero() const { return cclass::is_zero(data_); }

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = rows_;
  Matrix a = *this;
  Matrix inv = identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(a(piv, col)) == 0) ++piv;
    if (piv == n) throw std::domain_error("singular matrix");
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    Q s = 1 / a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= s;
      inv(col, j) *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || sgn(a(i, col)) == 0) continue;
      Q f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

std::size_t Matrix::rank() const {
  Echelon e(rows_, false);
  for (std::size_t j = 0; j < cols_; ++j) {
    SparseVec c;
    for (std::size_t i = 0; i < rows_; ++i) c.push_back(i, (*this)(i, j));
    e.insert(c);
  }
  return e.rank();
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix sum: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix difference: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(const Q& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix product: shape mismatch");
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Q& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

DenseVec operator*(const Matrix& a, const DenseVec& v) {
  if (a.cols_ != v.size()) throw std::invalid_argument("Matrix-vector product: shape mismatch");
  DenseVec r(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
  return r;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

SparseMatrix restrict_to_coords(const SparseMatrix& m, const std::vector<std::size_t>& idx) {
  std::vector<long> pos(m.rows(), -1);
  for (std::size_t k = 0; k < idx.size(); ++k) pos[idx[k]] = static_cast<long>(k);
  std::vector<SparseVec> cols;
  for (auto j : idx) {
    SparseAccumulator acc;
    for (const auto& [i, c] : m.column(j)) {
      if (pos[i] < 0) throw std::invalid_argument("restrict_to_coords: subspace is not invariant");
      acc.add(static_cast<std::size_t>(pos[i]), c);
    }
    cols.push_back(acc.take());
  }
  return SparseMatrix(idx.size(), std::move(cols));
}

}  // namespace cclass
