#include "cclass/liealg.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace cclass {

std::vector<std::size_t> OdeStructure::q() const {
  std::vector<std::size_t> r{x, h, y};
  r.insert(r.end(), gl.begin(), gl.end());
  std::sort(r.begin(), r.end());
  return r;
}

std::vector<std::size_t> OdeStructure::p() const {
  std::vector<std::size_t> r{h, y};
  r.insert(r.end(), gl.begin(), gl.end());
  std::sort(r.begin(), r.end());
  return r;
}

std::vector<std::size_t> OdeStructure::gminus() const {
  std::vector<std::size_t> r{x};
  r.insert(r.end(), a.begin(), a.end());
  std::sort(r.begin(), r.end());
  return r;
}

// ---------------------------------------------------------------------------

struct LieAlgebraTable::Cache {
  std::mutex mu;
  std::map<std::string, std::shared_ptr<const void>> items;
};

LieAlgebraTable::Builder::Builder(std::vector<std::string> labels)
    : labels_(std::move(labels)), c_(labels_.size() * labels_.size()) {}

LieAlgebraTable::Builder& LieAlgebraTable::Builder::set(std::size_t i, std::size_t j, const SparseVec& v) {
  set_raw(i, j, v);
  set_raw(j, i, Q(-1) * v);
  return *this;
}

LieAlgebraTable::Builder& LieAlgebraTable::Builder::set_raw(std::size_t i, std::size_t j, const SparseVec& v) {
  const std::size_t d = labels_.size();
  if (i >= d || j >= d || (!v.empty() && v.back().first >= d))
    throw std::out_of_range("LieAlgebraTable::Builder: index out of range");
  c_[i * d + j] = v;
  return *this;
}

LieAlgebraTable::Builder& LieAlgebraTable::Builder::grading(std::vector<int> degrees) {
  if (degrees.size() != labels_.size()) throw std::invalid_argument("grading size mismatch");
  grading_ = std::move(degrees);
  return *this;
}

LieAlgebraTable::Builder& LieAlgebraTable::Builder::gram(std::vector<Q> diagonal) {
  if (diagonal.size() != labels_.size()) throw std::invalid_argument("gram size mismatch");
  for (const auto& g : diagonal)
    if (sgn(g) <= 0) throw std::invalid_argument("gram must be positive definite");
  gram_ = std::move(diagonal);
  return *this;
}

LieAlgebraTable::Builder& LieAlgebraTable::Builder::ode(OdeStructure s) {
  ode_ = std::move(s);
  return *this;
}

LieAlgebraTable::Builder& LieAlgebraTable::Builder::grading_element(DenseVec z) {
  if (z.size() != labels_.size()) throw std::invalid_argument("grading element size mismatch");
  z_ = std::move(z);
  return *this;
}

AlgebraPtr LieAlgebraTable::Builder::build() const {
  return AlgebraPtr(new LieAlgebraTable(*this));
}

LieAlgebraTable::LieAlgebraTable(const Builder& b)
    : labels_(b.labels_),
      c_(b.c_),
      preimage_(b.labels_.size()),
      grading_(b.grading_),
      gram_(b.gram_),
      ode_(b.ode_),
      z_(b.z_),
      cache_(std::make_shared<Cache>()) {
  const std::size_t d = dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (const auto& [t, c] : c_[i * d + j]) preimage_[t].push_back({i, j, c});
}

int LieAlgebraTable::degree(std::size_t i) const {
  if (!grading_) throw std::logic_error("algebra has no grading");
  return (*grading_)[i];
}

const Q& LieAlgebraTable::gram_diagonal(std::size_t i) const {
  if (!gram_) throw std::logic_error("algebra has no gram matrix");
  return (*gram_)[i];
}

const OdeStructure& LieAlgebraTable::require_ode() const {
  if (!ode_) throw std::logic_error("algebra is not an ODE model algebra g(m,n)");
  return *ode_;
}

AlgebraPtr LieAlgebraTable::with_raw_bracket(std::size_t i, std::size_t j, const SparseVec& v) const {
  Builder b(labels_);
  b.c_ = c_;
  b.grading_ = grading_;
  b.gram_ = gram_;
  b.ode_ = ode_;
  b.z_ = z_;
  b.set_raw(i, j, v);
  return b.build();
}

AlgebraPtr LieAlgebraTable::permuted(const std::vector<std::size_t>& perm) const {
  const std::size_t d = dim();
  if (perm.size() != d) throw std::invalid_argument("permutation size mismatch");
  std::vector<std::size_t> inv(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    if (perm[k] >= d || inv[perm[k]] != d) throw std::invalid_argument("not a permutation");
    inv[perm[k]] = k;
  }
  auto remap = [&](const SparseVec& v) {
    SparseAccumulator acc;
    for (const auto& [t, c] : v) acc.add(inv[t], c);
    return acc.take();
  };
  std::vector<std::string> labels(d);
  for (std::size_t k = 0; k < d; ++k) labels[k] = labels_[perm[k]];
  Builder b(labels);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) b.c_[k * d + l] = remap(c_[perm[k] * d + perm[l]]);
  if (grading_) {
    std::vector<int> g(d);
    for (std::size_t k = 0; k < d; ++k) g[k] = (*grading_)[perm[k]];
    b.grading_ = g;
  }
  if (gram_) {
    std::vector<Q> g(d);
    for (std::size_t k = 0; k < d; ++k) g[k] = (*gram_)[perm[k]];
    b.gram_ = g;
  }
  if (z_) {
    DenseVec z(d);
    for (std::size_t k = 0; k < d; ++k) z[k] = (*z_)[perm[k]];
    b.z_ = z;
  }
  if (ode_) {
    OdeStructure s = *ode_;
    s.x = inv[s.x];
    s.h = inv[s.h];
    s.y = inv[s.y];
    for (auto& i : s.gl) i = inv[i];
    for (auto& i : s.a) i = inv[i];
    b.ode_ = s;
  }
  return b.build();
}

std::shared_ptr<const void> LieAlgebraTable::cached(
    const std::string& key, const std::function<std::shared_ptr<const void>()>& make) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->items.find(key);
    if (it != cache_->items.end()) return it->second;
  }
  auto value = make();
  std::lock_guard<std::mutex> lock(cache_->mu);
  return cache_->items.try_emplace(key, std::move(value)).first->second;
}

// ---------------------------------------------------------------------------

AlgebraElement AlgebraElement::zero(const AlgebraPtr& alg) { return {alg, DenseVec(alg->dim())}; }

AlgebraElement AlgebraElement::basis(const AlgebraPtr& alg, std::size_t i, const Q& c) {
  AlgebraElement e = zero(alg);
  e.coords.at(i) = c;
  return e;
}

bool AlgebraElement::is_zero() const { return cclass::is_zero(coords); }

static void require_same(const AlgebraElement& a, const AlgebraElement& b) {
  if (!a.algebra || a.algebra != b.algebra) throw std::invalid_argument("elements of different algebras");
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  require_same(*this, o);
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  require_same(*this, o);
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
  return *this;
}

AlgebraElement operator*(const Q& s, AlgebraElement a) {
  for (auto& c : a.coords) c *= s;
  return a;
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
  return a.algebra == b.algebra && a.coords == b.coords;
}

// ---------------------------------------------------------------------------

AlgebraPtr build_ode_algebra(int m, int n) {
  if (m <= 0) throw std::invalid_argument("g(m,n) needs m >= 1");
  if (n <= 1) throw std::invalid_argument("g(m,n) needs n >= 2");
  OdeStructure s;
  s.m = m;
  s.n = n;
  s.outside_main_theorems = (m == 1 && n == 2);
  std::vector<std::string> labels{"X", "H", "Y"};
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      s.gl.push_back(labels.size());
      labels.push_back("e^" + std::to_string(a + 1) + "_" + std::to_string(b + 1));
    }
  for (int i = 0; i <= n; ++i)
    for (int b = 0; b < m; ++b) {
      s.a.push_back(labels.size());
      labels.push_back("v^" + std::to_string(i) + "_" + std::to_string(b + 1));
    }
  const std::size_t d = labels.size();

  LieAlgebraTable::Builder builder(labels);
  auto set = [&](std::size_t i, std::size_t j, std::vector<std::pair<std::size_t, Q>> terms) {
    SparseAccumulator acc;
    for (auto& [t, c] : terms) acc.add(t, c);
    builder.set(i, j, acc.take());
  };
  set(s.h, s.x, {{s.x, 2}});
  set(s.h, s.y, {{s.y, -2}});
  set(s.x, s.y, {{s.h, 1}});
  for (int i = 0; i <= n; ++i)
    for (int b = 0; b < m; ++b) {
      const std::size_t v = s.v(i, b);
      if (i > 0) set(s.x, v, {{s.v(i - 1, b), 1}});
      set(s.h, v, {{v, n - 2 * i}});
      if (i < n) set(s.y, v, {{s.v(i + 1, b), Q((n - i) * (i + 1))}});
      for (int a = 0; a < m; ++a) set(s.e(a, b), s.v(i, a), {{s.v(i, b), 1}});
    }
  // e^a_b is the matrix unit E_{ba}: [e^a_b, e^c_d] = δ^a_d e^c_b − δ^c_b e^a_d
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int dd = 0; dd < m; ++dd) {
          std::size_t i = s.e(a, b), j = s.e(c, dd);
          if (i >= j) continue;
          std::vector<std::pair<std::size_t, Q>> terms;
          if (a == dd) terms.emplace_back(s.e(c, b), 1);
          if (c == b) terms.emplace_back(s.e(a, dd), -1);
          set(i, j, terms);
        }

  std::vector<int> grading(d, 0);
  std::vector<Q> gram(d, 1);
  grading[s.x] = -1;
  grading[s.y] = 1;
  gram[s.h] = 2;
  for (int i = 0; i <= n; ++i)
    for (int b = 0; b < m; ++b) {
      grading[s.v(i, b)] = i - n - 1;
      gram[s.v(i, b)] = factorial(n - i) / factorial(i);
    }
  DenseVec z(d);
  z[s.h] = Q(-1, 2);
  for (int a = 0; a < m; ++a) z[s.e(a, a)] = -(1 + Q(n, 2));
  builder.grading(grading).gram(gram).ode(s).grading_element(z);
  return builder.build();
}

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  require_same(x, y);
  const auto& alg = *x.algebra;
  AlgebraElement r = AlgebraElement::zero(x.algebra);
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    if (sgn(x.coords[i]) == 0) continue;
    for (std::size_t j = 0; j < alg.dim(); ++j) {
      if (sgn(y.coords[j]) == 0) continue;
      Q f = x.coords[i] * y.coords[j];
      for (const auto& [t, c] : alg.bracket(i, j)) r.coords[t] += f * c;
    }
  }
  return r;
}

Q inner_product(const AlgebraElement& x, const AlgebraElement& y) {
  require_same(x, y);
  const auto& alg = *x.algebra;
  if (!alg.gram()) throw std::logic_error("algebra has no gram matrix");
  Q s = 0;
  for (std::size_t i = 0; i < alg.dim(); ++i) s += x.coords[i] * y.coords[i] * alg.gram_diagonal(i);
  return s;
}

AlgebraElement transpose_on_q(const AlgebraElement& a) {
  const auto& s = a.algebra->require_ode();
  for (std::size_t i : s.a)
    if (sgn(a.coords[i]) != 0) throw std::invalid_argument("transpose_on_q: element has an a-component");
  AlgebraElement r = AlgebraElement::zero(a.algebra);
  r.coords[s.y] = a.coords[s.x];
  r.coords[s.x] = a.coords[s.y];
  r.coords[s.h] = a.coords[s.h];
  for (int i = 0; i < s.m; ++i)
    for (int j = 0; j < s.m; ++j) r.coords[s.e(j, i)] = a.coords[s.e(i, j)];
  return r;
}

SparseMatrix ad_matrix(const AlgebraElement& x) {
  const auto& alg = *x.algebra;
  std::vector<SparseVec> cols(alg.dim());
  for (std::size_t j = 0; j < alg.dim(); ++j) {
    SparseVec col;
    for (std::size_t i = 0; i < alg.dim(); ++i)
      if (sgn(x.coords[i]) != 0) col.add_scaled(x.coords[i], alg.bracket(i, j));
    cols[j] = std::move(col);
  }
  return SparseMatrix(alg.dim(), std::move(cols));
}

LieAxiomsVerdict verify_lie_axioms(const LieAlgebraTable& alg) {
  const std::size_t d = alg.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j)
      if (!(alg.bracket(i, j) + alg.bracket(j, i)).empty()) return {false, "antisymmetry", {i, j, j}};
  if (alg.grading())
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        for (const auto& [t, c] : alg.bracket(i, j))
          if (alg.degree(t) != alg.degree(i) + alg.degree(j)) return {false, "grading", {i, j, t}};
  auto ad = [&](std::size_t i, const SparseVec& v) {
    SparseVec r;
    for (const auto& [t, c] : v) r.add_scaled(c, alg.bracket(i, t));
    return r;
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k) {
        SparseVec s = ad(i, alg.bracket(j, k));
        s += ad(j, alg.bracket(k, i));
        s += ad(k, alg.bracket(i, j));
        if (!s.empty()) return {false, "jacobi", {i, j, k}};
      }
  return {};
}

IsotypicDecomposition sl2_decompose(const SparseMatrix& x, const SparseMatrix& h, const SparseMatrix& y) {
  const std::size_t n = h.rows();
  for (const SparseMatrix* m : {&x, &h, &y})
    if (m->rows() != n || m->cols() != n) throw std::invalid_argument("sl2_decompose: matrices must be square of equal size");
  auto scaled = [](const SparseMatrix& m, const Q& s) {
    std::vector<SparseVec> cols = m.columns();
    for (auto& c : cols) c.scale(s);
    return SparseMatrix(m.rows(), std::move(cols));
  };
  if (!(h * x - x * h == scaled(x, 2)) || !(h * y - y * h == scaled(y, -2)) || !(x * y - y * x == h))
    throw std::invalid_argument("sl2_decompose: sl2 relations violated");

  bool diagonal = true;
  for (std::size_t j = 0; j < n && diagonal; ++j)
    for (const auto& [i, c] : h.column(j))
      if (i != j) diagonal = false;

  std::map<int, std::vector<SparseVec>> weight_spaces;
  std::size_t found = 0;
  if (diagonal) {
    for (std::size_t j = 0; j < n; ++j) {
      Q w = h.column(j).get(j);
      if (w.get_den() != 1 || !w.get_num().fits_sint_p()) throw std::invalid_argument("sl2_decompose: non-integer H-spectrum");
      weight_spaces[static_cast<int>(w.get_num().get_si())].push_back(SparseVec::unit(j));
      ++found;
    }
  } else {
    const int bound = static_cast<int>(n);
    for (int w = -bound; w <= bound; ++w) {
      std::vector<SparseVec> cols = h.columns();
      for (std::size_t j = 0; j < n; ++j) cols[j].add_scaled(-w, SparseVec::unit(j));
      auto ker = kernel_basis(SparseMatrix(n, std::move(cols)));
      found += ker.size();
      if (!ker.empty()) weight_spaces[w] = std::move(ker);
    }
    if (found != n) throw std::invalid_argument("sl2_decompose: non-integer or non-diagonalizable H-spectrum");
  }

  IsotypicDecomposition out;
  out.module_dim = n;
  std::size_t total = 0;
  for (const auto& [w, basis] : weight_spaces) {
    if (w < 0) continue;
    Echelon e(n, true);
    for (const auto& b : basis) e.insert(x.apply(b));
    const auto& deps = e.dependencies();
    std::size_t above = weight_spaces.count(w + 2) ? weight_spaces.at(w + 2).size() : 0;
    if (deps.size() != basis.size() - above) throw std::invalid_argument("sl2_decompose: inconsistent weight multiplicities");
    if (deps.empty()) continue;
    out.multiplicities[w] = static_cast<int>(deps.size());
    total += deps.size() * static_cast<std::size_t>(w + 1);
    for (const auto& dep : deps) {
      SparseVec v;
      for (const auto& [k, c] : dep) v.add_scaled(c, basis[k]);
      out.highest_weight_vectors.emplace_back(w, v.to_dense(n));
    }
  }
  if (total != n) throw std::invalid_argument("sl2_decompose: summands do not fill the module");
  return out;
}

nlohmann::json table_to_json(const LieAlgebraTable& alg) {
  using nlohmann::json;
  json j;
  j["dim"] = alg.dim();
  j["labels"] = alg.labels();
  j["grading"] = alg.grading() ? json(*alg.grading()) : json(nullptr);
  if (alg.gram()) {
    json g = json::array();
    for (const auto& q : *alg.gram()) g.push_back(to_string(q));
    j["gram_diagonal"] = g;
  } else {
    j["gram_diagonal"] = nullptr;
  }
  json br = json::array();
  for (std::size_t i = 0; i < alg.dim(); ++i)
    for (std::size_t k = i + 1; k < alg.dim(); ++k) {
      const auto& v = alg.bracket(i, k);
      if (v.empty()) continue;
      json coeffs = json::array();
      for (const auto& [t, c] : v) coeffs.push_back(json::array({t, to_string(c)}));
      br.push_back(json::array({i, k, coeffs}));
    }
  j["brackets"] = br;
  if (alg.ode()) {
    j["m"] = alg.ode()->m;
    j["n"] = alg.ode()->n;
    j["outside_main_theorems"] = alg.ode()->outside_main_theorems;
  }
  if (alg.grading_element()) {
    json z = json::array();
    for (const auto& q : *alg.grading_element()) z.push_back(to_string(q));
    j["grading_element"] = z;
  }
  return j;
}

}  // namespace cclass
