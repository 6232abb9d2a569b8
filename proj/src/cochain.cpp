#include "cclass/cochain.hpp"

#include <algorithm>
#include <stdexcept>

namespace cclass {

std::string to_string(ComplexTag tag) {
  switch (tag) {
    case ComplexTag::full: return "full";
    case ComplexTag::a_coeff: return "a_coeff";
    case ComplexTag::gminus: return "gminus";
    case ComplexTag::horizontal: return "horizontal";
  }
  return "?";
}

ComplexTag complex_tag_from_string(const std::string& s) {
  for (auto t : {ComplexTag::full, ComplexTag::a_coeff, ComplexTag::gminus, ComplexTag::horizontal})
    if (to_string(t) == s) return t;
  throw std::invalid_argument("unknown complex tag: " + s);
}

std::vector<std::size_t> domain_indices(const LieAlgebraTable& alg, ComplexTag tag) {
  switch (tag) {
    case ComplexTag::full: {
      std::vector<std::size_t> r(alg.dim());
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = i;
      return r;
    }
    case ComplexTag::a_coeff: {
      auto r = alg.require_ode().a;
      std::sort(r.begin(), r.end());
      return r;
    }
    case ComplexTag::gminus:
    case ComplexTag::horizontal: return alg.require_ode().gminus();
  }
  return {};
}

// ---------------------------------------------------------------------------

WedgeBasis::WedgeBasis(std::vector<std::size_t> domain, std::size_t algebra_dim, int k)
    : domain_(std::move(domain)), k_(k), position_(algebra_dim, -1) {
  for (std::size_t p = 0; p < domain_.size(); ++p) {
    if (domain_[p] >= algebra_dim || (p > 0 && domain_[p] <= domain_[p - 1]))
      throw std::invalid_argument("WedgeBasis: domain must be sorted algebra indices");
    position_[domain_[p]] = static_cast<long>(p);
  }
  const std::size_t d = domain_.size();
  if (k < 0 || static_cast<std::size_t>(k) > d) return;
  const std::size_t kk = static_cast<std::size_t>(k);
  binom_.assign(d + 1, std::vector<std::size_t>(kk + 1, 0));
  for (std::size_t a = 0; a <= d; ++a) {
    binom_[a][0] = 1;
    for (std::size_t b = 1; b <= kk && b <= a; ++b)
      binom_[a][b] = binom_[a - 1][b - 1] + (b <= a - 1 ? binom_[a - 1][b] : 0);
  }
  std::vector<std::size_t> pos(kk);
  for (std::size_t i = 0; i < kk; ++i) pos[i] = i;
  for (;;) {
    std::vector<std::size_t> t(kk);
    for (std::size_t i = 0; i < kk; ++i) t[i] = domain_[pos[i]];
    tuples_.push_back(std::move(t));
    std::size_t i = kk;
    while (i > 0 && pos[i - 1] == d - kk + (i - 1)) --i;
    if (i == 0) break;
    ++pos[i - 1];
    for (std::size_t j = i; j < kk; ++j) pos[j] = pos[j - 1] + 1;
  }
}

std::size_t WedgeBasis::rank_of(const std::vector<std::size_t>& tuple) const {
  const std::size_t d = domain_.size();
  const std::size_t kk = tuple.size();
  if (static_cast<int>(kk) != k_) throw std::invalid_argument("WedgeBasis::rank_of: wrong tuple length");
  std::size_t rank = 0;
  long prev = -1;
  for (std::size_t p = 0; p < kk; ++p) {
    long c = tuple[p] < position_.size() ? position_[tuple[p]] : -1;
    if (c <= prev) throw std::invalid_argument("WedgeBasis::rank_of: tuple not increasing within the domain");
    for (long v = prev + 1; v < c; ++v) rank += binom_[d - 1 - static_cast<std::size_t>(v)][kk - 1 - p];
    prev = c;
  }
  return rank;
}

// ---------------------------------------------------------------------------

std::shared_ptr<const CochainSpace> CochainSpace::get(const AlgebraPtr& alg, ComplexTag tag, int degree) {
  std::string key = "space:" + to_string(tag) + ":" + std::to_string(degree);
  auto p = alg->cached(key, [&]() -> std::shared_ptr<const void> {
    return std::make_shared<const CochainSpace>(*alg, tag, degree);
  });
  return std::static_pointer_cast<const CochainSpace>(p);
}

CochainSpace::CochainSpace(const LieAlgebraTable& alg, ComplexTag tag, int degree)
    : tag_(tag), gdim_(alg.dim()), wedge_(domain_indices(alg, tag), alg.dim(), degree) {
  if (alg.gram()) {
    gram_.reserve(dim());
    for (std::size_t r = 0; r < wedge_.size(); ++r) {
      Q inv = 1;
      for (std::size_t i : wedge_.tuple(r)) inv /= alg.gram_diagonal(i);
      for (std::size_t j = 0; j < gdim_; ++j) gram_.push_back(inv * alg.gram_diagonal(j));
    }
  }
  if (alg.grading()) {
    homogeneity_.reserve(dim());
    for (std::size_t r = 0; r < wedge_.size(); ++r) {
      int s = 0;
      for (std::size_t i : wedge_.tuple(r)) s += alg.degree(i);
      for (std::size_t j = 0; j < gdim_; ++j) homogeneity_.push_back(alg.degree(j) - s);
    }
  }
}

const Q& CochainSpace::gram(std::size_t coord) const {
  if (gram_.empty()) throw std::logic_error("cochain space has no inner product (algebra lacks a gram matrix)");
  return gram_[coord];
}

int CochainSpace::homogeneity(std::size_t coord) const {
  if (homogeneity_.empty()) throw std::logic_error("cochain space has no grading");
  return homogeneity_[coord];
}

// ---------------------------------------------------------------------------

Cochain::Cochain(AlgebraPtr alg, ComplexTag tag, int degree)
    : alg_(std::move(alg)), space_(CochainSpace::get(alg_, tag, degree)), coords_(space_->dim()) {}

Cochain::Cochain(AlgebraPtr alg, ComplexTag tag, int degree, DenseVec coords)
    : alg_(std::move(alg)), space_(CochainSpace::get(alg_, tag, degree)), coords_(std::move(coords)) {
  if (coords_.size() != space_->dim()) throw std::invalid_argument("Cochain: coordinate count mismatch");
}

Cochain Cochain::basis(const AlgebraPtr& alg, ComplexTag tag, int degree, std::size_t coord) {
  Cochain c(alg, tag, degree);
  c.coords_.at(coord) = 1;
  return c;
}

static void require_same_space(const Cochain& a, const Cochain& b) {
  if (a.algebra() != b.algebra() || a.tag() != b.tag() || a.degree() != b.degree())
    throw std::invalid_argument("cochains live in different spaces");
}

Cochain& Cochain::operator+=(const Cochain& o) {
  require_same_space(*this, o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

Cochain& Cochain::operator-=(const Cochain& o) {
  require_same_space(*this, o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

Cochain operator*(const Q& s, Cochain a) {
  for (auto& c : a.coords_) c *= s;
  return a;
}

bool operator==(const Cochain& a, const Cochain& b) {
  return a.alg_ == b.alg_ && a.tag() == b.tag() && a.degree() == b.degree() && a.coords_ == b.coords_;
}

std::vector<Cochain> wedge_basis(const AlgebraPtr& alg, int k, ComplexTag tag) {
  if (k < 0) throw std::invalid_argument("wedge_basis: negative degree");
  auto space = CochainSpace::get(alg, tag, k);
  std::vector<Cochain> out;
  out.reserve(space->dim());
  for (std::size_t c = 0; c < space->dim(); ++c) out.push_back(Cochain::basis(alg, tag, k, c));
  return out;
}

// ---------------------------------------------------------------------------

static Q determinant(std::vector<Q> a, std::size_t n) {
  Q det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(a[piv * n + col]) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[col * n + j]);
      det = -det;
    }
    det *= a[col * n + col];
    for (std::size_t i = col + 1; i < n; ++i) {
      if (sgn(a[i * n + col]) == 0) continue;
      Q f = a[i * n + col] / a[col * n + col];
      for (std::size_t j = col; j < n; ++j) a[i * n + j] -= f * a[col * n + j];
    }
  }
  return det;
}

AlgebraElement evaluate(const Cochain& phi, const std::vector<AlgebraElement>& args) {
  const auto k = static_cast<std::size_t>(phi.degree());
  if (args.size() != k) throw std::invalid_argument("evaluate: argument count does not match the degree");
  for (const auto& a : args)
    if (a.algebra != phi.algebra()) throw std::invalid_argument("evaluate: argument from another algebra");
  const auto& sp = phi.space();
  AlgebraElement out = AlgebraElement::zero(phi.algebra());
  std::vector<Q> m(k * k);
  for (std::size_t r = 0; r < sp.wedge().size(); ++r) {
    const auto& tuple = sp.wedge().tuple(r);
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t q = 0; q < k; ++q) m[p * k + q] = args[q].coords[tuple[p]];
    Q det = determinant(m, k);
    if (sgn(det) == 0) continue;
    for (std::size_t j = 0; j < sp.algebra_dim(); ++j) {
      const Q& c = phi.coords()[sp.index(r, j)];
      if (sgn(c) != 0) out.coords[j] += det * c;
    }
  }
  return out;
}

Q inner_product(const Cochain& a, const Cochain& b) {
  require_same_space(a, b);
  const auto& sp = a.space();
  Q s = 0;
  for (std::size_t i = 0; i < sp.dim(); ++i)
    if (sgn(a.coords()[i]) != 0 && sgn(b.coords()[i]) != 0) s += sp.gram(i) * a.coords()[i] * b.coords()[i];
  return s;
}

// ---------------------------------------------------------------------------

namespace {

/// Sorts a short tuple in place and returns the sign of the sorting permutation.
int sort_with_sign(std::vector<std::size_t>& t) {
  int sign = 1;
  for (std::size_t i = 1; i < t.size(); ++i)
    for (std::size_t j = i; j > 0 && t[j - 1] > t[j]; --j) {
      std::swap(t[j - 1], t[j]);
      sign = -sign;
    }
  return sign;
}

bool contains(const std::vector<std::size_t>& t, std::size_t x) {
  return std::find(t.begin(), t.end(), x) != t.end();
}

/// Column of the Chevalley–Eilenberg differential for the basis cochain ω^I ⊗ b_j.
SparseVec push_basis(const LieAlgebraTable& alg, const CochainSpace& src, const CochainSpace& dst,
                     std::size_t r, std::size_t j) {
  const auto& I = src.wedge().tuple(r);
  const auto& dom = src.wedge().domain();
  SparseAccumulator acc;
  std::vector<std::size_t> J;
  // (−1)^p [x_p, φ(... x̂_p ...)]
  for (std::size_t s : dom) {
    if (contains(I, s)) continue;
    const SparseVec& br = alg.bracket(s, j);
    if (br.empty()) continue;
    J = I;
    auto it = std::lower_bound(J.begin(), J.end(), s);
    std::size_t p = static_cast<std::size_t>(it - J.begin());
    J.insert(it, s);
    std::size_t rank = dst.wedge().rank_of(J);
    Q sign = (p % 2) ? -1 : 1;
    for (const auto& [t, c] : br) acc.add(dst.index(rank, t), sign * c);
  }
  // (−1)^{p+q} φ([x_p, x_q], ...)
  for (std::size_t rpos = 0; rpos < I.size(); ++rpos) {
    std::size_t t = I[rpos];
    std::vector<std::size_t> z = I;
    z.erase(z.begin() + static_cast<long>(rpos));
    for (const auto& term : alg.preimage(t)) {
      if (!src.wedge().in_domain(term.i) || !src.wedge().in_domain(term.j)) continue;
      if (contains(z, term.i) || contains(z, term.j)) continue;
      J = z;
      J.push_back(term.i);
      J.push_back(term.j);
      std::sort(J.begin(), J.end());
      std::size_t p = static_cast<std::size_t>(std::find(J.begin(), J.end(), term.i) - J.begin());
      std::size_t q = static_cast<std::size_t>(std::find(J.begin(), J.end(), term.j) - J.begin());
      Q sign = ((p + q + rpos) % 2) ? -1 : 1;
      acc.add(dst.index(dst.wedge().rank_of(J), j), sign * term.coeff);
    }
  }
  return acc.take();
}

void require_ce_tag(ComplexTag tag) {
  if (tag == ComplexTag::horizontal)
    throw std::invalid_argument("horizontal forms do not form a complex under d_g; embed into the full complex");
}

}  // namespace

std::shared_ptr<const SparseMatrix> differential_matrix(const AlgebraPtr& alg, ComplexTag tag, int k) {
  require_ce_tag(tag);
  if (k < -1) throw std::invalid_argument("differential_matrix: degree below -1");
  std::string key = "d:" + to_string(tag) + ":" + std::to_string(k);
  auto p = alg->cached(key, [&]() -> std::shared_ptr<const void> {
    auto src = CochainSpace::get(alg, tag, k);
    auto dst = CochainSpace::get(alg, tag, k + 1);
    std::vector<SparseVec> cols(src->dim());
    for (std::size_t r = 0; r < src->wedge().size(); ++r)
      for (std::size_t j = 0; j < src->algebra_dim(); ++j)
        cols[src->index(r, j)] = push_basis(*alg, *src, *dst, r, j);
    return std::make_shared<const SparseMatrix>(dst->dim(), std::move(cols));
  });
  return std::static_pointer_cast<const SparseMatrix>(p);
}

std::shared_ptr<const SparseMatrix> codifferential_matrix(const AlgebraPtr& alg, ComplexTag tag, int k) {
  if (k < 0) throw std::invalid_argument("codifferential_matrix: negative degree");
  std::string key = "dstar:" + to_string(tag) + ":" + std::to_string(k);
  auto p = alg->cached(key, [&]() -> std::shared_ptr<const void> {
    ComplexTag ce = tag == ComplexTag::horizontal ? ComplexTag::full : tag;
    auto m = differential_matrix(alg, ce, k - 1);
    auto big_out = CochainSpace::get(alg, ce, k - 1);
    auto big_in = CochainSpace::get(alg, ce, k);
    auto out = CochainSpace::get(alg, tag, k - 1);
    auto in = CochainSpace::get(alg, tag, k);
    // coordinate maps big -> tagged space (identity unless horizontal)
    auto coord_map = [&](const CochainSpace& big, const CochainSpace& small) {
      std::vector<long> map(big.dim(), -1);
      for (std::size_t r = 0; r < small.wedge().size(); ++r) {
        std::size_t br = big.wedge().rank_of(small.wedge().tuple(r));
        for (std::size_t j = 0; j < small.algebra_dim(); ++j)
          map[big.index(br, j)] = static_cast<long>(small.index(r, j));
      }
      return map;
    };
    auto row_map = coord_map(*big_in, *in);
    auto col_map = coord_map(*big_out, *out);
    std::vector<SparseVec> cols(in->dim());
    for (std::size_t c = 0; c < m->cols(); ++c)
      for (const auto& [row, val] : m->column(c)) {
        long hr = row_map[row];
        if (hr < 0) continue;
        long hc = col_map[c];
        if (hc < 0) throw std::logic_error("codifferential does not preserve horizontal forms");
        cols[static_cast<std::size_t>(hr)].push_back(static_cast<std::size_t>(hc),
                                                     val * big_in->gram(row) / big_out->gram(c));
      }
    return std::make_shared<const SparseMatrix>(out->dim(), std::move(cols));
  });
  return std::static_pointer_cast<const SparseMatrix>(p);
}

SparseMatrix action_matrix(const AlgebraElement& z, ComplexTag tag, int k) {
  const auto& alg = *z.algebra;
  auto sp = CochainSpace::get(z.algebra, tag, k);
  const auto& W = sp->wedge();
  SparseMatrix adz = ad_matrix(z);
  if (tag == ComplexTag::gminus)
    for (std::size_t s : W.domain())
      for (const auto& [i, c] : adz.column(s))
        if (!W.in_domain(i)) throw std::invalid_argument("action on C(g₋,g) needs an element normalizing g₋");
  if (tag == ComplexTag::horizontal) {
    auto p = alg.require_ode().p();
    for (std::size_t i = 0; i < alg.dim(); ++i)
      if (sgn(z.coords[i]) != 0 && !std::binary_search(p.begin(), p.end(), i))
        throw std::invalid_argument("action on horizontal forms needs an element of p");
  }
  // z·ω^i = −Σ_s ω^i([z, b_s]) ω^s
  std::vector<std::vector<std::pair<std::size_t, Q>>> dual(alg.dim());
  for (std::size_t s : W.domain())
    for (const auto& [i, c] : adz.column(s))
      if (W.in_domain(i)) dual[i].emplace_back(s, c);
  std::vector<SparseVec> cols(sp->dim());
  std::vector<std::size_t> J;
  for (std::size_t r = 0; r < W.size(); ++r) {
    const auto& I = W.tuple(r);
    for (std::size_t j = 0; j < alg.dim(); ++j) {
      SparseAccumulator acc;
      for (const auto& [t, c] : adz.column(j)) acc.add(sp->index(r, t), c);
      for (std::size_t p = 0; p < I.size(); ++p)
        for (const auto& [s, c] : dual[I[p]]) {
          if (s != I[p] && contains(I, s)) continue;
          J = I;
          J[p] = s;
          int sign = sort_with_sign(J);
          acc.add(sp->index(W.rank_of(J), j), -c * sign);
        }
      cols[sp->index(r, j)] = acc.take();
    }
  }
  return SparseMatrix(sp->dim(), std::move(cols));
}

// ---------------------------------------------------------------------------

static Cochain apply_differential(const Cochain& phi, ComplexTag tag) {
  auto m = differential_matrix(phi.algebra(), tag, phi.degree());
  return Cochain(phi.algebra(), tag, phi.degree() + 1, m->apply(phi.coords()));
}

Cochain d_g(const Cochain& phi) {
  if (phi.tag() != ComplexTag::full) throw std::invalid_argument("d_g needs a cochain on g");
  return apply_differential(phi, ComplexTag::full);
}

Cochain d_a(const Cochain& phi) {
  if (phi.tag() != ComplexTag::a_coeff) throw std::invalid_argument("d_a needs a cochain on a");
  return apply_differential(phi, ComplexTag::a_coeff);
}

Cochain d_gminus(const Cochain& phi) {
  if (phi.tag() != ComplexTag::gminus) throw std::invalid_argument("d_gminus needs a cochain on g₋");
  return apply_differential(phi, ComplexTag::gminus);
}

static void require_split(const SplitCochain& s) {
  if (s.phi1.tag() != ComplexTag::a_coeff || s.phi2.tag() != ComplexTag::a_coeff)
    throw std::invalid_argument("split cochain components must be cochains on a");
  if (s.phi1.degree() + 1 != s.phi2.degree()) throw std::invalid_argument("split cochain degree mismatch");
  if (s.phi1.algebra() != s.phi2.algebra()) throw std::invalid_argument("split cochain algebra mismatch");
}

SplitCochain d_gminus(const SplitCochain& s) {
  require_split(s);
  const auto& alg = s.phi2.algebra();
  auto x = AlgebraElement::basis(alg, alg->require_ode().x);
  Cochain first = act(x, s.phi2) - d_a(s.phi1);
  return {first, d_a(s.phi2)};
}

Cochain dstar(const Cochain& psi) {
  if (psi.degree() < 1) throw std::invalid_argument("dstar needs degree >= 1");
  auto m = codifferential_matrix(psi.algebra(), psi.tag(), psi.degree());
  return Cochain(psi.algebra(), psi.tag(), psi.degree() - 1, m->apply(psi.coords()));
}

SplitCochain dstar_block(const SplitCochain& s) {
  require_split(s);
  if (s.phi2.degree() < 1) throw std::invalid_argument("dstar_block needs degree >= 1");
  const auto& alg = s.phi2.algebra();
  auto y = AlgebraElement::basis(alg, alg->require_ode().y);
  auto m1 = codifferential_matrix(alg, ComplexTag::a_coeff, s.phi1.degree());
  Cochain first(alg, ComplexTag::a_coeff, s.phi1.degree() - 1, m1->apply(s.phi1.coords()));
  Cochain second = dstar(s.phi2) + act(y, s.phi1);
  return {Q(-1) * first, second};
}

Cochain act(const AlgebraElement& z, const Cochain& phi) {
  if (z.algebra != phi.algebra()) throw std::invalid_argument("act: element from another algebra");
  if (phi.degree() < 0) return phi;
  SparseMatrix m = action_matrix(z, phi.tag(), phi.degree());
  return Cochain(phi.algebra(), phi.tag(), phi.degree(), m.apply(phi.coords()));
}

SplitCochain split(const Cochain& phi) {
  if (phi.tag() != ComplexTag::gminus && phi.tag() != ComplexTag::horizontal)
    throw std::invalid_argument("split needs a cochain on g₋ or a horizontal form");
  const auto& alg = phi.algebra();
  const std::size_t x = alg->require_ode().x;
  const int k = phi.degree();
  Cochain phi1(alg, ComplexTag::a_coeff, k - 1);
  Cochain phi2(alg, ComplexTag::a_coeff, k);
  const auto& sp = phi.space();
  for (std::size_t r = 0; r < sp.wedge().size(); ++r) {
    auto I = sp.wedge().tuple(r);
    auto it = std::find(I.begin(), I.end(), x);
    for (std::size_t j = 0; j < sp.algebra_dim(); ++j) {
      const Q& c = phi.coords()[sp.index(r, j)];
      if (sgn(c) == 0) continue;
      if (it == I.end()) {
        phi2.coords()[phi2.space().index(phi2.space().wedge().rank_of(I), j)] = c;
      } else {
        auto pos = it - I.begin();
        std::vector<std::size_t> rest = I;
        rest.erase(rest.begin() + pos);
        phi1.coords()[phi1.space().index(phi1.space().wedge().rank_of(rest), j)] = (pos % 2) ? Q(-c) : c;
      }
    }
  }
  return {phi1, phi2};
}

Cochain assemble(const SplitCochain& s, ComplexTag tag) {
  require_split(s);
  if (tag != ComplexTag::gminus && tag != ComplexTag::horizontal)
    throw std::invalid_argument("assemble targets cochains on g₋ or horizontal forms");
  const auto& alg = s.phi2.algebra();
  const std::size_t x = alg->require_ode().x;
  Cochain out(alg, tag, s.phi2.degree());
  const auto& sp = out.space();
  for (std::size_t r = 0; r < sp.wedge().size(); ++r) {
    auto I = sp.wedge().tuple(r);
    auto it = std::find(I.begin(), I.end(), x);
    for (std::size_t j = 0; j < sp.algebra_dim(); ++j) {
      Q c;
      if (it == I.end()) {
        c = s.phi2.coords()[s.phi2.space().index(s.phi2.space().wedge().rank_of(I), j)];
      } else {
        auto pos = it - I.begin();
        std::vector<std::size_t> rest = I;
        rest.erase(rest.begin() + pos);
        c = s.phi1.coords()[s.phi1.space().index(s.phi1.space().wedge().rank_of(rest), j)];
        if (pos % 2) c = -c;
      }
      out.coords()[sp.index(r, j)] = c;
    }
  }
  return out;
}

Cochain homogeneous_component(const Cochain& phi, int ell) {
  Cochain out = phi;
  const auto& sp = phi.space();
  for (std::size_t i = 0; i < sp.dim(); ++i)
    if (sp.homogeneity(i) != ell) out.coords()[i] = 0;
  return out;
}

std::set<int> homogeneities(const CochainSpace& space) {
  std::set<int> s;
  for (std::size_t i = 0; i < space.dim(); ++i) s.insert(space.homogeneity(i));
  return s;
}

std::vector<std::size_t> homogeneous_coords(const CochainSpace& space, int ell) {
  std::vector<std::size_t> r;
  for (std::size_t i = 0; i < space.dim(); ++i)
    if (space.homogeneity(i) == ell) r.push_back(i);
  return r;
}

Cochain laplacian_box(const Cochain& phi) {
  if (phi.tag() != ComplexTag::gminus) throw std::invalid_argument("laplacian_box needs a cochain on g₋");
  Cochain out = dstar(d_gminus(phi));
  if (phi.degree() >= 1) out += d_gminus(dstar(phi));
  return out;
}

Cochain retag(const Cochain& phi, ComplexTag tag) {
  if (domain_indices(*phi.algebra(), tag) != domain_indices(*phi.algebra(), phi.tag()))
    throw std::invalid_argument("retag needs tags with the same domain");
  return Cochain(phi.algebra(), tag, phi.degree(), phi.coords());
}

Cochain embed_in_full(const Cochain& phi) {
  Cochain out(phi.algebra(), ComplexTag::full, phi.degree());
  const auto& sp = phi.space();
  const auto& fs = out.space();
  for (std::size_t r = 0; r < sp.wedge().size(); ++r) {
    std::size_t fr = fs.wedge().rank_of(sp.wedge().tuple(r));
    for (std::size_t j = 0; j < sp.algebra_dim(); ++j) out.coords()[fs.index(fr, j)] = phi.coords()[sp.index(r, j)];
  }
  return out;
}

Cochain restrict_from_full(const Cochain& phi, ComplexTag tag) {
  if (phi.tag() != ComplexTag::full) throw std::invalid_argument("restrict_from_full needs a cochain on g");
  Cochain out(phi.algebra(), tag, phi.degree());
  const auto& sp = out.space();
  const auto& fs = phi.space();
  for (std::size_t r = 0; r < sp.wedge().size(); ++r) {
    std::size_t fr = fs.wedge().rank_of(sp.wedge().tuple(r));
    for (std::size_t j = 0; j < sp.algebra_dim(); ++j) out.coords()[sp.index(r, j)] = phi.coords()[fs.index(fr, j)];
  }
  return out;
}

nlohmann::json to_json(const Cochain& phi) {
  using nlohmann::json;
  json terms = json::array();
  const auto& sp = phi.space();
  for (std::size_t i = 0; i < sp.dim(); ++i) {
    const Q& c = phi.coords()[i];
    if (sgn(c) == 0) continue;
    terms.push_back({{"indices", sp.wedge().tuple(sp.tuple_rank(i))},
                     {"value_basis", sp.value(i)},
                     {"coeff", to_string(c)}});
  }
  return {{"tag", to_string(phi.tag())}, {"degree", phi.degree()}, {"terms", terms}};
}

}  // namespace cclass
