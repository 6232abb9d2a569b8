#include "cclass/models.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <stdexcept>

namespace cclass {

using nlohmann::json;

std::string to_string(Rank2Type t) {
  switch (t) {
    case Rank2Type::A2: return "A2";
    case Rank2Type::C2: return "C2";
    case Rank2Type::G2: return "G2";
  }
  return "";
}

Rank2Type rank2_type_from_string(const std::string& s) {
  std::string l;
  for (char c : s) l += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (l == "a2") return Rank2Type::A2;
  if (l == "c2") return Rank2Type::C2;
  if (l == "g2") return Rank2Type::G2;
  throw std::invalid_argument("unknown model type '" + s + "' (expected a2, c2 or g2)");
}

std::array<std::array<int, 2>, 2> expected_cartan(Rank2Type type) {
  switch (type) {
    case Rank2Type::A2: return {{{2, -1}, {-1, 2}}};
    case Rank2Type::C2: return {{{2, -1}, {-2, 2}}};
    case Rank2Type::G2: return {{{2, -1}, {-3, 2}}};
  }
  return {};
}

std::size_t Rank2Model::root_index(const Root& r) const {
  for (std::size_t i = 2; i < roots.size(); ++i)
    if (roots[i] == r) return i;
  throw std::invalid_argument("not a root");
}

namespace {

Matrix unit_matrix(std::size_t N, std::size_t i, std::size_t j, const Q& c = 1) {
  Matrix a(N, N);
  a(i, j) = c;
  return a;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

SparseVec flatten(const Matrix& a) {
  SparseVec v;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (sgn(a(i, j)) != 0) v.push_back(i * a.cols() + j, a(i, j));
  return v;
}

struct Generators {
  std::size_t N;
  Matrix e1, e2, f1, f2;
};

Generators generators(Rank2Type type) {
  auto E = [](std::size_t N, std::size_t i, std::size_t j) { return unit_matrix(N, i, j); };
  switch (type) {
    case Rank2Type::A2: return {3, E(3, 0, 1), E(3, 1, 2), E(3, 1, 0), E(3, 2, 1)};
    case Rank2Type::C2:
      // sp₄ preserving the form with antidiagonal (1, 1, -1, -1).
      return {4, E(4, 0, 1) - E(4, 3, 2), E(4, 1, 3), E(4, 1, 0) - E(4, 2, 3), E(4, 3, 1)};
    case Rank2Type::G2: {
      const std::size_t N = 7;
      Matrix e1 = E(N, 0, 1) + Q(2) * E(N, 2, 3) + E(N, 3, 4) + E(N, 5, 6);
      Matrix e2 = E(N, 1, 2) + E(N, 4, 5);
      Matrix f1 = E(N, 1, 0) + E(N, 3, 2) + Q(2) * E(N, 4, 3) + E(N, 6, 5);
      Matrix f2 = E(N, 2, 1) + E(N, 5, 4);
      return {N, e1, e2, f1, f2};
    }
  }
  throw std::invalid_argument("unknown model type");
}

std::map<Root, Matrix> root_vectors(const Matrix& g1, const Matrix& g2, int sign) {
  std::map<Root, Matrix> out;
  std::deque<Root> queue;
  out[{sign, 0}] = g1;
  out[{0, sign}] = g2;
  queue.push_back({sign, 0});
  queue.push_back({0, sign});
  while (!queue.empty()) {
    Root r = queue.front();
    queue.pop_front();
    for (int i = 0; i < 2; ++i) {
      Matrix y = commutator(i == 0 ? g1 : g2, out.at(r));
      if (y.is_zero()) continue;
      Root nr = r;
      nr[static_cast<std::size_t>(i)] += sign;
      if (out.count(nr)) continue;
      out[nr] = y;
      queue.push_back(nr);
    }
  }
  return out;
}

std::string root_label(const Root& r) {
  bool neg = r[0] < 0 || r[1] < 0;
  return std::string(neg ? "f[" : "e[") + std::to_string(std::abs(r[0])) + "," + std::to_string(std::abs(r[1])) + "]";
}

}  // namespace

Rank2Model build_rank2(Rank2Type type) {
  const Generators gen = generators(type);
  auto pos = root_vectors(gen.e1, gen.e2, 1);
  auto neg = root_vectors(gen.f1, gen.f2, -1);
  auto order = [](const std::map<Root, Matrix>& roots) {
    std::vector<Root> rs;
    for (const auto& kv : roots) rs.push_back(kv.first);
    std::sort(rs.begin(), rs.end(), [](const Root& a, const Root& b) {
      int ha = std::abs(a[0] + a[1]), hb = std::abs(b[0] + b[1]);
      if (ha != hb) return ha < hb;
      return std::abs(a[0]) > std::abs(b[0]);
    });
    return rs;
  };

  Rank2Model model;
  model.type = type;
  std::vector<std::string> labels{"h1", "h2"};
  model.roots = {{0, 0}, {0, 0}};
  model.realization = {commutator(gen.e1, gen.f1), commutator(gen.e2, gen.f2)};
  for (const auto& r : order(pos)) {
    labels.push_back(root_label(r));
    model.roots.push_back(r);
    model.realization.push_back(pos.at(r));
  }
  for (const auto& r : order(neg)) {
    labels.push_back(root_label(r));
    model.roots.push_back(r);
    model.realization.push_back(neg.at(r));
  }
  const std::size_t dim = labels.size();
  Echelon basis(gen.N * gen.N, true);
  for (const auto& a : model.realization)
    if (!basis.insert(flatten(a))) throw std::logic_error("build_rank2: realization basis is dependent");

  LieAlgebraTable::Builder builder(labels);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      auto c = basis.express(flatten(commutator(model.realization[i], model.realization[j])));
      if (!c) throw std::logic_error("build_rank2: bracket leaves the span");
      builder.set(i, j, *c);
    }
  }
  model.algebra = builder.build();
  model.h1 = 0;
  model.h2 = 1;
  model.e1 = model.root_index({1, 0});
  model.e2 = model.root_index({0, 1});
  model.f1 = model.root_index({-1, 0});
  model.f2 = model.root_index({0, -1});
  const std::array<std::size_t, 2> e{model.e1, model.e2}, h{model.h1, model.h2};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      Q c = model.algebra->bracket(h[j], e[i]).get(e[i]);
      model.cartan[i][j] = static_cast<int>(c.get_num().get_si());
    }
  return model;
}

PrincipalTriple principal_sl2(const Rank2Model& model) {
  const auto& alg = model.algebra;
  Matrix C(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) C(i, j) = model.cartan[i][j];
  // Z_k = Σ_j x_j h_j with α_i(Z_k) = δ_ik, so x = C⁻¹ e_k and H = 2 C⁻¹ (1,1).
  const Matrix Cinv = C.inverse();
  const Q a = 2 * (Cinv(0, 0) + Cinv(0, 1));
  const Q b = 2 * (Cinv(1, 0) + Cinv(1, 1));
  PrincipalTriple t{AlgebraElement::basis(alg, model.e1) + AlgebraElement::basis(alg, model.e2),
                    AlgebraElement::basis(alg, model.h1, a) + AlgebraElement::basis(alg, model.h2, b),
                    AlgebraElement::basis(alg, model.f1, a) + AlgebraElement::basis(alg, model.f2, b),
                    {a, b},
                    {},
                    false};
  switch (model.type) {
    case Rank2Type::A2: t.reference_y_coefficients = {Q(2, 3), Q(1, 3)}; break;
    case Rank2Type::C2: t.reference_y_coefficients = {Q(1), Q(1)}; break;
    case Rank2Type::G2: t.reference_y_coefficients = {Q(2), Q(3)}; break;
  }
  t.relations_hold = bracket(t.H, t.X) == Q(2) * t.X && bracket(t.H, t.Y) == Q(-2) * t.Y && bracket(t.X, t.Y) == t.H;
  if (!t.relations_hold) throw std::logic_error("principal_sl2: no Y in span{f1, f2} completes the triple");
  return t;
}

PrincipalDecomposition principal_decompose(const Rank2Model& model) {
  PrincipalDecomposition d;
  d.triple = principal_sl2(model);
  d.adjoint = sl2_decompose(ad_matrix(d.triple.X), ad_matrix(d.triple.H), ad_matrix(d.triple.Y));
  if (d.adjoint.multiplicities.size() != 2 || d.adjoint.multiplicities.count(2) != 1 ||
      d.adjoint.multiplicities.begin()->second != 1 || d.adjoint.multiplicities.rbegin()->second != 1)
    throw std::logic_error("principal_decompose: adjoint action is not V_2 + V_n");
  d.n = d.adjoint.multiplicities.rbegin()->first;
  // Lowest root: negative root of greatest height.
  std::size_t lowest = 2;
  for (std::size_t i = 2; i < model.roots.size(); ++i) {
    const Root& r = model.roots[i];
    if (r[0] + r[1] < model.roots[lowest][0] + model.roots[lowest][1]) lowest = i;
  }
  d.v.assign(static_cast<std::size_t>(d.n) + 1, AlgebraElement::zero(model.algebra));
  d.v[static_cast<std::size_t>(d.n)] = AlgebraElement::basis(model.algebra, lowest);
  for (int i = d.n; i >= 1; --i) d.v[static_cast<std::size_t>(i - 1)] = bracket(d.triple.X, d.v[static_cast<std::size_t>(i)]);
  Echelon e(model.algebra->dim(), false);
  bool independent = e.insert(SparseVec::from_dense(d.triple.X.coords)) &&
                     e.insert(SparseVec::from_dense(d.triple.H.coords)) &&
                     e.insert(SparseVec::from_dense(d.triple.Y.coords));
  for (const auto& v : d.v) independent = independent && e.insert(SparseVec::from_dense(v.coords));
  d.direct_sum = independent && e.rank() == model.algebra->dim();
  return d;
}

AlgebraElement AlphaMap::apply(const AlgebraElement& x) const {
  DenseVec c = matrix.apply(x.coords);
  return AlgebraElement{g, std::move(c)};
}

AlgebraElement AlphaMap::inverse(const AlgebraElement& u) const {
  const auto& ode = g->require_ode();
  for (auto i : ode.gl)
    if (sgn(u.coords[i]) != 0) throw std::invalid_argument("alpha inverse: element has a gl component");
  AlgebraElement r = AlgebraElement::zero(s);
  r += u.coords[ode.x] * adapted[0];
  r += u.coords[ode.h] * adapted[1];
  r += u.coords[ode.y] * adapted[2];
  for (int i = 0; i <= n; ++i) r += u.coords[ode.v(i, 0)] * adapted[static_cast<std::size_t>(3 + i)];
  return r;
}

AlphaMap embed_alpha(const Rank2Model& model, const PrincipalDecomposition& dec) {
  AlphaMap a;
  a.s = model.algebra;
  a.n = dec.n;
  a.g = build_ode_algebra(1, dec.n);
  const auto& ode = a.g->require_ode();
  a.adapted = {dec.triple.X, dec.triple.H, dec.triple.Y};
  for (const auto& v : dec.v) a.adapted.push_back(v);
  const std::size_t dim = a.s->dim();
  if (a.adapted.size() != dim) throw std::logic_error("embed_alpha: adapted basis has the wrong size");
  std::vector<std::size_t> target{ode.x, ode.h, ode.y};
  std::vector<int> degree{-1, 0, 1};
  for (int i = 0; i <= dec.n; ++i) {
    target.push_back(ode.v(i, 0));
    degree.push_back(i - dec.n - 1);
  }
  Matrix A(dim, dim);
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t j = 0; j < dim; ++j) A(j, k) = a.adapted[k].coords[j];
  const Matrix Ainv = A.inverse();
  std::vector<SparseVec> cols(dim);
  a.filtration.assign(dim, 0);
  for (std::size_t j = 0; j < dim; ++j) {
    SparseAccumulator acc;
    int f = 1000;
    for (std::size_t k = 0; k < dim; ++k) {
      if (sgn(Ainv(k, j)) == 0) continue;
      acc.add(target[k], Ainv(k, j));
      f = std::min(f, degree[k]);
    }
    cols[j] = acc.take();
    a.filtration[j] = f;
  }
  a.matrix = SparseMatrix(a.g->dim(), std::move(cols));
  a.equivariant = true;
  for (std::size_t w = 0; w < 3 && a.equivariant; ++w)
    for (std::size_t j = 0; j < dim && a.equivariant; ++j) {
      AlgebraElement x = AlgebraElement::basis(a.s, j);
      if (!(a.apply(bracket(a.adapted[w], x)) == bracket(a.apply(a.adapted[w]), a.apply(x)))) a.equivariant = false;
    }
  return a;
}

TrivialSummandReport trivial_summand_analysis(const Cochain& phi) {
  if (phi.tag() != ComplexTag::horizontal || phi.degree() != 2)
    throw std::invalid_argument("trivial_summand_analysis needs a horizontal 2-cochain");
  const auto& g = phi.algebra();
  const auto& ode = g->require_ode();
  if (ode.m != 1) throw std::invalid_argument("trivial_summand_analysis needs g(1,n)");
  SplitCochain sp = split(phi);
  if (!sp.phi1.is_zero()) throw std::invalid_argument("trivial_summand_analysis needs i_X phi = 0");
  const Cochain& k2 = sp.phi2;
  const CochainSpace& space = k2.space();
  const auto X = action_matrix(AlgebraElement::basis(g, ode.x), ComplexTag::a_coeff, 2);
  const auto H = action_matrix(AlgebraElement::basis(g, ode.h), ComplexTag::a_coeff, 2);
  const auto Y = action_matrix(AlgebraElement::basis(g, ode.y), ComplexTag::a_coeff, 2);

  TrivialSummandReport rep;
  rep.kappa_norm2 = 0;
  for (std::size_t c = 0; c < space.dim(); ++c) rep.kappa_norm2 += k2.coords()[c] * k2.coords()[c] * space.gram(c);

  const std::vector<std::pair<std::string, std::vector<std::size_t>>> parts{
      {"a", ode.a}, {"sl2", {ode.x, ode.h, ode.y}}, {"gl1", ode.gl}};
  Q total = 0;
  for (const auto& [name, values] : parts) {
    std::vector<bool> in(g->dim(), false);
    for (auto v : values) in[v] = true;
    std::vector<std::size_t> idx;
    for (std::size_t c = 0; c < space.dim(); ++c)
      if (in[space.value(c)]) idx.push_back(c);
    auto dec = sl2_decompose(restrict_to_coords(X, idx), restrict_to_coords(H, idx),
                             restrict_to_coords(Y, idx));
    SummandProjection p;
    p.values = name;
    p.trivial_multiplicity = dec.multiplicities.count(0) ? dec.multiplicities.at(0) : 0;
    p.projection_norm2 = 0;
    std::vector<const DenseVec*> B;
    for (const auto& [w, v] : dec.highest_weight_vectors)
      if (w == 0) B.push_back(&v);
    if (!B.empty()) {
      const std::size_t k = B.size();
      Matrix M(k, k);
      DenseVec r(k);
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t l = 0; l < idx.size(); ++l) {
          const Q gl = space.gram(idx[l]);
          r[a] += (*B[a])[l] * gl * k2.coords()[idx[l]];
          for (std::size_t b = 0; b < k; ++b) M(a, b) += (*B[a])[l] * gl * (*B[b])[l];
        }
      }
      DenseVec sol = M.inverse() * r;
      for (std::size_t a = 0; a < k; ++a) p.projection_norm2 += sol[a] * r[a];
    }
    total += p.projection_norm2;
    rep.parts.push_back(std::move(p));
  }
  rep.in_trivial_sum = total == rep.kappa_norm2;
  return rep;
}

CurvatureReport model_curvature(const Rank2Model& model) {
  const PrincipalDecomposition dec = principal_decompose(model);
  const AlphaMap alpha = embed_alpha(model, dec);
  const auto& g = alpha.g;
  Cochain kappa(g, ComplexTag::horizontal, 2);
  const CochainSpace& space = kappa.space();
  for (std::size_t r = 0; r < space.wedge().size(); ++r) {
    const auto& tup = space.wedge().tuple(r);
    AlgebraElement u = AlgebraElement::basis(g, tup[0]), w = AlgebraElement::basis(g, tup[1]);
    AlgebraElement val = alpha.apply(bracket(alpha.inverse(u), alpha.inverse(w))) - bracket(u, w);
    for (std::size_t t = 0; t < g->dim(); ++t) kappa.coords()[space.index(r, t)] = val.coords[t];
  }
  CurvatureReport rep(kappa);
  rep.type = model.type;
  rep.n = dec.n;
  rep.insertion_X_zero = split(kappa).phi1.is_zero();
  rep.normal = dstar(kappa).is_zero();
  rep.regular = true;
  rep.strongly_regular = true;
  for (std::size_t c = 0; c < space.dim(); ++c) {
    if (sgn(kappa.coords()[c]) == 0) continue;
    if (space.homogeneity(c) < 1) rep.regular = false;
    const auto& tup = space.wedge().tuple(space.tuple_rank(c));
    int di = g->degree(tup[0]), dj = g->degree(tup[1]), dout = g->degree(space.value(c));
    if (dout < std::min(di, dj) - 1) {
      rep.strongly_regular = false;
      if (!rep.witness) {
        StrongRegularityWitness w{std::max(di, dj), std::min(di, dj), dout,
                                  g->labels()[di >= dj ? tup[0] : tup[1]], g->labels()[di >= dj ? tup[1] : tup[0]],
                                  g->labels()[space.value(c)]};
        rep.witness = w;
      }
    }
  }
  rep.trivial_summands = trivial_summand_analysis(kappa);
  const bool common = rep.normal && rep.insertion_X_zero && rep.regular;
  if (model.type == Rank2Type::G2)
    rep.matches_expected = common && !rep.strongly_regular && rep.witness && rep.witness->degree_i == -8 &&
                           rep.witness->degree_j == -9 && rep.witness->output_degree == -11;
  else
    rep.matches_expected = common && rep.strongly_regular;
  return rep;
}

namespace {

// a + b√2
struct QSqrt2 {
  Q a = 0, b = 0;
  friend QSqrt2 operator+(const QSqrt2& x, const QSqrt2& y) { return {x.a + y.a, x.b + y.b}; }
  friend QSqrt2 operator-(const QSqrt2& x, const QSqrt2& y) { return {x.a - y.a, x.b - y.b}; }
  friend QSqrt2 operator*(const QSqrt2& x, const QSqrt2& y) {
    return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a};
  }
  friend bool operator==(const QSqrt2& x, const QSqrt2& y) { return x.a == y.a && x.b == y.b; }
};

using M3 = std::array<std::array<QSqrt2, 3>, 3>;

M3 mul(const M3& x, const M3& y) {
  M3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] = r[i][j] + x[i][k] * y[k][j];
  return r;
}

M3 sub(const M3& x, const M3& y) {
  M3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = x[i][j] - y[i][j];
  return r;
}

M3 scaled_sum(const std::vector<Q>& c, const std::vector<M3>& ms) {
  M3 r{};
  for (std::size_t k = 0; k < ms.size(); ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r[i][j] = r[i][j] + QSqrt2{c[k], 0} * ms[k][i][j];
  return r;
}

// Polynomial in (t, u) with exponents up to a small bound.
using Poly2 = std::map<std::pair<int, int>, Q>;

void add_term(Poly2& p, std::pair<int, int> mono, const Q& c) {
  if (sgn(c) == 0) return;
  Q& slot = p[mono];
  slot += c;
  if (sgn(slot) == 0) p.erase(mono);
}

Poly2 diff(const Poly2& p, int var) {
  Poly2 r;
  for (const auto& [mono, c] : p) {
    int e = var == 0 ? mono.first : mono.second;
    if (e == 0) continue;
    auto m2 = mono;
    (var == 0 ? m2.first : m2.second) -= 1;
    add_term(r, m2, c * e);
  }
  return r;
}

Poly2 mul(const Poly2& x, const Poly2& y) {
  Poly2 r;
  for (const auto& [mx, cx] : x)
    for (const auto& [my, cy] : y) add_term(r, {mx.first + my.first, mx.second + my.second}, cx * cy);
  return r;
}

Poly2 add(Poly2 x, const Poly2& y, const Q& s = 1) {
  for (const auto& [m, c] : y) add_term(x, m, s * c);
  return x;
}

struct VectorField {
  Poly2 t, u;  ///< components along ∂_t and ∂_u
};

Poly2 apply(const VectorField& v, const Poly2& p) { return add(mul(v.t, diff(p, 0)), mul(v.u, diff(p, 1))); }

VectorField lie_bracket(const VectorField& v, const VectorField& w) {
  return {add(apply(v, w.t), apply(w, v.t), -1), add(apply(v, w.u), apply(w, v.u), -1)};
}

SparseVec field_coords(const VectorField& v) {
  SparseAccumulator acc;
  auto put = [&](const Poly2& p, std::size_t offset) {
    for (const auto& [m, c] : p) {
      if (m.first > 2 || m.second > 2 || m.first + m.second > 2) throw std::logic_error("vector field leaves degree 2");
      acc.add(offset + static_cast<std::size_t>(m.first * 3 + m.second), c);
    }
  };
  put(v.t, 0);
  put(v.u, 9);
  return acc.take();
}

Poly2 poly(std::initializer_list<std::pair<std::pair<int, int>, Q>> terms) {
  Poly2 p;
  for (const auto& [m, c] : terms) add_term(p, m, c);
  return p;
}

}  // namespace

Sl3RealizationReport verify_sl3_realization() {
  using P = std::pair<int, int>;
  const P one{0, 0}, t{1, 0}, u{0, 1}, tt{2, 0}, tu{1, 1}, uu{0, 2};
  // X, H, Y, T4, T2, T0, T-2, T-4
  const std::vector<std::string> names{"X", "H", "Y", "T4", "T2", "T0", "T-2", "T-4"};
  const std::vector<VectorField> fields{
      {poly({{one, 1}}), poly({{t, 1}})},
      {poly({{t, -2}}), poly({{u, -4}})},
      {poly({{u, 2}, {tt, -2}}), poly({{tu, -2}})},
      {poly({}), poly({{one, Q(1, 2)}})},
      {poly({{one, -1}}), poly({{t, 1}})},
      {poly({{t, -3}}), poly({})},
      {poly({{tt, -2}, {u, -2}}), poly({{tu, -2}})},
      {poly({{tu, -2}}), poly({{uu, -2}})},
  };
  const QSqrt2 r2{0, 1}, mr2{0, -1}, o{1, 0}, z{};
  auto m3 = [](std::initializer_list<std::initializer_list<QSqrt2>> rows) {
    M3 r{};
    int i = 0;
    for (const auto& row : rows) {
      int j = 0;
      for (const auto& x : row) r[i][j++] = x;
      ++i;
    }
    return r;
  };
  const QSqrt2 two{2, 0}, mtwo{-2, 0};
  const std::vector<M3> mats{
      m3({{z, r2, z}, {z, z, r2}, {z, z, z}}),
      m3({{two, z, z}, {z, z, z}, {z, z, mtwo}}),
      m3({{z, z, z}, {r2, z, z}, {z, r2, z}}),
      m3({{z, z, o}, {z, z, z}, {z, z, z}}),
      m3({{z, mr2, z}, {z, z, r2}, {z, z, z}}),
      m3({{o, z, z}, {z, mtwo, z}, {z, z, o}}),
      m3({{z, z, z}, {r2, z, z}, {z, mr2, z}}),
      m3({{z, z, z}, {z, z, z}, {o, z, z}}),
  };

  Sl3RealizationReport rep;
  Echelon basis(18, true);
  for (const auto& f : fields)
    if (!basis.insert(field_coords(f))) throw std::logic_error("verify_sl3_realization: fields are dependent");

  rep.brackets_preserved = true;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    for (std::size_t j = i + 1; j < fields.size(); ++j) {
      ++rep.pairs_checked;
      auto c = basis.express(field_coords(lie_bracket(fields[i], fields[j])));
      bool ok = false;
      if (c) {
        std::vector<Q> coeffs = c->to_dense(fields.size());
        ok = scaled_sum(coeffs, mats) == sub(mul(mats[i], mats[j]), mul(mats[j], mats[i]));
      }
      if (!ok) {
        rep.brackets_preserved = false;
        rep.failures.push_back("[" + names[i] + "," + names[j] + "]");
      }
    }
  }
  // Span of the image over Q(√2): rational and √2 parts as a real 18-vector each.
  Echelon img(18, false);
  for (const auto& m : mats) {
    SparseAccumulator acc;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        acc.add(static_cast<std::size_t>(i * 3 + j), m[i][j].a);
        acc.add(static_cast<std::size_t>(9 + i * 3 + j), m[i][j].b);
      }
    img.insert(acc.take());
  }
  rep.image_rank = img.rank();
  rep.weights_consistent = true;
  const std::vector<int> weights{2, 0, -2, 4, 2, 0, -2, -4};
  for (std::size_t k = 0; k < fields.size(); ++k) {
    VectorField b = lie_bracket(fields[1], fields[k]);
    auto c = basis.express(field_coords(b));
    SparseVec expect = weights[k] == 0 ? SparseVec{} : SparseVec::unit(k, weights[k]);
    if (!c || !(*c == expect)) rep.weights_consistent = false;
  }
  return rep;
}

json to_json(const Rank2Model& m) {
  json roots = json::array();
  for (std::size_t i = 0; i < m.roots.size(); ++i) roots.push_back({m.algebra->labels()[i], m.roots[i]});
  return {{"type", to_string(m.type)},
          {"dim", m.algebra->dim()},
          {"cartan", m.cartan},
          {"roots", roots},
          {"algebra", table_to_json(*m.algebra)}};
}

json to_json(const CurvatureReport& r) {
  json parts = json::array();
  for (const auto& p : r.trivial_summands.parts)
    parts.push_back({{"values", p.values},
                     {"trivial_multiplicity", p.trivial_multiplicity},
                     {"projection_norm2", to_string(p.projection_norm2)}});
  json out = {{"type", to_string(r.type)},
              {"n", r.n},
              {"kappa", to_json(r.kappa)},
              {"insertion_X_zero", r.insertion_X_zero},
              {"normal", r.normal},
              {"regular", r.regular},
              {"strongly_regular", r.strongly_regular},
              {"c_class_compatible", r.insertion_X_zero && r.normal && r.strongly_regular},
              {"trivial_summands",
               {{"parts", parts},
                {"kappa_norm2", to_string(r.trivial_summands.kappa_norm2)},
                {"in_trivial_sum", r.trivial_summands.in_trivial_sum}}},
              {"matches_expected", r.matches_expected}};
  if (r.witness)
    out["witness"] = {{"degrees", {r.witness->degree_i, r.witness->degree_j}},
                      {"output_degree", r.witness->output_degree},
                      {"arguments", {r.witness->arg_i, r.witness->arg_j}},
                      {"output", r.witness->output}};
  else
    out["witness"] = nullptr;
  return out;
}

json to_json(const Sl3RealizationReport& r) {
  return {{"brackets_preserved", r.brackets_preserved},
          {"pairs_checked", r.pairs_checked},
          {"failures", r.failures},
          {"image_rank", r.image_rank},
          {"weights_consistent", r.weights_consistent},
          {"ok", r.ok()}};
}

}  // namespace cclass
