#include "cclass/structure.hpp"

#include <algorithm>
#include <stdexcept>

namespace cclass {

namespace {

SparseMatrix select_columns(const SparseMatrix& m, const std::vector<std::size_t>& cols) {
  std::vector<SparseVec> out;
  out.reserve(cols.size());
  for (std::size_t c : cols) out.push_back(m.column(c));
  return SparseMatrix(m.rows(), std::move(out));
}

/// Lifts a relation over selected columns back to full coordinates.
SparseVec lift(const SparseVec& comb, const std::vector<std::size_t>& cols) {
  SparseAccumulator acc;
  for (const auto& [k, c] : comb) acc.add(cols[k], c);
  return acc.take();
}

}  // namespace

SpencerResult spencer_rank(const AlgebraPtr& g) {
  const auto& s = g->require_ode();
  auto d = differential_matrix(g, ComplexTag::a_coeff, 1);
  auto sp = CochainSpace::get(g, ComplexTag::a_coeff, 1);
  auto q = s.q();
  std::vector<std::size_t> q_cols, a_cols;
  for (std::size_t c = 0; c < sp->dim(); ++c)
    (std::binary_search(q.begin(), q.end(), sp->value(c)) ? q_cols : a_cols).push_back(c);
  SpencerResult r;
  r.domain_dim = q_cols.size();
  r.rank = rank(select_columns(*d, q_cols));
  r.injective = r.rank == r.domain_dim;
  r.a_valued_rank = rank(select_columns(*d, a_cols));
  return r;
}

SpencerResult spencer_rank(int m, int n) { return spencer_rank(build_ode_algebra(m, n)); }

ProlongationReport h1_by_homogeneity(const AlgebraPtr& g) {
  const auto& s = g->require_ode();
  ProlongationReport r;
  r.m = s.m;
  r.n = s.n;
  r.outside_paper_scope = s.outside_main_theorems;
  r.spencer = spencer_rank(g);
  auto d0 = differential_matrix(g, ComplexTag::gminus, 0);
  auto d1 = differential_matrix(g, ComplexTag::gminus, 1);
  auto c0 = CochainSpace::get(g, ComplexTag::gminus, 0);
  auto c1 = CochainSpace::get(g, ComplexTag::gminus, 1);
  for (int ell : homogeneities(*c1)) {
    auto cols1 = homogeneous_coords(*c1, ell);
    auto cols0 = homogeneous_coords(*c0, ell);
    int ker = static_cast<int>(cols1.size() - rank(select_columns(*d1, cols1)));
    int im = cols0.empty() ? 0 : static_cast<int>(rank(select_columns(*d0, cols0)));
    r.kernel_dims[ell] = ker;
    r.image_dims[ell] = im;
    r.h1_dims_by_homogeneity[ell] = ker - im;
  }
  r.tanaka_full = std::all_of(r.h1_dims_by_homogeneity.begin(), r.h1_dims_by_homogeneity.end(),
                              [](const auto& kv) { return kv.first < 1 || kv.second == 0; });
  return r;
}

ProlongationReport h1_by_homogeneity(int m, int n) { return h1_by_homogeneity(build_ode_algebra(m, n)); }

ReducibilityReport reducibility_check(const AlgebraPtr& g) {
  const auto& s = g->require_ode();
  auto c2 = CochainSpace::get(g, ComplexTag::horizontal, 2);
  auto c3 = CochainSpace::get(g, ComplexTag::horizontal, 3);
  auto d2 = codifferential_matrix(g, ComplexTag::horizontal, 2);
  auto d3 = codifferential_matrix(g, ComplexTag::horizontal, 3);
  SparseMatrix y_act = action_matrix(AlgebraElement::basis(g, s.y), ComplexTag::horizontal, 2);

  ReducibilityReport r;
  for (int ell : homogeneities(*c2)) {
    auto cols2 = homogeneous_coords(*c2, ell);
    auto kernel = kernel_basis(select_columns(*d2, cols2));
    if (kernel.empty()) continue;
    r.kernel_dim += kernel.size();
    auto cols3 = homogeneous_coords(*c3, ell + 1);
    Echelon image(c2->dim(), true);
    for (std::size_t c : cols3) image.insert(d3->column(c));
    for (const auto& rel : kernel) {
      SparseVec phi = lift(rel, cols2);
      SparseVec yphi = y_act.apply(phi);
      auto comb = image.express(yphi);
      if (!comb) {
        r.ok = false;
        if (!r.failing_homogeneity) r.failing_homogeneity = ell;
        continue;
      }
      SparseVec psi = lift(*comb, cols3);
      if (d3->apply(psi) == yphi) {
        ++r.certificates;
      } else {
        r.ok = false;
        if (!r.failing_homogeneity) r.failing_homogeneity = ell;
      }
      Cochain phic(g, ComplexTag::horizontal, 2, phi.to_dense(c2->dim()));
      auto parts = split(phic);
      SplitCochain lifted{parts.phi2, Cochain(g, ComplexTag::a_coeff, 3)};
      Cochain rhs = dstar(assemble(lifted, ComplexTag::horizontal));
      if (!(SparseVec::from_dense(rhs.coords()) == yphi)) r.proof_identity = false;
    }
  }
  return r;
}

ReducibilityReport reducibility_check(int m, int n) { return reducibility_check(build_ode_algebra(m, n)); }

NormalizationDims normalization_dims(const AlgebraPtr& g) {
  const auto& s = g->require_ode();
  auto c2 = CochainSpace::get(g, ComplexTag::horizontal, 2);
  auto c3 = CochainSpace::get(g, ComplexTag::horizontal, 3);
  auto d2 = codifferential_matrix(g, ComplexTag::horizontal, 2);
  auto d3 = codifferential_matrix(g, ComplexTag::horizontal, 3);
  NormalizationDims r;
  r.im_in_ker = ((*d2) * (*d3)).is_zero();
  r.e_in_ker = true;
  for (int ell : homogeneities(*c2)) {
    auto cols2 = homogeneous_coords(*c2, ell);
    std::vector<std::size_t> no_x;
    for (std::size_t c : cols2) {
      const auto& t = c2->wedge().tuple(c2->tuple_rank(c));
      if (std::find(t.begin(), t.end(), s.x) == t.end()) no_x.push_back(c);
    }
    std::size_t ker = cols2.size() - rank(select_columns(*d2, cols2));
    auto e_basis = kernel_basis(select_columns(*d2, no_x));
    for (const auto& rel : e_basis) {
      Cochain phi(g, ComplexTag::horizontal, 2, lift(rel, no_x).to_dense(c2->dim()));
      if (!split(phi).phi1.is_zero() || !dstar(phi).is_zero()) r.e_in_ker = false;
    }
    auto cols3 = homogeneous_coords(*c3, ell);
    std::size_t im = cols3.empty() ? 0 : rank(select_columns(*d3, cols3));
    r.ker += ker;
    r.im += im;
    r.e += e_basis.size();
    if (ker != im) r.quotient_by_homogeneity[ell] = static_cast<int>(ker - im);
  }
  return r;
}

NormalizationDims normalization_dims(int m, int n) { return normalization_dims(build_ode_algebra(m, n)); }

LaplacianReport laplacian_on_image(const AlgebraPtr& g) {
  LaplacianReport rep;
  const auto& c2 = *CochainSpace::get(g, ComplexTag::gminus, 2);
  const auto& c3 = *CochainSpace::get(g, ComplexTag::gminus, 3);
  const auto ds = codifferential_matrix(g, ComplexTag::gminus, 3);
  for (int ell : homogeneities(c2)) {
    Echelon image(c2.dim(), false);
    std::vector<SparseVec> basis;
    for (auto c : homogeneous_coords(c3, ell)) {
      const SparseVec& col = ds->column(c);
      if (!col.empty() && image.insert(col)) basis.push_back(col);
    }
    Echelon boxed(c2.dim(), false);
    for (const auto& b : basis)
      boxed.insert(SparseVec::from_dense(laplacian_box(Cochain(g, ComplexTag::gminus, 2, b.to_dense(c2.dim()))).coords()));
    rep.dim_and_rank[ell] = {basis.size(), boxed.rank()};
    if (boxed.rank() != basis.size()) rep.bijective = false;
  }
  return rep;
}

LaplacianReport laplacian_on_image(int m, int n) { return laplacian_on_image(build_ode_algebra(m, n)); }

IsotypicDecomposition c1_aq_decomposition(const AlgebraPtr& g) {
  const auto& ode = g->require_ode();
  const auto& space = *CochainSpace::get(g, ComplexTag::a_coeff, 1);
  const auto q = ode.q();
  std::vector<bool> in_q(g->dim(), false);
  for (auto i : q) in_q[i] = true;
  std::vector<std::size_t> idx;
  for (std::size_t c = 0; c < space.dim(); ++c)
    if (in_q[space.value(c)]) idx.push_back(c);
  auto act = [&](std::size_t b) {
    return restrict_to_coords(action_matrix(AlgebraElement::basis(g, b), ComplexTag::a_coeff, 1), idx);
  };
  return sl2_decompose(act(ode.x), act(ode.h), act(ode.y));
}

IsotypicDecomposition c1_aq_decomposition(int m, int n) { return c1_aq_decomposition(build_ode_algebra(m, n)); }

StructureReport structure_report(int m, int n) {
  auto g = build_ode_algebra(m, n);
  StructureReport r;
  r.prolongation = h1_by_homogeneity(g);
  r.reducibility = reducibility_check(g);
  r.dims = normalization_dims(g);
  bool kernel_equals_image = true;
  for (const auto& [ell, k] : r.prolongation.kernel_dims)
    if (ell >= 1 && k != r.prolongation.image_dims.at(ell)) kernel_equals_image = false;
  r.all_pass = r.prolongation.spencer.injective && r.prolongation.spencer.a_valued_rank == 0 &&
               r.prolongation.tanaka_full && kernel_equals_image && r.reducibility.ok &&
               r.reducibility.proof_identity && r.dims.im_in_ker && r.dims.e_in_ker;
  return r;
}

nlohmann::json to_json(const StructureReport& r) {
  using nlohmann::json;
  const auto& p = r.prolongation;
  auto int_map = [](const std::map<int, int>& m) {
    json j = json::object();
    for (const auto& [k, v] : m) j[std::to_string(k)] = v;
    return j;
  };
  json j;
  j["m"] = p.m;
  j["n"] = p.n;
  j["outside_paper_scope"] = p.outside_paper_scope;
  j["spencer"] = {{"rank", p.spencer.rank},
                  {"domain_dim", p.spencer.domain_dim},
                  {"injective", p.spencer.injective},
                  {"a_valued_rank", p.spencer.a_valued_rank}};
  j["h1"] = int_map(p.h1_dims_by_homogeneity);
  j["h1_kernel_dims"] = int_map(p.kernel_dims);
  j["h1_image_dims"] = int_map(p.image_dims);
  j["tanaka_full"] = p.tanaka_full;
  j["reducibility"] = r.reducibility.ok;
  j["reducibility_detail"] = {{"kernel_dim", r.reducibility.kernel_dim},
                              {"certificates", r.reducibility.certificates},
                              {"proof_identity", r.reducibility.proof_identity},
                              {"failing_homogeneity", r.reducibility.failing_homogeneity
                                                          ? json(*r.reducibility.failing_homogeneity)
                                                          : json(nullptr)}};
  j["dims"] = {{"ker", r.dims.ker},
               {"im", r.dims.im},
               {"E", r.dims.e},
               {"im_in_ker", r.dims.im_in_ker},
               {"E_in_ker", r.dims.e_in_ker},
               {"quotient_by_homogeneity", int_map(r.dims.quotient_by_homogeneity)}};
  j["all_pass"] = r.all_pass;
  return j;
}

}  // namespace cclass
