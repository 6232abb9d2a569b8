#pragma once

#include "cclass/cochain.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace cclass {

enum class Rank2Type { A2, C2, G2 };
std::string to_string(Rank2Type t);
/// Accepts "a2", "c2", "g2" (any case); throws std::invalid_argument otherwise.
Rank2Type rank2_type_from_string(const std::string& s);

using Root = std::array<int, 2>;  ///< k α₁ + ℓ α₂

/// Rank-2 simple Lie algebra with structure constants read off a faithful matrix realization.
/// Basis: h₁, h₂, positive root vectors, negative root vectors (each by height, then k).
struct Rank2Model {
  Rank2Type type = Rank2Type::A2;
  AlgebraPtr algebra;
  std::vector<Root> roots;  ///< per basis index; (0,0) for h₁, h₂
  std::size_t e1 = 0, e2 = 0, f1 = 0, f2 = 0, h1 = 0, h2 = 0;
  std::array<std::array<int, 2>, 2> cartan{};  ///< c_ij = α_i(h_j)
  std::vector<Matrix> realization;              ///< matrix of every basis element

  std::size_t root_index(const Root& r) const;
};

Rank2Model build_rank2(Rank2Type type);
/// The Cartan matrices in Bourbaki ordering.
std::array<std::array<int, 2>, 2> expected_cartan(Rank2Type type);

struct PrincipalTriple {
  AlgebraElement X, H, Y;
  std::array<Q, 2> y_coefficients;        ///< Y = c₁ f₁ + c₂ f₂, solved from [X,Y] = H
  std::array<Q, 2> reference_y_coefficients;  ///< the values printed in the literature
  bool relations_hold = false;
};

PrincipalTriple principal_sl2(const Rank2Model& model);

struct PrincipalDecomposition {
  int n = 0;
  PrincipalTriple triple;
  std::vector<AlgebraElement> v;   ///< v[i] = v^i, X·v^i = v^{i-1}, v^n spans the lowest root space
  IsotypicDecomposition adjoint;   ///< of s under the triple
  bool direct_sum = false;         ///< X, H, Y, v^0..v^n form a basis of s
};

PrincipalDecomposition principal_decompose(const Rank2Model& model);

/// α: s → g(1,n), X,H,Y ↦ X,H,Y and v^i ↦ v^i.
struct AlphaMap {
  AlgebraPtr s;
  AlgebraPtr g;
  int n = 0;
  SparseMatrix matrix;                 ///< g-coordinates of α(b_j), one column per basis element of s
  std::vector<AlgebraElement> adapted; ///< X, H, Y, v^0..v^n in s
  bool equivariant = false;            ///< α[w,x] = [αw, αx] for w in the triple, x in a basis of s
  std::vector<int> filtration;         ///< filtration degree of each basis element of s

  AlgebraElement apply(const AlgebraElement& x) const;
  /// α⁻¹ of an element of sl₂ ⊕ a ⊂ g; throws if it has a gl₁ component.
  AlgebraElement inverse(const AlgebraElement& u) const;
};

AlphaMap embed_alpha(const Rank2Model& model, const PrincipalDecomposition& dec);

struct StrongRegularityWitness {
  int degree_i = 0, degree_j = 0, output_degree = 0;
  std::string arg_i, arg_j, output;  ///< g-basis labels
};

struct SummandProjection {
  std::string values;        ///< "a", "sl2" or "gl1"
  int trivial_multiplicity = 0;
  Q projection_norm2;        ///< squared length of the orthogonal projection onto the invariants
};

struct TrivialSummandReport {
  std::vector<SummandProjection> parts;
  Q kappa_norm2;
  bool in_trivial_sum = false;  ///< κ equals the sum of its projections
};

struct CurvatureReport {
  explicit CurvatureReport(Cochain k) : kappa(std::move(k)) {}
  Cochain kappa;  ///< horizontal 2-cochain on g(1,n)
  Rank2Type type = Rank2Type::A2;
  int n = 0;
  bool insertion_X_zero = false;
  bool normal = false;
  bool regular = false;
  bool strongly_regular = false;
  std::optional<StrongRegularityWitness> witness;
  TrivialSummandReport trivial_summands;
  /// Expected: A₂/C₂ strongly regular, normal, i_X κ = 0; G₂ regular, not strongly regular.
  bool matches_expected = false;
};

CurvatureReport model_curvature(const Rank2Model& model);
/// Projections of a horizontal 2-cochain on g(1,n) with i_X φ = 0 onto the sl₂-invariants of
/// C²(a,a), C²(a,sl₂) and C²(a,gl₁).
TrivialSummandReport trivial_summand_analysis(const Cochain& phi);

struct Sl3RealizationReport {
  bool brackets_preserved = false;
  std::size_t pairs_checked = 0;
  std::vector<std::string> failures;
  std::size_t image_rank = 0;
  bool weights_consistent = false;  ///< [H, T_{2i}] = 2i T_{2i}
  bool ok() const { return brackets_preserved && image_rank == 8 && weights_consistent; }
};

Sl3RealizationReport verify_sl3_realization();

nlohmann::json to_json(const Rank2Model& m);
nlohmann::json to_json(const CurvatureReport& r);
nlohmann::json to_json(const Sl3RealizationReport& r);

}  // namespace cclass
