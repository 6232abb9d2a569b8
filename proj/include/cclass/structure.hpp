#pragma once

#include "cclass/cochain.hpp"

#include <map>
#include <optional>
#include <string>

namespace cclass {

struct SpencerResult {
  std::size_t rank = 0;
  std::size_t domain_dim = 0;
  bool injective = false;
  /// Rank of ∂_a on C¹(a,a); zero since a-valued cochains are closed.
  std::size_t a_valued_rank = 0;
};

struct ProlongationReport {
  int m = 0, n = 0;
  bool outside_paper_scope = false;
  SpencerResult spencer;
  std::map<int, int> h1_dims_by_homogeneity;
  std::map<int, int> kernel_dims;  ///< dim ker(d_gminus) on C¹ per homogeneity
  std::map<int, int> image_dims;   ///< dim im(d_gminus) from C⁰ per homogeneity
  bool tanaka_full = false;
};

struct ReducibilityReport {
  bool ok = true;
  std::size_t kernel_dim = 0;
  std::size_t certificates = 0;  ///< verified ψ with ∂*ψ = Y·φ
  bool proof_identity = true;    ///< Y·φ = ∂*(φ₂, 0) on every kernel basis element
  std::optional<int> failing_homogeneity;
};

struct NormalizationDims {
  std::size_t ker = 0, im = 0, e = 0;
  bool im_in_ker = false;
  bool e_in_ker = false;
  std::map<int, int> quotient_by_homogeneity;
};

SpencerResult spencer_rank(const AlgebraPtr& g);
SpencerResult spencer_rank(int m, int n);
ProlongationReport h1_by_homogeneity(const AlgebraPtr& g);
ProlongationReport h1_by_homogeneity(int m, int n);
ReducibilityReport reducibility_check(const AlgebraPtr& g);
ReducibilityReport reducibility_check(int m, int n);
NormalizationDims normalization_dims(const AlgebraPtr& g);
NormalizationDims normalization_dims(int m, int n);

/// □ on im(∂*) ∩ C²(g₋,g)_ℓ, per homogeneity ℓ.
struct LaplacianReport {
  std::map<int, std::pair<std::size_t, std::size_t>> dim_and_rank;
  bool bijective = true;
};

LaplacianReport laplacian_on_image(const AlgebraPtr& g);
LaplacianReport laplacian_on_image(int m, int n);

/// sl₂-decomposition of C¹(a,q) under the natural action of the sl₂ ⊂ q.
IsotypicDecomposition c1_aq_decomposition(const AlgebraPtr& g);
IsotypicDecomposition c1_aq_decomposition(int m, int n);

struct StructureReport {
  ProlongationReport prolongation;
  ReducibilityReport reducibility;
  NormalizationDims dims;
  /// All properties the theory asserts for valid (m,n) hold.
  bool all_pass = false;
};

StructureReport structure_report(int m, int n);
nlohmann::json to_json(const StructureReport& r);

}  // namespace cclass
