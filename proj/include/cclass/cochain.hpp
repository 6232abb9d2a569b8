#pragma once

#include "cclass/liealg.hpp"

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cclass {

/// Which domain the cochains live on. Values always lie in g.
///  full        C^k(g,g)
///  a_coeff     C^k(a,g)
///  gminus      C^k(g₋,g), g₋ = span(X) ⊕ a
///  horizontal  Λ^k(g/p)* ⊗ g, with g/p represented by g₋
enum class ComplexTag { full, a_coeff, gminus, horizontal };

std::string to_string(ComplexTag tag);
ComplexTag complex_tag_from_string(const std::string& s);

/// Sorted algebra indices that span the domain of the tagged complex.
std::vector<std::size_t> domain_indices(const LieAlgebraTable& alg, ComplexTag tag);

/// Increasing k-tuples of a sorted index set, in lexicographic order.
class WedgeBasis {
 public:
  WedgeBasis(std::vector<std::size_t> domain, std::size_t algebra_dim, int k);

  int degree() const { return k_; }
  std::size_t size() const { return tuples_.size(); }
  const std::vector<std::size_t>& domain() const { return domain_; }
  const std::vector<std::size_t>& tuple(std::size_t r) const { return tuples_[r]; }
  bool in_domain(std::size_t algebra_index) const { return position_[algebra_index] >= 0; }
  /// Rank of a strictly increasing tuple of domain indices.
  std::size_t rank_of(const std::vector<std::size_t>& tuple) const;

 private:
  std::vector<std::size_t> domain_;
  int k_;
  std::vector<long> position_;
  std::vector<std::vector<std::size_t>> tuples_;
  std::vector<std::vector<std::size_t>> binom_;
};

class CochainSpace {
 public:
  /// Memoized per (algebra, tag, degree). Degree -1 gives the zero space.
  static std::shared_ptr<const CochainSpace> get(const AlgebraPtr& alg, ComplexTag tag, int degree);

  CochainSpace(const LieAlgebraTable& alg, ComplexTag tag, int degree);

  ComplexTag tag() const { return tag_; }
  int degree() const { return wedge_.degree(); }
  const WedgeBasis& wedge() const { return wedge_; }
  std::size_t algebra_dim() const { return gdim_; }
  std::size_t dim() const { return wedge_.size() * gdim_; }
  std::size_t index(std::size_t tuple_rank, std::size_t value) const { return tuple_rank * gdim_ + value; }
  std::size_t tuple_rank(std::size_t coord) const { return coord / gdim_; }
  std::size_t value(std::size_t coord) const { return coord % gdim_; }
  /// Diagonal entry of the induced Gram matrix.
  const Q& gram(std::size_t coord) const;
  int homogeneity(std::size_t coord) const;
  bool has_gram() const { return !gram_.empty() || dim() == 0; }
  bool has_grading() const { return !homogeneity_.empty() || dim() == 0; }

 private:
  ComplexTag tag_;
  std::size_t gdim_;
  WedgeBasis wedge_;
  std::vector<Q> gram_;
  std::vector<int> homogeneity_;
};

class Cochain {
 public:
  Cochain(AlgebraPtr alg, ComplexTag tag, int degree);
  Cochain(AlgebraPtr alg, ComplexTag tag, int degree, DenseVec coords);
  static Cochain basis(const AlgebraPtr& alg, ComplexTag tag, int degree, std::size_t coord);

  const AlgebraPtr& algebra() const { return alg_; }
  ComplexTag tag() const { return space_->tag(); }
  int degree() const { return space_->degree(); }
  const CochainSpace& space() const { return *space_; }
  const DenseVec& coords() const { return coords_; }
  DenseVec& coords() { return coords_; }
  bool is_zero() const { return cclass::is_zero(coords_); }

  Cochain& operator+=(const Cochain& o);
  Cochain& operator-=(const Cochain& o);
  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend Cochain operator*(const Q& s, Cochain a);
  friend bool operator==(const Cochain& a, const Cochain& b);

 private:
  AlgebraPtr alg_;
  std::shared_ptr<const CochainSpace> space_;
  DenseVec coords_;
};

/// φ = ω^X ∧ φ₁ + φ₂ with φ₁ = i_X φ ∈ C^{k-1}(a,g) and φ₂ = φ|a ∈ C^k(a,g).
struct SplitCochain {
  Cochain phi1;
  Cochain phi2;
};

std::vector<Cochain> wedge_basis(const AlgebraPtr& alg, int k, ComplexTag tag);

AlgebraElement evaluate(const Cochain& phi, const std::vector<AlgebraElement>& args);
Q inner_product(const Cochain& a, const Cochain& b);

/// Matrix of the differential C^k → C^{k+1} for tags full, a_coeff, gminus (cached).
std::shared_ptr<const SparseMatrix> differential_matrix(const AlgebraPtr& alg, ComplexTag tag, int k);
/// Matrix of ∂*: C^k → C^{k-1} (cached). For horizontal forms this is the restriction
/// of the full adjoint; gminus gives the adjoint of d_gminus.
std::shared_ptr<const SparseMatrix> codifferential_matrix(const AlgebraPtr& alg, ComplexTag tag, int k);
/// Natural action of z on C^k of the tagged complex.
SparseMatrix action_matrix(const AlgebraElement& z, ComplexTag tag, int k);

Cochain d_g(const Cochain& phi);
Cochain d_a(const Cochain& phi);
/// Direct Chevalley–Eilenberg differential of the g₋-complex.
Cochain d_gminus(const Cochain& phi);
/// Block form (−∂_a φ₁ + X·φ₂, ∂_a φ₂).
SplitCochain d_gminus(const SplitCochain& phi);

Cochain dstar(const Cochain& psi);
/// Block form (−∂*_a φ₁, ∂*_a φ₂ + Y·φ₁) for horizontal forms.
SplitCochain dstar_block(const SplitCochain& phi);

Cochain act(const AlgebraElement& z, const Cochain& phi);

SplitCochain split(const Cochain& phi);
Cochain assemble(const SplitCochain& s, ComplexTag tag);

Cochain homogeneous_component(const Cochain& phi, int ell);
std::set<int> homogeneities(const CochainSpace& space);
/// Coordinates of the given homogeneity.
std::vector<std::size_t> homogeneous_coords(const CochainSpace& space, int ell);

/// □ = d_{g₋} ∂* + ∂* d_{g₋} on C^k(g₋,g).
Cochain laplacian_box(const Cochain& phi);

/// Same coordinates under another tag with the same domain (gminus ↔ horizontal).
Cochain retag(const Cochain& phi, ComplexTag tag);
/// Extends by zero to C^k(g,g).
Cochain embed_in_full(const Cochain& phi);
/// Reads off the coordinates supported on the target domain.
Cochain restrict_from_full(const Cochain& phi, ComplexTag tag);

nlohmann::json to_json(const Cochain& phi);

}  // namespace cclass
