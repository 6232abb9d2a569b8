#pragma once

#include "cclass/linalg.hpp"

#include <json.hpp>

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cclass {

/// Index bookkeeping for g(m,n) = (sl2 x gl_m) ⋉ (V_n ⊠ R^m). All indices 0-based.
struct OdeStructure {
  int m = 0;
  int n = 0;
  std::size_t x = 0, h = 1, y = 2;
  std::vector<std::size_t> gl;  ///< e^a_b at gl[a*m + b]
  std::vector<std::size_t> a;   ///< v^i_b at a[i*m + b]
  bool outside_main_theorems = false;

  std::size_t e(int a_, int b) const { return gl[static_cast<std::size_t>(a_ * m + b)]; }
  std::size_t v(int i, int b) const { return a[static_cast<std::size_t>(i * m + b)]; }
  /// X, H, Y and gl_m, sorted.
  std::vector<std::size_t> q() const;
  /// H, Y and gl_m, sorted.
  std::vector<std::size_t> p() const;
  /// X and a, sorted.
  std::vector<std::size_t> gminus() const;
};

class LieAlgebraTable;
using AlgebraPtr = std::shared_ptr<const LieAlgebraTable>;

/// Structure constants c[i][j] = coordinates of [b_i, b_j], plus optional grading and diagonal Gram.
class LieAlgebraTable {
 public:
  struct PreimageTerm {
    std::size_t i, j;  ///< i < j
    Q coeff;           ///< coefficient of the target basis vector in [b_i, b_j]
  };

  class Builder {
   public:
    explicit Builder(std::vector<std::string> labels);
    /// Sets [b_i, b_j] = v and [b_j, b_i] = -v.
    Builder& set(std::size_t i, std::size_t j, const SparseVec& v);
    /// Sets only the ordered entry c[i][j]; used to build deliberately broken tables.
    Builder& set_raw(std::size_t i, std::size_t j, const SparseVec& v);
    Builder& grading(std::vector<int> degrees);
    Builder& gram(std::vector<Q> diagonal);
    Builder& ode(OdeStructure s);
    Builder& grading_element(DenseVec z);
    AlgebraPtr build() const;

   private:
    friend class LieAlgebraTable;
    std::vector<std::string> labels_;
    std::vector<SparseVec> c_;
    std::optional<std::vector<int>> grading_;
    std::optional<std::vector<Q>> gram_;
    std::optional<OdeStructure> ode_;
    std::optional<DenseVec> z_;
  };

  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const SparseVec& bracket(std::size_t i, std::size_t j) const { return c_[i * dim() + j]; }
  /// Pairs (i<j) whose bracket has a nonzero b_t component.
  const std::vector<PreimageTerm>& preimage(std::size_t t) const { return preimage_[t]; }

  const std::optional<std::vector<int>>& grading() const { return grading_; }
  const std::optional<std::vector<Q>>& gram() const { return gram_; }
  const std::optional<OdeStructure>& ode() const { return ode_; }
  const std::optional<DenseVec>& grading_element() const { return z_; }

  int degree(std::size_t i) const;
  const Q& gram_diagonal(std::size_t i) const;
  const OdeStructure& require_ode() const;

  /// Copy with one ordered structure constant replaced (fault injection).
  AlgebraPtr with_raw_bracket(std::size_t i, std::size_t j, const SparseVec& v) const;
  /// Same algebra in the basis order new_basis[k] = old basis index perm[k].
  AlgebraPtr permuted(const std::vector<std::size_t>& perm) const;

  /// Memo table for derived objects (differential matrices and the like).
  std::shared_ptr<const void> cached(const std::string& key,
                                     const std::function<std::shared_ptr<const void>()>& make) const;

 private:
  explicit LieAlgebraTable(const Builder& b);

  std::vector<std::string> labels_;
  std::vector<SparseVec> c_;
  std::vector<std::vector<PreimageTerm>> preimage_;
  std::optional<std::vector<int>> grading_;
  std::optional<std::vector<Q>> gram_;
  std::optional<OdeStructure> ode_;
  std::optional<DenseVec> z_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

struct AlgebraElement {
  AlgebraPtr algebra;
  DenseVec coords;

  static AlgebraElement zero(const AlgebraPtr& alg);
  static AlgebraElement basis(const AlgebraPtr& alg, std::size_t i, const Q& c = 1);

  bool is_zero() const;
  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(const Q& s, AlgebraElement a);
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);
};

AlgebraPtr build_ode_algebra(int m, int n);

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);
Q inner_product(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement transpose_on_q(const AlgebraElement& a);
/// Matrix of ad_x in the basis of the algebra.
SparseMatrix ad_matrix(const AlgebraElement& x);

struct LieAxiomsVerdict {
  bool ok = true;
  std::string failure;  ///< "antisymmetry", "jacobi" or "grading"
  std::array<std::size_t, 3> witness{};
};
LieAxiomsVerdict verify_lie_axioms(const LieAlgebraTable& alg);

struct IsotypicDecomposition {
  std::map<int, int> multiplicities;  ///< highest weight -> number of summands
  std::vector<std::pair<int, DenseVec>> highest_weight_vectors;
  std::size_t module_dim = 0;
};

/// Decomposes a finite-dimensional sl2-module given by the action matrices of X (raising), H, Y.
IsotypicDecomposition sl2_decompose(const SparseMatrix& x, const SparseMatrix& h, const SparseMatrix& y);

nlohmann::json table_to_json(const LieAlgebraTable& alg);

}  // namespace cclass
