#pragma once

#include "cclass/series.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cclass {

/// Expression over t, jet coordinates u^a_k (component a, derivative order k; both 0-based
/// internally) and rational constants.
class JetExpression {
 public:
  enum class Kind { constant, time, var, add, sub, mul, div, neg, pow };

  JetExpression() = default;  ///< the constant 0
  static JetExpression constant(const Q& c);
  static JetExpression time();
  static JetExpression var(int component, int order);

  Kind kind() const;
  const Q& value() const;   ///< constant
  int component() const;    ///< var
  int order() const;        ///< var
  int exponent() const;     ///< pow
  const JetExpression& lhs() const;  ///< binary ops; operand of neg and pow
  const JetExpression& rhs() const;

  bool is_constant() const { return kind() == Kind::constant; }
  bool is_constant(long c) const { return is_constant() && value() == c; }
  /// Node identity, used for memoization.
  const void* id() const { return &node(); }

  // Constructors that fold constants and trivial identities.
  friend JetExpression operator+(const JetExpression& a, const JetExpression& b);
  friend JetExpression operator-(const JetExpression& a, const JetExpression& b);
  friend JetExpression operator*(const JetExpression& a, const JetExpression& b);
  friend JetExpression operator/(const JetExpression& a, const JetExpression& b);
  friend JetExpression operator-(const JetExpression& a);
  friend JetExpression pow(const JetExpression& a, int k);
  /// Structural equality.
  friend bool operator==(const JetExpression& a, const JetExpression& b);

 private:
  struct Node;
  explicit JetExpression(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  const Node& node() const;
  static JetExpression make(Kind k, JetExpression lhs, JetExpression rhs, int exponent = 0);
  std::shared_ptr<const Node> node_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Division by zero or a singular power at a jet point or along a series.
class EvaluationError : public std::domain_error {
 public:
  EvaluationError(const std::string& what, std::string subexpression)
      : std::domain_error(what + ": " + subexpression), subexpression_(std::move(subexpression)) {}
  const std::string& subexpression() const { return subexpression_; }

 private:
  std::string subexpression_;
};

JetExpression parse_expression(std::string_view src, int m, int n);
/// m right-hand sides separated by ';'.
std::vector<JetExpression> parse_system(std::string_view src, int m, int n);
std::string print(const JetExpression& e, int m);
/// Rebuilds the tree with the folding constructors.
JetExpression normalize(const JetExpression& e);

struct JetVariable {
  bool is_time = false;
  int component = 0;
  int order = 0;
  static JetVariable time() { return {true, 0, 0}; }
  static JetVariable u(int component, int order) { return {false, component, order}; }
};

JetExpression partial_derivative(const JetExpression& e, const JetVariable& v);
/// d/dt = ∂_t + Σ_{k<n} u^a_{k+1} ∂_{u^a_k} + f^a ∂_{u^a_n}.
JetExpression total_derivative(const JetExpression& e, const std::vector<JetExpression>& f, int n);

struct JetPoint {
  Q t0;
  std::vector<std::vector<Q>> u;  ///< u[a][k], k = 0..n
  int m() const { return static_cast<int>(u.size()); }
  int n() const { return u.empty() ? -1 : static_cast<int>(u[0].size()) - 1; }
};

Q evaluate_at_jet(const JetExpression& e, const JetPoint& p);
/// Evaluates e with t = t0 + τ and u^a_k given as series in τ; the result has the smallest
/// order among the inputs and `order`.
TruncatedSeries evaluate_along(const JetExpression& e, const Q& t0,
                               const std::vector<std::vector<TruncatedSeries>>& u, int order);
/// Series u^a(τ) solving u^{(n+1)} = f through order N with the jet of p at τ = 0.
std::vector<TruncatedSeries> formal_solve(const std::vector<JetExpression>& f, const JetPoint& p, int N);
/// The k-th derivative series of each solution component: result[a][k] for k = 0..n.
std::vector<std::vector<TruncatedSeries>> jet_series(const std::vector<TruncatedSeries>& u, int n);

/// Polynomial over Q in t (index 0) and u^a_k (index 1 + a(n+1) + k).
class Polynomial {
 public:
  using Monomial = std::vector<int>;
  Polynomial() = default;
  static Polynomial constant(const Q& c);
  static Polynomial variable(std::size_t index);

  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Q>& terms() const { return terms_; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

 private:
  void add(Monomial mono, const Q& c);
  std::map<Monomial, Q> terms_;
};

/// num/den, compared by cross-multiplication; not reduced.
struct RationalFunction {
  Polynomial num = Polynomial::constant(0);
  Polynomial den = Polynomial::constant(1);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num * b.den == b.num * a.den;
  }
};

RationalFunction to_rational_function(const JetExpression& e, int n);

}  // namespace cclass
