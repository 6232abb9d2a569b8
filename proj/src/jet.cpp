#include "cclass/jet.hpp"

#include <cctype>
#include <unordered_map>

namespace cclass {

struct JetExpression::Node {
  Kind kind = Kind::constant;
  Q value;
  int component = 0;
  int order = 0;
  int exponent = 0;
  JetExpression lhs_, rhs_;
  Node() = default;
};

namespace {

using Kind = JetExpression::Kind;

}  // namespace

const JetExpression::Node& JetExpression::node() const {
  static const Node zero;
  return node_ ? *node_ : zero;
}

JetExpression JetExpression::constant(const Q& c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->value = c;
  return JetExpression(std::move(n));
}

JetExpression JetExpression::time() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::time;
  return JetExpression(std::move(n));
}

JetExpression JetExpression::var(int component, int order) {
  if (component < 0 || order < 0) throw std::invalid_argument("jet variable indices must be non-negative");
  auto n = std::make_shared<Node>();
  n->kind = Kind::var;
  n->component = component;
  n->order = order;
  return JetExpression(std::move(n));
}

JetExpression::Kind JetExpression::kind() const { return node().kind; }
const Q& JetExpression::value() const { return node().value; }
int JetExpression::component() const { return node().component; }
int JetExpression::order() const { return node().order; }
int JetExpression::exponent() const { return node().exponent; }
const JetExpression& JetExpression::lhs() const { return node().lhs_; }
const JetExpression& JetExpression::rhs() const { return node().rhs_; }

JetExpression JetExpression::make(Kind k, JetExpression lhs, JetExpression rhs, int exponent) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs_ = std::move(lhs);
  n->rhs_ = std::move(rhs);
  n->exponent = exponent;
  return JetExpression(std::move(n));
}

JetExpression operator+(const JetExpression& a, const JetExpression& b) {
  if (a.is_constant() && b.is_constant()) return JetExpression::constant(a.value() + b.value());
  if (a.is_constant(0)) return b;
  if (b.is_constant(0)) return a;
  return JetExpression::make(Kind::add, a, b);
}

JetExpression operator-(const JetExpression& a, const JetExpression& b) {
  if (a.is_constant() && b.is_constant()) return JetExpression::constant(a.value() - b.value());
  if (b.is_constant(0)) return a;
  if (a.is_constant(0)) return -b;
  return JetExpression::make(Kind::sub, a, b);
}

JetExpression operator*(const JetExpression& a, const JetExpression& b) {
  if (a.is_constant() && b.is_constant()) return JetExpression::constant(a.value() * b.value());
  if (a.is_constant(0) || b.is_constant(0)) return JetExpression::constant(0);
  if (a.is_constant(1)) return b;
  if (b.is_constant(1)) return a;
  return JetExpression::make(Kind::mul, a, b);
}

JetExpression operator/(const JetExpression& a, const JetExpression& b) {
  if (a.is_constant() && b.is_constant() && sgn(b.value()) != 0)
    return JetExpression::constant(a.value() / b.value());
  if (a.is_constant(0) && !b.is_constant(0)) return JetExpression::constant(0);
  if (b.is_constant(1)) return a;
  return JetExpression::make(Kind::div, a, b);
}

JetExpression operator-(const JetExpression& a) {
  if (a.is_constant()) return JetExpression::constant(-a.value());
  if (a.kind() == Kind::neg) return a.lhs();
  return JetExpression::make(Kind::neg, a, {});
}

JetExpression pow(const JetExpression& a, int k) {
  if (k == 0) return JetExpression::constant(1);
  if (k == 1) return a;
  if (a.is_constant() && (sgn(a.value()) != 0 || k > 0)) {
    Q r = 1;
    Q base = a.value();
    if (k < 0) base = 1 / base;
    for (int i = 0; i < (k > 0 ? k : -k); ++i) r *= base;
    return JetExpression::constant(r);
  }
  return JetExpression::make(Kind::pow, a, {}, k);
}

bool operator==(const JetExpression& a, const JetExpression& b) {
  if (a.id() == b.id()) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::constant: return a.value() == b.value();
    case Kind::time: return true;
    case Kind::var: return a.component() == b.component() && a.order() == b.order();
    case Kind::neg: return a.lhs() == b.lhs();
    case Kind::pow: return a.exponent() == b.exponent() && a.lhs() == b.lhs();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

namespace {

int precedence(const JetExpression& e) {
  switch (e.kind()) {
    case Kind::add:
    case Kind::sub: return 1;
    case Kind::mul:
    case Kind::div: return 2;
    case Kind::neg: return 3;
    case Kind::pow: return 4;
    case Kind::constant:
      if (e.value().get_den() != 1) return 2;
      return sgn(e.value()) < 0 ? 3 : 5;
    default: return 5;
  }
}

void print_into(std::string& out, const JetExpression& e, int m, int min_prec) {
  bool paren = precedence(e) < min_prec;
  if (paren) out += '(';
  switch (e.kind()) {
    case Kind::constant: out += to_string(e.value()); break;
    case Kind::time: out += 't'; break;
    case Kind::var:
      out += 'u';
      if (m > 1) {
        out += std::to_string(e.component() + 1);
        out += '_';
      }
      out += std::to_string(e.order());
      break;
    case Kind::add:
    case Kind::sub:
      print_into(out, e.lhs(), m, 1);
      out += e.kind() == Kind::add ? " + " : " - ";
      print_into(out, e.rhs(), m, 2);
      break;
    case Kind::mul:
    case Kind::div:
      print_into(out, e.lhs(), m, 2);
      out += e.kind() == Kind::mul ? '*' : '/';
      print_into(out, e.rhs(), m, 3);
      break;
    case Kind::neg:
      out += '-';
      print_into(out, e.lhs(), m, 3);
      break;
    case Kind::pow:
      print_into(out, e.lhs(), m, 5);
      out += '^';
      out += std::to_string(e.exponent());
      break;
  }
  if (paren) out += ')';
}

class Parser {
 public:
  Parser(std::string_view src, int m, int n, std::size_t offset) : s_(src), m_(m), n_(n), offset_(offset) {}

  JetExpression parse() {
    JetExpression e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, offset_ + pos_); }
  [[noreturn]] void fail_here(const std::string& what) {
    skip();
    if (pos_ == s_.size()) fail(what + " (end of input)");
    fail(what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail_here(std::string("expected '") + c + "'");
  }
  bool at_digit() const { return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])); }

  Z digits() {
    std::size_t start = pos_;
    while (at_digit()) ++pos_;
    return Z(std::string(s_.substr(start, pos_ - start)));
  }
  int small_integer(const char* what) {
    std::size_t start = pos_;
    Z z = digits();
    if (!z.fits_sint_p() || z > 1000000) {
      pos_ = start;
      fail(std::string(what) + " too large");
    }
    return static_cast<int>(z.get_si());
  }

  JetExpression expr() {
    JetExpression e = term();
    for (;;) {
      if (accept('+')) e = e + term();
      else if (accept('-')) e = e - term();
      else return e;
    }
  }

  JetExpression term() {
    JetExpression e = factor();
    for (;;) {
      if (accept('*')) e = e * factor();
      else if (accept('/')) e = e / factor();
      else return e;
    }
  }

  JetExpression factor() {
    if (accept('-')) return -factor();
    return power();
  }

  JetExpression power() {
    JetExpression base = primary();
    if (!accept('^')) return base;
    skip();
    bool negative = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    if (!at_digit()) fail_here("expected integer exponent");
    int k = small_integer("exponent");
    return pow(base, negative ? -k : k);
  }

  JetExpression primary() {
    skip();
    if (pos_ == s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return JetExpression::constant(Q(digits()));
    if (c == '(') {
      ++pos_;
      JetExpression e = expr();
      expect(')');
      return e;
    }
    if (c == 't' && !ident_continues(pos_ + 1)) {
      ++pos_;
      return JetExpression::time();
    }
    if (c == 'u') return jet_variable();
    if (c == 'D' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '(') return derivative_call();
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  bool ident_continues(std::size_t p) const {
    return p < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p])) || s_[p] == '_');
  }

  JetExpression make_var(int component, int order, std::size_t at) {
    if (component < 1 || component > m_) {
      pos_ = at;
      fail("component " + std::to_string(component) + " out of range 1.." + std::to_string(m_));
    }
    if (order > n_) {
      pos_ = at;
      fail("derivative order " + std::to_string(order) + " exceeds " + std::to_string(n_));
    }
    return JetExpression::var(component - 1, order);
  }

  // Primes or _k after the name.
  int derivative_suffix(bool& present) {
    present = false;
    int primes = 0;
    while (pos_ < s_.size() && s_[pos_] == '\'') {
      ++primes;
      ++pos_;
    }
    if (primes > 0) {
      present = true;
      return primes;
    }
    if (pos_ < s_.size() && s_[pos_] == '_') {
      ++pos_;
      if (!at_digit()) fail("expected derivative order after '_'");
      present = true;
      return small_integer("derivative order");
    }
    return 0;
  }

  JetExpression jet_variable() {
    std::size_t at = pos_;
    ++pos_;
    if (m_ == 1) {
      int order = 0;
      bool has_digits = at_digit();
      if (has_digits) order = small_integer("derivative order");
      bool suffix = false;
      int extra = derivative_suffix(suffix);
      if (has_digits && suffix) {
        pos_ = at;
        fail("ambiguous jet variable");
      }
      if (ident_continues(pos_)) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
      return make_var(1, order + extra, at);
    }
    if (!at_digit()) fail("expected component index after 'u'");
    int component = small_integer("component");
    bool suffix = false;
    int order = derivative_suffix(suffix);
    if (ident_continues(pos_)) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return make_var(component, order, at);
  }

  // D(u, k) or D(u<a>, k).
  JetExpression derivative_call() {
    std::size_t at = pos_;
    pos_ += 2;
    skip();
    if (pos_ == s_.size() || s_[pos_] != 'u') fail_here("expected 'u'");
    ++pos_;
    int component = 1;
    if (at_digit()) component = small_integer("component");
    else if (m_ > 1) fail("expected component index after 'u'");
    expect(',');
    skip();
    if (!at_digit()) fail_here("expected derivative order");
    int order = small_integer("derivative order");
    expect(')');
    return make_var(component, order, at);
  }

  std::string_view s_;
  int m_, n_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

}  // namespace

JetExpression parse_expression(std::string_view src, int m, int n) {
  if (m < 1 || n < 0) throw std::invalid_argument("parse_expression needs m >= 1 and n >= 0");
  return Parser(src, m, n, 0).parse();
}

std::vector<JetExpression> parse_system(std::string_view src, int m, int n) {
  if (m < 1 || n < 0) throw std::invalid_argument("parse_system needs m >= 1 and n >= 0");
  std::vector<JetExpression> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t end = src.find(';', start);
    std::string_view piece = src.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    if (static_cast<int>(out.size()) == m) throw ParseError("expected " + std::to_string(m) + " right-hand sides", start);
    out.push_back(Parser(piece, m, n, start).parse());
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  if (static_cast<int>(out.size()) != m)
    throw ParseError("expected " + std::to_string(m) + " right-hand sides, got " + std::to_string(out.size()), src.size());
  return out;
}

std::string print(const JetExpression& e, int m) {
  std::string out;
  print_into(out, e, m, 0);
  return out;
}

JetExpression normalize(const JetExpression& e) {
  switch (e.kind()) {
    case Kind::constant:
    case Kind::time:
    case Kind::var: return e;
    case Kind::add: return normalize(e.lhs()) + normalize(e.rhs());
    case Kind::sub: return normalize(e.lhs()) - normalize(e.rhs());
    case Kind::mul: return normalize(e.lhs()) * normalize(e.rhs());
    case Kind::div: return normalize(e.lhs()) / normalize(e.rhs());
    case Kind::neg: return -normalize(e.lhs());
    case Kind::pow: return pow(normalize(e.lhs()), e.exponent());
  }
  return e;
}

JetExpression partial_derivative(const JetExpression& e, const JetVariable& v) {
  using E = JetExpression;
  switch (e.kind()) {
    case Kind::constant: return E::constant(0);
    case Kind::time: return E::constant(v.is_time ? 1 : 0);
    case Kind::var:
      return E::constant(!v.is_time && v.component == e.component() && v.order == e.order() ? 1 : 0);
    case Kind::add: return partial_derivative(e.lhs(), v) + partial_derivative(e.rhs(), v);
    case Kind::sub: return partial_derivative(e.lhs(), v) - partial_derivative(e.rhs(), v);
    case Kind::neg: return -partial_derivative(e.lhs(), v);
    case Kind::mul:
      return partial_derivative(e.lhs(), v) * e.rhs() + e.lhs() * partial_derivative(e.rhs(), v);
    case Kind::div: {
      E da = partial_derivative(e.lhs(), v), db = partial_derivative(e.rhs(), v);
      if (db.is_constant(0)) return da / e.rhs();
      return (da * e.rhs() - e.lhs() * db) / pow(e.rhs(), 2);
    }
    case Kind::pow: {
      int k = e.exponent();
      return E::constant(k) * pow(e.lhs(), k - 1) * partial_derivative(e.lhs(), v);
    }
  }
  return E::constant(0);
}

JetExpression total_derivative(const JetExpression& e, const std::vector<JetExpression>& f, int n) {
  JetExpression out = partial_derivative(e, JetVariable::time());
  int m = static_cast<int>(f.size());
  for (int a = 0; a < m; ++a) {
    for (int k = 0; k <= n; ++k) {
      JetExpression d = partial_derivative(e, JetVariable::u(a, k));
      if (d.is_constant(0)) continue;
      out = out + d * (k < n ? JetExpression::var(a, k + 1) : f[static_cast<std::size_t>(a)]);
    }
  }
  return out;
}

namespace {

Q eval_jet(const JetExpression& e, const JetPoint& p) {
  switch (e.kind()) {
    case Kind::constant: return e.value();
    case Kind::time: return p.t0;
    case Kind::var:
      if (e.component() >= p.m() || e.order() > p.n())
        throw std::invalid_argument("jet point does not cover " + print(e, p.m()));
      return p.u[static_cast<std::size_t>(e.component())][static_cast<std::size_t>(e.order())];
    case Kind::add: return eval_jet(e.lhs(), p) + eval_jet(e.rhs(), p);
    case Kind::sub: return eval_jet(e.lhs(), p) - eval_jet(e.rhs(), p);
    case Kind::mul: return eval_jet(e.lhs(), p) * eval_jet(e.rhs(), p);
    case Kind::neg: return -eval_jet(e.lhs(), p);
    case Kind::div: {
      Q den = eval_jet(e.rhs(), p);
      if (sgn(den) == 0) throw EvaluationError("division by zero", print(e.rhs(), p.m()));
      return eval_jet(e.lhs(), p) / den;
    }
    case Kind::pow: {
      Q base = eval_jet(e.lhs(), p);
      int k = e.exponent();
      if (k < 0) {
        if (sgn(base) == 0) throw EvaluationError("negative power of zero", print(e.lhs(), p.m()));
        base = 1 / base;
        k = -k;
      }
      Q r = 1;
      for (int i = 0; i < k; ++i) r *= base;
      return r;
    }
  }
  return 0;
}

class SeriesEvaluator {
 public:
  SeriesEvaluator(const Q& t0, const std::vector<std::vector<TruncatedSeries>>& u, int order)
      : t0_(t0), u_(u), order_(order) {
    for (const auto& comp : u)
      for (const auto& s : comp) order_ = std::min(order_, s.order());
  }

  TruncatedSeries eval(const JetExpression& e) {
    if (order_ < 0) return {};
    auto it = memo_.find(e.id());
    if (it != memo_.end()) return it->second;
    TruncatedSeries r = compute(e);
    memo_.emplace(e.id(), r);
    return r;
  }

 private:
  int m() const { return static_cast<int>(u_.size()); }

  TruncatedSeries compute(const JetExpression& e) {
    switch (e.kind()) {
      case Kind::constant: return TruncatedSeries::constant(e.value(), order_);
      case Kind::time: {
        TruncatedSeries t = TruncatedSeries::variable(order_);
        t[0] = t0_;
        return t;
      }
      case Kind::var: {
        if (e.component() >= m() || e.order() >= static_cast<int>(u_[static_cast<std::size_t>(e.component())].size()))
          throw std::invalid_argument("series jet does not cover " + print(e, m()));
        return u_[static_cast<std::size_t>(e.component())][static_cast<std::size_t>(e.order())].truncate(order_);
      }
      case Kind::add: return eval(e.lhs()) + eval(e.rhs());
      case Kind::sub: return eval(e.lhs()) - eval(e.rhs());
      case Kind::mul: return eval(e.lhs()) * eval(e.rhs());
      case Kind::neg: return -eval(e.lhs());
      case Kind::div: {
        TruncatedSeries den = eval(e.rhs());
        if (sgn(den[0]) == 0) throw EvaluationError("denominator vanishes along the jet", print(e.rhs(), m()));
        return eval(e.lhs()) / den;
      }
      case Kind::pow: {
        TruncatedSeries base = eval(e.lhs());
        if (e.exponent() < 0 && sgn(base[0]) == 0)
          throw EvaluationError("negative power vanishes along the jet", print(e.lhs(), m()));
        return base.pow(e.exponent());
      }
    }
    return {};
  }

  Q t0_;
  const std::vector<std::vector<TruncatedSeries>>& u_;
  int order_;
  std::unordered_map<const void*, TruncatedSeries> memo_;
};

}  // namespace

Q evaluate_at_jet(const JetExpression& e, const JetPoint& p) { return eval_jet(e, p); }

TruncatedSeries evaluate_along(const JetExpression& e, const Q& t0,
                               const std::vector<std::vector<TruncatedSeries>>& u, int order) {
  SeriesEvaluator ev(t0, u, order);
  return ev.eval(e);
}

std::vector<TruncatedSeries> formal_solve(const std::vector<JetExpression>& f, const JetPoint& p, int N) {
  const int m = static_cast<int>(f.size());
  const int n = p.n();
  if (p.m() != m) throw std::invalid_argument("formal_solve: jet point has the wrong number of components");
  if (n < 0 || N < n) throw std::invalid_argument("formal_solve: order below the jet order");
  std::vector<std::vector<Q>> c(static_cast<std::size_t>(m), std::vector<Q>(static_cast<std::size_t>(N) + 1));
  for (int a = 0; a < m; ++a)
    for (int k = 0; k <= n; ++k)
      c[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)] =
          p.u[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)] / factorial(k);
  for (int j = 0; n + 1 + j <= N; ++j) {
    std::vector<std::vector<TruncatedSeries>> jets(static_cast<std::size_t>(m));
    for (int a = 0; a < m; ++a) {
      const auto& ca = c[static_cast<std::size_t>(a)];
      TruncatedSeries s(std::vector<Q>(ca.begin(), ca.begin() + n + j + 1));
      for (int k = 0; k <= n; ++k) {
        jets[static_cast<std::size_t>(a)].push_back(s.truncate(j));
        s = s.derivative();
      }
    }
    Q scale = factorial(j) / factorial(n + 1 + j);
    for (int a = 0; a < m; ++a) {
      TruncatedSeries v = evaluate_along(f[static_cast<std::size_t>(a)], p.t0, jets, j);
      c[static_cast<std::size_t>(a)][static_cast<std::size_t>(n + 1 + j)] = v[j] * scale;
    }
  }
  std::vector<TruncatedSeries> out;
  for (auto& ca : c) out.emplace_back(std::move(ca));
  return out;
}

std::vector<std::vector<TruncatedSeries>> jet_series(const std::vector<TruncatedSeries>& u, int n) {
  std::vector<std::vector<TruncatedSeries>> out;
  for (const auto& s : u) {
    std::vector<TruncatedSeries> row;
    TruncatedSeries d = s;
    for (int k = 0; k <= n; ++k) {
      row.push_back(d);
      if (k < n) d = d.derivative();
    }
    out.push_back(std::move(row));
  }
  return out;
}

Polynomial Polynomial::constant(const Q& c) {
  Polynomial p;
  p.add({}, c);
  return p;
}

Polynomial Polynomial::variable(std::size_t index) {
  Polynomial p;
  Monomial mono(index + 1, 0);
  mono[index] = 1;
  p.add(std::move(mono), 1);
  return p;
}

void Polynomial::add(Monomial mono, const Q& c) {
  while (!mono.empty() && mono.back() == 0) mono.pop_back();
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(std::move(mono), c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial r = a;
  for (const auto& [mono, c] : b.terms_) r.add(mono, c);
  return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  Polynomial r = a;
  for (const auto& [mono, c] : b.terms_) r.add(mono, -c);
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Polynomial::Monomial mono(std::max(ma.size(), mb.size()), 0);
      for (std::size_t i = 0; i < ma.size(); ++i) mono[i] += ma[i];
      for (std::size_t i = 0; i < mb.size(); ++i) mono[i] += mb[i];
      r.add(std::move(mono), ca * cb);
    }
  }
  return r;
}

RationalFunction to_rational_function(const JetExpression& e, int n) {
  switch (e.kind()) {
    case Kind::constant: return {Polynomial::constant(e.value()), Polynomial::constant(1)};
    case Kind::time: return {Polynomial::variable(0), Polynomial::constant(1)};
    case Kind::var:
      return {Polynomial::variable(1 + static_cast<std::size_t>(e.component()) * static_cast<std::size_t>(n + 1) +
                                   static_cast<std::size_t>(e.order())),
              Polynomial::constant(1)};
    case Kind::add:
    case Kind::sub: {
      auto a = to_rational_function(e.lhs(), n), b = to_rational_function(e.rhs(), n);
      Polynomial x = a.num * b.den, y = b.num * a.den;
      return {e.kind() == Kind::add ? x + y : x - y, a.den * b.den};
    }
    case Kind::mul: {
      auto a = to_rational_function(e.lhs(), n), b = to_rational_function(e.rhs(), n);
      return {a.num * b.num, a.den * b.den};
    }
    case Kind::div: {
      auto a = to_rational_function(e.lhs(), n), b = to_rational_function(e.rhs(), n);
      if (b.num.is_zero()) throw std::domain_error("rational function with zero denominator");
      return {a.num * b.den, a.den * b.num};
    }
    case Kind::neg: {
      auto a = to_rational_function(e.lhs(), n);
      return {Polynomial::constant(0) - a.num, a.den};
    }
    case Kind::pow: {
      auto a = to_rational_function(e.lhs(), n);
      int k = e.exponent();
      if (k < 0) {
        if (a.num.is_zero()) throw std::domain_error("negative power of zero");
        std::swap(a.num, a.den);
        k = -k;
      }
      RationalFunction r;
      r.num = Polynomial::constant(1);
      for (int i = 0; i < k; ++i) r = {r.num * a.num, r.den * a.den};
      return r;
    }
  }
  return {};
}

}  // namespace cclass
