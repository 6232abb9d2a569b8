#include "cclass/wilczynski.hpp"

#include <doctest.h>

using namespace cclass;

namespace {

MatrixSeries scalar(const TruncatedSeries& s) { return MatrixSeries::scalar(s, 1); }

LinearSystem scalar_system(int n, std::vector<TruncatedSeries> P) {
  LinearSystem sys;
  sys.m = 1;
  sys.n = n;
  sys.t0 = 0;
  for (auto& p : P) sys.P.push_back(scalar(p));
  return sys;
}

// Θ coefficient of P_{n-r+j}^{(j-1)}, written out independently of the library.
Q theta_coefficient(int n, int r, int j) {
  Q c = factorial(2 * r - j - 1) * factorial(n - r + j) / (factorial(r - j) * factorial(j - 1));
  return j % 2 ? -c : c;
}

std::vector<JetExpression> parse(const char* s, int m, int n) { return parse_system(s, m, n); }

}  // namespace

TEST_SUITE("wilczynski") {

TEST_CASE("constant coefficient quintic") {
  const int N = 6;
  auto zero = TruncatedSeries::constant(0, N);
  auto sys = scalar_system(4, {TruncatedSeries::constant(1, N), zero, zero, zero, zero});
  auto v = theta_invariants(sys);
  CHECK(v.theta.at(5)[0](0, 0) == theta_coefficient(4, 5, 1));
  CHECK(v.theta.at(5)[0](0, 0) == -1680);
  for (int r = 2; r <= 4; ++r) CHECK(v.flat.at(r));
  CHECK_FALSE(v.flat.at(5));
}

TEST_CASE("cancellation in the third invariant") {
  // n = 2, P1 = t^2, P0 = t: -12 P0 + 6 P1' = 0
  const int N = 8;
  auto tau = TruncatedSeries::variable(N);
  auto sys = scalar_system(2, {tau, tau * tau, TruncatedSeries::constant(0, N)});
  auto v = theta_raw(sys);
  CHECK(theta_coefficient(2, 3, 1) == -12);
  CHECK(theta_coefficient(2, 3, 2) == 6);
  CHECK(v.theta.at(3).is_zero());
  CHECK_THROWS_AS(theta_invariants(sys), NotLaguerreForsyth);
}

TEST_CASE("precondition names the offending coefficient") {
  const int N = 5;
  auto tau = TruncatedSeries::variable(N);
  auto zero = TruncatedSeries::constant(0, N);
  try {
    theta_invariants(scalar_system(3, {zero, zero, zero, tau * tau}));
    FAIL("expected NotLaguerreForsyth");
  } catch (const NotLaguerreForsyth& e) {
    CHECK(e.series_index() == 2);
  }
}

TEST_CASE("reduction leaves a Laguerre-Forsyth system alone") {
  const int N = 8;
  auto tau = TruncatedSeries::variable(N);
  auto zero = TruncatedSeries::constant(0, N);
  auto sys = scalar_system(3, {tau * tau + TruncatedSeries::constant(1, N), tau, zero, zero});
  auto r = lf_reduce(sys);
  CHECK(r.record.M == MatrixSeries::identity(1, r.record.M.order()));
  CHECK(r.record.Lambda == TruncatedSeries::variable(r.record.Lambda.order()));
  for (int i = 0; i <= 3; ++i) CHECK(r.reduced.P[i] == sys.P[i].truncate(r.reduced.P[i].order()));
}

TEST_CASE("reduction is checked by substituting back") {
  const int N = 10;
  auto tau = TruncatedSeries::variable(N);
  auto one = TruncatedSeries::constant(1, N);
  LinearSystem sys;
  sys.m = 2;
  sys.n = 2;
  sys.t0 = 1;
  sys.P = {MatrixSeries::from_entries({{tau, one}, {one - tau, 2 * tau * tau}}),
           MatrixSeries::from_entries({{one, tau}, {tau, 3 * one}}),
           MatrixSeries::from_entries({{tau, one + tau}, {2 * one, one}})};
  LfOptions opt;
  opt.lambda_slope = 2;
  opt.w_slope = Q(1, 3);
  auto r = lf_reduce(sys, opt);
  CHECK(r.reduced.P[2].is_zero());
  CHECK(r.reduced.P[1].trace().is_zero());
  auto check = substitute_back(sys, r);
  CHECK(check.residual_zero);
  CHECK(check.order >= 0);

  auto corrupted = r;
  corrupted.reduced.P[0][0](0, 1) += 1;
  CHECK_FALSE(substitute_back(sys, corrupted).residual_zero);
}

TEST_CASE("linearization of a linear equation is the equation") {
  auto f = parse("t*u1 - 2*u0 + u2", 1, 2);
  JetPoint p{3, {{1, -1, 2}}};
  auto sys = linearize_along(f, p, 6);
  CHECK(sys.order() >= 6);
  auto tau = TruncatedSeries::variable(sys.order());
  CHECK(sys.P[0].entry(0, 0) == TruncatedSeries::constant(-2, sys.order()));
  CHECK(sys.P[1].entry(0, 0) == TruncatedSeries::constant(3, sys.order()) + tau);
  CHECK(sys.P[2].entry(0, 0) == TruncatedSeries::constant(1, sys.order()));
}

TEST_CASE("verdict does not depend on the reduction constants") {
  auto f = parse("5*u3*u4/u2 - 40/9*u3^3/u2^2", 1, 4);
  auto g = parse("u0 + u3*u4", 1, 4);
  JetPoint p{1, {{1, 2, -1, 3, 1}}};
  WilczynskiOptions a, b;
  b.lf.lambda_slope = -3;
  b.lf.w_slope = 2;
  b.lf.mu_initial = Matrix::identity(1);
  (*b.lf.mu_initial)(0, 0) = 5;
  CHECK(generalized_wilczynski(f, p, 6, a).all_flat());
  CHECK(generalized_wilczynski(f, p, 6, b).all_flat());
  auto ga = generalized_wilczynski(g, p, 6, a);
  auto gb = generalized_wilczynski(g, p, 6, b);
  CHECK_FALSE(ga.all_flat());
  CHECK(ga.flat == gb.flat);
}

TEST_CASE("literal variant agrees when the linearization is already reduced") {
  auto f = parse("t^2*u0 + u0^2", 1, 3);
  JetPoint p{0, {{1, 0, 2, -1}}};
  auto a = generalized_wilczynski(f, p, 6);
  WilczynskiOptions lit;
  lit.literal = true;
  auto b = generalized_wilczynski(f, p, 6, lit);
  REQUIRE(a.order == b.order);
  for (int r = 2; r <= 4; ++r) CHECK(a.theta.at(r) == b.theta.at(r));
}

TEST_CASE("certified order is at least the requested one") {
  auto f = parse("u1^3", 1, 2);
  JetPoint p{0, {{0, 1, 1}}};
  auto v = generalized_wilczynski(f, p, 5);
  CHECK(v.order == 5);
  for (const auto& [r, th] : v.theta) CHECK(th.order() == 5);
}

TEST_CASE("flatness verdicts") {
  FlatnessConfig cfg;
  cfg.samples = 3;
  CHECK(flatness_verdict(parse("3*u2^2/(2*u1)", 1, 2), 2, cfg).verdict == Verdict::flat);
  auto rep = flatness_verdict(parse("3*u2", 1, 2), 2, cfg);
  CHECK(rep.verdict == Verdict::not_flat);
  REQUIRE(rep.witness);
  CHECK(rep.witness->sample == 0);
  CHECK(rep.witness->r == 3);
  CHECK(rep.witness->series_index == 0);
}

TEST_CASE("singular everywhere is inconclusive") {
  FlatnessConfig cfg;
  cfg.samples = 2;
  cfg.max_attempts = 3;
  auto rep = flatness_verdict(parse("1/(u1 - u1)", 1, 2), 2, cfg);
  CHECK(rep.verdict == Verdict::inconclusive);
  for (const auto& s : rep.samples) CHECK(s.singular);
}

TEST_CASE("output is independent of the thread count") {
  auto f = parse("u3*u2/u1", 1, 3);
  FlatnessConfig one, two;
  one.samples = two.samples = 4;
  one.threads = 1;
  two.threads = 2;
  CHECK(to_json(flatness_verdict(f, 3, one)).dump() == to_json(flatness_verdict(f, 3, two)).dump());
}

}
