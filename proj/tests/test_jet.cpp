#include "cclass/jet.hpp"

#include <doctest.h>

using namespace cclass;

namespace {

JetPoint point(Q t0, std::vector<std::vector<Q>> u) { return JetPoint{std::move(t0), std::move(u)}; }

std::size_t error_offset(std::string_view src, int m, int n) {
  try {
    parse_system(src, m, n);
  } catch (const ParseError& e) {
    return e.position();
  }
  FAIL("expected a parse error for " << src);
  return 0;
}

}  // namespace

TEST_SUITE("jet") {

TEST_CASE("printer output parses back to the same tree") {
  const char* sources[] = {"5*u3*u4/u2 - 40/9*u3^3/u2^2",
                           "-(u1 - t)^2 + 3",
                           "u0/(u1*u2) - -u2",
                           "t^3*u1 - 1/2",
                           "(u2 + u1)^-2",
                           "-u1^2",
                           "2^3 - u0"};
  for (const char* s : sources) {
    auto e = parse_expression(s, 1, 4);
    auto printed = print(e, 1);
    CHECK_MESSAGE(parse_expression(printed, 1, 4) == e, s << " -> " << printed);
    CHECK(to_rational_function(parse_expression(printed, 1, 4), 4) == to_rational_function(e, 4));
  }
  auto sys = parse_system("u1_2 * u2'; t - u2_0", 2, 2);
  REQUIRE(sys.size() == 2);
  for (const auto& e : sys) CHECK(parse_expression(print(e, 2), 2, 2) == e);
}

TEST_CASE("variable spellings") {
  CHECK(parse_expression("u''", 1, 3) == JetExpression::var(0, 2));
  CHECK(parse_expression("u_3", 1, 3) == JetExpression::var(0, 3));
  CHECK(parse_expression("u2", 1, 3) == JetExpression::var(0, 2));
  CHECK(parse_expression("u", 1, 3) == JetExpression::var(0, 0));
  CHECK(parse_expression("D(u, 1)", 1, 3) == JetExpression::var(0, 1));
  CHECK(parse_expression("u2'", 2, 3) == JetExpression::var(1, 1));
  CHECK(parse_expression("D(u2, 3)", 2, 3) == JetExpression::var(1, 3));
}

TEST_CASE("unary minus binds looser than powers") {
  auto e = parse_expression("-u1^2", 1, 2);
  JetPoint p = point(0, {{0, 3, 0}});
  CHECK(evaluate_at_jet(e, p) == -9);
  CHECK(evaluate_at_jet(parse_expression("2^-1", 1, 2), p) == Q(1, 2));
}

TEST_CASE("parse errors report the offset") {
  CHECK(error_offset("u1 + (", 1, 2) == 6);
  CHECK(error_offset("u1 + u7", 1, 2) == 5);
  CHECK(error_offset("u1 $ 2", 1, 2) == 3);
  CHECK(error_offset("u3 + u1", 2, 2) == 0);
  CHECK(error_offset("u1; u1_5", 2, 2) == 4);
  CHECK(error_offset("u2'", 1, 3) == 0);
  CHECK(error_offset("tu", 1, 2) == 0);
  CHECK_THROWS_AS(parse_system("u1", 2, 2), ParseError);
  CHECK_THROWS_AS(parse_system("u1_1; u2_1; u1", 2, 2), ParseError);
}

TEST_CASE("folding constructors") {
  auto u = JetExpression::var(0, 1);
  CHECK((u * JetExpression::constant(1)) == u);
  CHECK((u + JetExpression()) == u);
  CHECK((u * JetExpression()).is_constant(0));
  CHECK((JetExpression::constant(2) * JetExpression::constant(3)).is_constant(6));
  CHECK(pow(u, 1) == u);
  CHECK(pow(u, 0).is_constant(1));
}

TEST_CASE("partial and total derivatives") {
  auto f = parse_expression("u2^2*u0 + t*u1", 1, 2);
  CHECK(to_rational_function(partial_derivative(f, JetVariable::u(0, 2)), 2) ==
        to_rational_function(parse_expression("2*u2*u0", 1, 2), 2));
  CHECK(to_rational_function(partial_derivative(f, JetVariable::time()), 2) ==
        to_rational_function(parse_expression("u1", 1, 2), 2));
  auto q = parse_expression("u1/u2", 1, 2);
  CHECK(to_rational_function(partial_derivative(q, JetVariable::u(0, 2)), 2) ==
        to_rational_function(parse_expression("-u1/u2^2", 1, 2), 2));

  // d/dt u_k = u_{k+1}, d/dt u_n = f
  std::vector<JetExpression> rhs = {parse_expression("u0*u2", 1, 2)};
  CHECK(to_rational_function(total_derivative(JetExpression::var(0, 1), rhs, 2), 2) ==
        to_rational_function(JetExpression::var(0, 2), 2));
  CHECK(to_rational_function(total_derivative(JetExpression::var(0, 2), rhs, 2), 2) ==
        to_rational_function(rhs[0], 2));
  CHECK(to_rational_function(total_derivative(JetExpression::time(), rhs, 2), 2) ==
        to_rational_function(JetExpression::constant(1), 2));
}

TEST_CASE("evaluation at a jet") {
  auto e = parse_expression("u1/(u2 - 2) + t", 1, 2);
  CHECK(evaluate_at_jet(e, point(5, {{0, 3, 4}})) == Q(13, 2));
  CHECK_THROWS_AS(evaluate_at_jet(e, point(0, {{0, 3, 2}})), EvaluationError);
}

TEST_CASE("formal solution of linear equations") {
  // u'' = u with u(0) = 1, u'(0) = 0 is cosh
  std::vector<JetExpression> f = {JetExpression::var(0, 0)};
  auto u = formal_solve(f, point(0, {{1, 0}}), 10);
  REQUIRE(u.size() == 1);
  for (int k = 0; k <= 10; ++k) CHECK(u[0][k] == (k % 2 == 0 ? Q(1) / factorial(k) : Q(0)));

  // u' = t u around t0 = 0: exp(τ²/2)
  auto g = formal_solve({parse_expression("t*u0", 1, 0)}, point(0, {{1}}), 8);
  for (int k = 0; k <= 8; ++k)
    CHECK(g[0][k] == (k % 2 == 0 ? Q(1) / (factorial(k / 2) * Q(1 << (k / 2))) : Q(0)));
}

TEST_CASE("formal solution satisfies a nonlinear equation") {
  // u''' = u''^2/u' through a generic jet; check the residual series vanishes.
  std::vector<JetExpression> f = {parse_expression("u2^2/u1 + t", 1, 2)};
  const int N = 9;
  auto p = point(Q(1, 2), {{2, 3, -1}});
  auto u = formal_solve(f, p, N);
  auto jets = jet_series(u, 2);
  auto rhs = evaluate_along(f[0], p.t0, jets, N - 3);
  auto third = u[0].derivative().derivative().derivative();
  CHECK(third.truncate(N - 3) == rhs.truncate(N - 3));
  CHECK(u[0][0] == 2);
  CHECK(u[0][1] == 3);
  CHECK(u[0][2] == Q(-1, 2));
}

TEST_CASE("singular series evaluation throws") {
  std::vector<JetExpression> f = {parse_expression("1/u1", 1, 1)};
  CHECK_THROWS_AS(formal_solve(f, point(0, {{1, 0}}), 5), EvaluationError);
}

}
