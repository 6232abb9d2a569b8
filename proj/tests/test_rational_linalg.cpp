#include "cclass/linalg.hpp"
#include "cclass/series.hpp"

#include <doctest.h>

using namespace cclass;

TEST_SUITE("rational_linalg") {

TEST_CASE("rational text round trip") {
  Q q(6, 4);
  q.canonicalize();
  CHECK(to_string(q) == "3/2");
  CHECK(to_string(Q(-2)) == "-2");
  CHECK(parse_rational("-10/4") == Q(-5, 2));
  CHECK(parse_rational(to_string(Q(123456789, 1000))) == Q(123456789, 1000));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("factorial and binomial against Pascal") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(10) == 3628800);
  for (int n = 1; n < 12; ++n)
    for (int k = 1; k < n; ++k) CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST_CASE("rank and kernel") {
  // columns (1,2,3), (2,4,6), (0,1,1): rank 2, kernel spanned by (2,-1,0)
  SparseMatrix a(3, {SparseVec::from_dense({1, 2, 3}), SparseVec::from_dense({2, 4, 6}),
                     SparseVec::from_dense({0, 1, 1})});
  CHECK(rank(a) == 2);
  auto ker = kernel_basis(a);
  REQUIRE(ker.size() == 1);
  CHECK(a.apply(ker[0]).empty());
  CHECK(ker[0].get(0) == -2 * ker[0].get(1));
  CHECK(ker[0].get(2) == 0);
}

TEST_CASE("echelon membership certificates") {
  Echelon e(3);
  CHECK(e.insert(SparseVec::from_dense({1, 1, 0})));
  CHECK(e.insert(SparseVec::from_dense({0, 1, 1})));
  CHECK_FALSE(e.insert(SparseVec::from_dense({1, 2, 1})));
  auto target = SparseVec::from_dense({2, 5, 3});
  REQUIRE(e.contains(target));
  auto c = e.express(target);
  REQUIRE(c);
  CHECK(c->get(0) == 2);
  CHECK(c->get(1) == 3);
  CHECK_FALSE(e.contains(SparseVec::from_dense({0, 0, 1})));
}

TEST_CASE("series arithmetic identities") {
  const int N = 10;
  auto tau = TruncatedSeries::variable(N);
  auto s = TruncatedSeries::constant(1, N) + 3 * tau + Q(1, 2) * tau * tau;
  CHECK((s * s.inverse()) == TruncatedSeries::constant(1, N));

  auto e = tau.exp();
  for (int k = 0; k <= N; ++k) CHECK(e[k] == Q(1) / factorial(k));
  CHECK(e.derivative() == e.truncate(N - 1));

  auto lam = tau + 2 * tau * tau - Q(1, 3) * tau.pow(3);
  CHECK(lam.compose(lam.reversion()) == tau);
  CHECK(lam.reversion().compose(lam) == tau);

  auto root = s.pow(Q(1, 2));
  CHECK(root * root == s);
  CHECK(s.antiderivative().derivative() == s);
}

TEST_CASE("matrix series inverse") {
  const int N = 6;
  auto tau = TruncatedSeries::variable(N);
  auto one = TruncatedSeries::constant(1, N);
  auto M = MatrixSeries::from_entries({{one + tau, tau * tau}, {2 * tau, one - tau}});
  CHECK(M * M.inverse() == MatrixSeries::identity(2, N));
  CHECK(M.trace() == 2 * one);
}

}
