#include "cclass/liealg.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace cclass;

namespace {

// Multiplicities of V_k in a module with weight multiset w (character peeling).
std::map<int, int> peel(std::map<int, int> w) {
  std::map<int, int> out;
  while (!w.empty()) {
    int top = w.rbegin()->first;
    int c = w.rbegin()->second;
    out[top] += c;
    for (int k = top; k >= -top; k -= 2) {
      w[k] -= c;
      if (w[k] == 0) w.erase(k);
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("liealg") {

TEST_CASE("dimensions and axioms of g(m,n)") {
  for (int m = 1; m <= 3; ++m)
    for (int n = 2; n <= 5; ++n) {
      auto g = build_ode_algebra(m, n);
      CHECK(g->dim() == static_cast<std::size_t>(3 + m * m + m * (n + 1)));
      auto v = verify_lie_axioms(*g);
      CHECK_MESSAGE(v.ok, "m=" << m << " n=" << n << " " << v.failure);
    }
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(build_ode_algebra(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_ode_algebra(2, 1), std::invalid_argument);
  CHECK(build_ode_algebra(1, 2)->require_ode().outside_main_theorems);
  CHECK_FALSE(build_ode_algebra(2, 2)->require_ode().outside_main_theorems);
}

TEST_CASE("corrupted structure constants are caught") {
  auto g = build_ode_algebra(1, 3);
  const auto& s = g->require_ode();
  auto broken = g->with_raw_bracket(s.x, s.y, SparseVec::unit(s.h, 2));
  CHECK_FALSE(verify_lie_axioms(*broken).ok);
  CHECK(verify_lie_axioms(*broken).failure == "antisymmetry");

  // Antisymmetric but breaks Jacobi: rescale [X, v^1].
  auto xv = g->bracket(s.x, s.v(1, 0));
  auto b2 = g->with_raw_bracket(s.x, s.v(1, 0), Q(2) * xv)->with_raw_bracket(s.v(1, 0), s.x, Q(-2) * xv);
  CHECK_FALSE(verify_lie_axioms(*b2).ok);
}

TEST_CASE("sl2 relations and grading") {
  auto g = build_ode_algebra(2, 3);
  const auto& s = g->require_ode();
  auto X = AlgebraElement::basis(g, s.x), H = AlgebraElement::basis(g, s.h), Y = AlgebraElement::basis(g, s.y);
  CHECK(bracket(H, X) == Q(2) * X);
  CHECK(bracket(H, Y) == Q(-2) * Y);
  CHECK(bracket(X, Y) == H);
  for (std::size_t i = 0; i < g->dim(); ++i)
    for (std::size_t j = 0; j < g->dim(); ++j)
      for (const auto& [t, c] : g->bracket(i, j)) CHECK(g->degree(t) == g->degree(i) + g->degree(j));
}

TEST_CASE("a decomposes as m copies of V_n") {
  for (int m = 1; m <= 2; ++m)
    for (int n = 2; n <= 5; ++n) {
      auto g = build_ode_algebra(m, n);
      const auto& s = g->require_ode();
      auto ad = [&](std::size_t i) { return restrict_to_coords(ad_matrix(AlgebraElement::basis(g, i)), s.a); };
      auto dec = sl2_decompose(ad(s.x), ad(s.h), ad(s.y));
      std::map<int, int> weights;
      for (int k = n; k >= -n; k -= 2) weights[k] += m;
      CHECK(dec.multiplicities == peel(weights));
      CHECK(dec.module_dim == static_cast<std::size_t>(m * (n + 1)));
    }
}

TEST_CASE("permuted basis describes the same algebra") {
  auto g = build_ode_algebra(2, 2);
  std::vector<std::size_t> perm(g->dim());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937 rng(7);
  std::shuffle(perm.begin(), perm.end(), rng);
  auto p = g->permuted(perm);
  CHECK(verify_lie_axioms(*p).ok);
  for (std::size_t i = 0; i < g->dim(); ++i)
    for (std::size_t j = 0; j < g->dim(); ++j) {
      const auto& pb = p->bracket(i, j);
      const auto& gb = g->bracket(perm[i], perm[j]);
      REQUIRE(pb.size() == gb.size());
      for (const auto& [t, c] : pb) CHECK(gb.get(perm[t]) == c);
    }
}

TEST_CASE("transpose is an anti-involution on q") {
  auto g = build_ode_algebra(2, 3);
  for (std::size_t i : g->require_ode().q())
    for (std::size_t j : g->require_ode().q()) {
      auto x = AlgebraElement::basis(g, i), y = AlgebraElement::basis(g, j);
      CHECK(transpose_on_q(transpose_on_q(x)) == x);
      CHECK(transpose_on_q(bracket(x, y)) == bracket(transpose_on_q(y), transpose_on_q(x)));
    }
}

TEST_CASE("json dump is stable") {
  auto a = table_to_json(*build_ode_algebra(1, 3)).dump();
  auto b = table_to_json(*build_ode_algebra(1, 3)).dump();
  CHECK(a == b);
}

}
