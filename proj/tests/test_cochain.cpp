#include "cclass/cochain.hpp"

#include <doctest.h>

#include <random>

using namespace cclass;

namespace {

Cochain random_cochain(const AlgebraPtr& g, ComplexTag tag, int k, std::mt19937& rng) {
  Cochain c(g, tag, k);
  std::uniform_int_distribution<int> d(-3, 3);
  for (auto& x : c.coords()) x = d(rng);
  return c;
}

const ComplexTag all_tags[] = {ComplexTag::full, ComplexTag::a_coeff, ComplexTag::gminus, ComplexTag::horizontal};

}  // namespace

TEST_SUITE("cochain") {

TEST_CASE("differentials square to zero") {
  std::mt19937 rng(1);
  for (auto [m, n] : {std::pair{1, 3}, std::pair{2, 2}}) {
    auto g = build_ode_algebra(m, n);
    for (int k = 0; k <= 2; ++k) {
      for (auto tag : {ComplexTag::full, ComplexTag::a_coeff}) {
        auto d1 = differential_matrix(g, tag, k);
        auto d2 = differential_matrix(g, tag, k + 1);
        CHECK_MESSAGE(((*d2) * (*d1)).is_zero(), to_string(tag) << " k=" << k);
      }
      auto phi = random_cochain(g, ComplexTag::gminus, k, rng);
      CHECK(d_gminus(d_gminus(phi)).is_zero());
      CHECK(d_g(d_g(random_cochain(g, ComplexTag::full, k, rng))).is_zero());
    }
  }
}

TEST_CASE("codifferential is the adjoint of the differential") {
  std::mt19937 rng(2);
  auto g = build_ode_algebra(1, 3);
  for (auto tag : all_tags)
    for (int k = 1; k <= 2; ++k) {
      auto phi = random_cochain(g, tag, k - 1, rng);
      auto psi = random_cochain(g, tag, k, rng);
      Cochain dphi = tag == ComplexTag::horizontal ? d_gminus(retag(phi, ComplexTag::gminus))
                                                   : Cochain(g, tag, k, differential_matrix(g, tag, k - 1)->apply(phi.coords()));
      Cochain dpsi = tag == ComplexTag::horizontal ? dstar(psi)
                                                   : Cochain(g, tag, k - 1, codifferential_matrix(g, tag, k)->apply(psi.coords()));
      if (tag == ComplexTag::horizontal) dphi = retag(dphi, ComplexTag::horizontal);
      CHECK_MESSAGE(inner_product(dphi, psi) == inner_product(phi, dpsi), to_string(tag) << " k=" << k);
    }
}

TEST_CASE("split and assemble are inverse") {
  std::mt19937 rng(3);
  auto g = build_ode_algebra(2, 2);
  for (int k = 1; k <= 3; ++k) {
    auto phi = random_cochain(g, ComplexTag::gminus, k, rng);
    auto s = split(phi);
    CHECK(s.phi1.degree() == k - 1);
    CHECK(s.phi2.degree() == k);
    CHECK(assemble(s, ComplexTag::gminus) == phi);
  }
}

TEST_CASE("block form of d on g_-") {
  std::mt19937 rng(4);
  auto g = build_ode_algebra(1, 4);
  for (int k = 1; k <= 2; ++k) {
    auto phi = random_cochain(g, ComplexTag::gminus, k, rng);
    auto lhs = split(d_gminus(phi));
    auto rhs = d_gminus(split(phi));
    CHECK(lhs.phi1 == rhs.phi1);
    CHECK(lhs.phi2 == rhs.phi2);
  }
}

TEST_CASE("evaluate the basis 2-form on swapped arguments") {
  auto g = build_ode_algebra(1, 3);
  const auto& s = g->require_ode();
  const auto& space = *CochainSpace::get(g, ComplexTag::horizontal, 2);
  std::size_t v = s.v(0, 0);
  auto phi = Cochain::basis(g, ComplexTag::horizontal, 2, space.index(space.wedge().rank_of({s.x, v}), s.h));
  auto X = AlgebraElement::basis(g, s.x), V = AlgebraElement::basis(g, v), H = AlgebraElement::basis(g, s.h);
  CHECK(evaluate(phi, {V, X}) == Q(-1) * H);
  CHECK(evaluate(phi, {X, V}) == H);
  CHECK(evaluate(phi, {X, X}).is_zero());
}

TEST_CASE("d on 0-cochains is the adjoint action") {
  auto g = build_ode_algebra(1, 3);
  const auto& s = g->require_ode();
  auto y = Cochain::basis(g, ComplexTag::full, 0, s.y);
  auto dy = d_g(y);
  for (std::size_t i = 0; i < g->dim(); ++i) {
    auto b = AlgebraElement::basis(g, i);
    CHECK(evaluate(dy, {b}) == bracket(b, AlgebraElement::basis(g, s.y)));
  }
}

TEST_CASE("codifferential image in degree one is C1(a,q)") {
  for (auto [m, n] : {std::pair{1, 3}, std::pair{2, 2}, std::pair{1, 5}}) {
    auto g = build_ode_algebra(m, n);
    const auto& s = g->require_ode();
    auto dstar_a = codifferential_matrix(g, ComplexTag::a_coeff, 2);
    const auto& c1 = *CochainSpace::get(g, ComplexTag::a_coeff, 1);
    std::vector<bool> in_q(g->dim(), false);
    for (std::size_t i : s.q()) in_q[i] = true;
    for (const auto& col : dstar_a->columns())
      for (const auto& [coord, c] : col) CHECK(in_q[c1.value(coord)]);
    CHECK(rank(*dstar_a) == s.a.size() * s.q().size());
  }
}

TEST_CASE("homogeneous components add up") {
  std::mt19937 rng(5);
  auto g = build_ode_algebra(1, 3);
  auto phi = random_cochain(g, ComplexTag::horizontal, 2, rng);
  Cochain sum(g, ComplexTag::horizontal, 2);
  for (int ell : homogeneities(phi.space())) sum += homogeneous_component(phi, ell);
  CHECK(sum == phi);
}

TEST_CASE("tags round trip through text") {
  for (auto tag : all_tags) CHECK(complex_tag_from_string(to_string(tag)) == tag);
  CHECK_THROWS(complex_tag_from_string("bogus"));
}

}

TEST_SUITE("cochain") {

TEST_CASE("block form of the horizontal codifferential") {
  std::mt19937 rng(6);
  auto g = build_ode_algebra(2, 2);
  for (int k = 1; k <= 2; ++k) {
    auto psi = random_cochain(g, ComplexTag::horizontal, k, rng);
    auto lhs = split(dstar(psi));
    auto rhs = dstar_block(split(psi));
    CHECK(lhs.phi1 == rhs.phi1);
    CHECK(lhs.phi2 == rhs.phi2);
  }
}

}
