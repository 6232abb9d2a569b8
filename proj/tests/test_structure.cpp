#include "cclass/structure.hpp"

#include <doctest.h>

using namespace cclass;

namespace {

// Clebsch-Gordan: V_a ⊗ V_b = V_{|a-b|} + ... + V_{a+b}.
void add_tensor(std::map<int, int>& out, int a, int b, int mult) {
  for (int k = std::abs(a - b); k <= a + b; k += 2) out[k] += mult;
}

}  // namespace

TEST_SUITE("structure") {

TEST_CASE("Spencer map is injective in the covered range") {
  for (auto [m, n] : {std::pair{1, 3}, std::pair{1, 4}, std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
    auto s = spencer_rank(m, n);
    CHECK_MESSAGE(s.injective, m << "," << n);
    CHECK(s.domain_dim == static_cast<std::size_t>(m * (n + 1) * (3 + m * m)));
    CHECK(s.a_valued_rank == 0);
  }
}

TEST_CASE("the excluded case is computed but flagged") {
  auto p = h1_by_homogeneity(1, 2);
  CHECK(p.outside_paper_scope);
  CHECK_FALSE(p.spencer.injective);
  CHECK(p.spencer.rank == 9);
  CHECK(p.h1_dims_by_homogeneity[1] == 1);
  auto r = structure_report(1, 2);
  CHECK(r.prolongation.outside_paper_scope);
}

TEST_CASE("Tanaka prolongation is full") {
  for (auto [m, n] : {std::pair{1, 3}, std::pair{2, 2}, std::pair{1, 5}}) {
    auto p = h1_by_homogeneity(m, n);
    CHECK(p.tanaka_full);
    for (const auto& [ell, d] : p.h1_dims_by_homogeneity)
      if (ell > 0) CHECK_MESSAGE(d == 0, "homogeneity " << ell);
  }
}

TEST_CASE("H1 does not depend on the basis order") {
  auto g = build_ode_algebra(2, 2);
  std::vector<std::size_t> perm(g->dim());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = perm.size() - 1 - i;
  auto a = h1_by_homogeneity(g);
  auto b = h1_by_homogeneity(g->permuted(perm));
  CHECK(a.h1_dims_by_homogeneity == b.h1_dims_by_homogeneity);
  CHECK(a.spencer.rank == b.spencer.rank);
}

TEST_CASE("reducibility and normalization") {
  for (auto [m, n] : {std::pair{1, 3}, std::pair{2, 2}, std::pair{1, 4}}) {
    auto r = reducibility_check(m, n);
    CHECK(r.ok);
    CHECK(r.proof_identity);
    CHECK(r.certificates == r.kernel_dim);
    auto d = normalization_dims(m, n);
    CHECK(d.im_in_ker);
    CHECK(d.e_in_ker);
  }
}

TEST_CASE("Laplacian is invertible on the image of the codifferential") {
  for (auto [m, n] : {std::pair{1, 3}, std::pair{2, 2}}) {
    auto l = laplacian_on_image(m, n);
    CHECK(l.bijective);
    for (const auto& [ell, dr] : l.dim_and_rank) CHECK(dr.first == dr.second);
  }
}

TEST_CASE("C1(a,q) decomposition matches characters") {
  for (auto [m, n] : {std::pair{1, 3}, std::pair{1, 6}, std::pair{2, 2}, std::pair{2, 4}}) {
    // a* = m V_n, q = V_2 + m^2 V_0
    std::map<int, int> expected;
    add_tensor(expected, n, 2, m);
    add_tensor(expected, n, 0, m * m * m);
    auto dec = c1_aq_decomposition(m, n);
    CHECK_MESSAGE(dec.multiplicities == expected, m << "," << n);
  }
}

TEST_CASE("report serializes") {
  auto r = structure_report(1, 3);
  CHECK(r.all_pass);
  auto j = to_json(r);
  CHECK(j.dump() == to_json(structure_report(1, 3)).dump());
}

}
