#include "cclass/models.hpp"

#include <doctest.h>

using namespace cclass;

namespace {

// Multiplicity of V_k in Λ²V_n from the weight multiset of pairs.
std::map<int, int> wedge2(int n) {
  std::map<int, int> w;
  for (int a = n; a >= -n; a -= 2)
    for (int b = a - 2; b >= -n; b -= 2) w[a + b] += 1;
  std::map<int, int> out;
  while (!w.empty()) {
    int top = w.rbegin()->first, c = w.rbegin()->second;
    out[top] += c;
    for (int k = top; k >= -top; k -= 2)
      if ((w[k] -= c) == 0) w.erase(k);
  }
  return out;
}

int trivial_in(const std::map<int, int>& wedge, int value_weight) {
  auto it = wedge.find(value_weight);
  return it == wedge.end() ? 0 : it->second;
}

const Rank2Type types[] = {Rank2Type::A2, Rank2Type::C2, Rank2Type::G2};

}  // namespace

TEST_SUITE("models") {

TEST_CASE("dimensions, axioms and Cartan matrices") {
  const std::size_t dims[] = {8, 10, 14};
  const int dets[] = {3, 2, 1};
  for (int i = 0; i < 3; ++i) {
    auto m = build_rank2(types[i]);
    CHECK(m.algebra->dim() == dims[i]);
    CHECK(verify_lie_axioms(*m.algebra).ok);
    CHECK(m.cartan == expected_cartan(types[i]));
    CHECK(m.cartan[0][0] == 2);
    CHECK(m.cartan[1][1] == 2);
    CHECK(m.cartan[0][0] * m.cartan[1][1] - m.cartan[0][1] * m.cartan[1][0] == dets[i]);
  }
  auto a2 = build_rank2(Rank2Type::A2).cartan;
  CHECK(a2[0][1] == a2[1][0]);
}

TEST_CASE("type names") {
  CHECK(rank2_type_from_string("G2") == Rank2Type::G2);
  CHECK(rank2_type_from_string("c2") == Rank2Type::C2);
  CHECK_THROWS_AS(rank2_type_from_string("b2"), std::invalid_argument);
}

TEST_CASE("principal sl2 and the complement") {
  const int ns[] = {4, 6, 10};  // twice the height of the highest root
  for (int i = 0; i < 3; ++i) {
    auto m = build_rank2(types[i]);
    auto t = principal_sl2(m);
    CHECK(t.relations_hold);
    auto d = principal_decompose(m);
    CHECK(d.n == ns[i]);
    CHECK(d.direct_sum);
    CHECK(d.v.size() == static_cast<std::size_t>(ns[i] + 1));
    CHECK(m.algebra->dim() == 3 + d.v.size());
    for (int k = 1; k <= d.n; ++k) CHECK(bracket(d.triple.X, d.v[k]) == d.v[k - 1]);
    CHECK(bracket(d.triple.X, d.v[0]).is_zero());
  }
}

TEST_CASE("alpha is sl2-equivariant and invertible") {
  for (auto t : types) {
    auto m = build_rank2(t);
    auto d = principal_decompose(m);
    auto a = embed_alpha(m, d);
    CHECK(a.equivariant);
    for (std::size_t i = 0; i < m.algebra->dim(); ++i) {
      auto b = AlgebraElement::basis(m.algebra, i);
      CHECK(a.inverse(a.apply(b)) == b);
    }
  }
}

TEST_CASE("curvature verdicts") {
  for (auto t : types) {
    auto r = model_curvature(build_rank2(t));
    CHECK(r.normal);
    CHECK(r.insertion_X_zero);
    CHECK(r.regular);
    CHECK(r.strongly_regular == (t != Rank2Type::G2));
    CHECK(r.matches_expected);
  }
  auto g2 = model_curvature(build_rank2(Rank2Type::G2));
  REQUIRE(g2.witness);
  CHECK(g2.witness->degree_i == -8);
  CHECK(g2.witness->degree_j == -9);
  CHECK(g2.witness->output_degree == -11);
}

TEST_CASE("trivial summand counts match characters") {
  for (auto t : types) {
    auto r = model_curvature(build_rank2(t));
    auto w = wedge2(r.n);
    std::map<std::string, int> expected = {{"a", trivial_in(w, r.n)}, {"sl2", trivial_in(w, 2)}, {"gl1", trivial_in(w, 0)}};
    for (const auto& part : r.trivial_summands.parts)
      CHECK_MESSAGE(part.trivial_multiplicity == expected.at(part.values), to_string(t) << " " << part.values);
    Q total = 0;
    for (const auto& part : r.trivial_summands.parts) total += part.projection_norm2;
    CHECK(total <= r.trivial_summands.kappa_norm2);
    CHECK(r.trivial_summands.in_trivial_sum == (total == r.trivial_summands.kappa_norm2));
  }
}

TEST_CASE("sl3 vector fields realize the A2 model") {
  auto r = verify_sl3_realization();
  CHECK(r.brackets_preserved);
  CHECK(r.pairs_checked == 28);
  CHECK(r.image_rank == 8);
  CHECK(r.weights_consistent);
  CHECK(r.failures.empty());
}

}
