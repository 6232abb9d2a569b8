#include "cclass/acceptance.hpp"

#include "cclass/models.hpp"
#include "cclass/random.hpp"
#include "cclass/structure.hpp"
#include "cclass/wilczynski.hpp"

#include <chrono>
#include <functional>
#include <sstream>

namespace cclass {

using nlohmann::json;

namespace {

const std::vector<std::pair<int, int>> kTanakaSet{{1, 3}, {1, 4}, {1, 6}, {2, 2}, {3, 2}};
const std::vector<std::pair<int, int>> kComplexSet{{1, 3}, {1, 4}, {2, 2}};

std::string mn(int m, int n) { return "(" + std::to_string(m) + "," + std::to_string(n) + ")"; }

CriterionResult timed(int id, std::string title, double limit, const std::function<void(CriterionResult&)>& body) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  r.limit_seconds = limit;
  r.pass = true;
  auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit > 0 && r.seconds > limit) {
    r.pass = false;
    r.detail += (r.detail.empty() ? "" : "; ") + std::string("time limit exceeded");
  }
  return r;
}

void fail(CriterionResult& r, const std::string& why) {
  r.pass = false;
  if (!r.detail.empty()) r.detail += "; ";
  r.detail += why;
}

Cochain random_cochain(const AlgebraPtr& g, ComplexTag tag, int k, SplitMix64& rng) {
  Cochain c(g, tag, k);
  for (auto& x : c.coords()) x = rng.uniform(-5, 5);
  return c;
}

Cochain apply_d(const Cochain& phi) {
  switch (phi.tag()) {
    case ComplexTag::full: return d_g(phi);
    case ComplexTag::a_coeff: return d_a(phi);
    default: return d_gminus(phi);
  }
}

}  // namespace

CriterionResult criterion_lie_axioms() {
  return timed(1, "Lie axioms for g(m,n) and the A2/C2/G2 models", 10, [](CriterionResult& r) {
    json d = json::object();
    for (auto [m, n] : kTanakaSet) {
      auto v = verify_lie_axioms(*build_ode_algebra(m, n));
      d[mn(m, n)] = v.ok;
      if (!v.ok) fail(r, "g" + mn(m, n) + " fails " + v.failure);
    }
    for (auto t : {Rank2Type::A2, Rank2Type::C2, Rank2Type::G2}) {
      auto model = build_rank2(t);
      auto v = verify_lie_axioms(*model.algebra);
      d[to_string(t)] = v.ok;
      if (!v.ok) fail(r, to_string(t) + " fails " + v.failure);
    }
    r.data = d;
  });
}

CriterionResult criterion_complexes() {
  return timed(2, "d∘d = 0 and <dφ,ψ> = <φ,∂*ψ>", 60, [](CriterionResult& r) {
    json d = json::object();
    SplitMix64 rng{2};
    for (auto [m, n] : kComplexSet) {
      auto g = build_ode_algebra(m, n);
      for (auto tag : {ComplexTag::full, ComplexTag::a_coeff, ComplexTag::gminus}) {
        const std::string key = mn(m, n) + " " + to_string(tag);
        bool dd = true;
        for (int k = 0; k <= 2; ++k)
          if (!((*differential_matrix(g, tag, k + 1)) * (*differential_matrix(g, tag, k))).is_zero()) dd = false;
        int adjoint_ok = 0;
        for (int i = 0; i < 200; ++i) {
          const int k = i % 3;
          Cochain phi = random_cochain(g, tag, k, rng);
          Cochain psi = random_cochain(g, tag, k + 1, rng);
          if (inner_product(apply_d(phi), psi) == inner_product(phi, dstar(psi))) ++adjoint_ok;
        }
        d[key] = {{"dd_zero", dd}, {"adjoint_pairs", adjoint_ok}};
        if (!dd) fail(r, key + ": d∘d ≠ 0");
        if (adjoint_ok != 200) fail(r, key + ": adjointness fails on " + std::to_string(200 - adjoint_ok) + " pairs");
      }
    }
    r.data = d;
  });
}

CriterionResult criterion_block_formulas() {
  return timed(3, "block formulas for ∂* on C²_hor and d on C(g₋,g)", 0, [](CriterionResult& r) {
    json d = json::object();
    for (auto [m, n] : kComplexSet) {
      auto g = build_ode_algebra(m, n);
      std::size_t dstar_checked = 0, dstar_bad = 0;
      for (const auto& phi : wedge_basis(g, 2, ComplexTag::horizontal)) {
        SplitCochain block = dstar_block(split(phi));
        Cochain direct = dstar(phi);
        ++dstar_checked;
        if (!(assemble(block, ComplexTag::horizontal) == direct)) ++dstar_bad;
      }
      std::size_t d_checked = 0, d_bad = 0;
      for (int k = 0; k <= 2; ++k)
        for (const auto& phi : wedge_basis(g, k, ComplexTag::gminus)) {
          ++d_checked;
          if (!(assemble(d_gminus(split(phi)), ComplexTag::gminus) == d_gminus(phi))) ++d_bad;
        }
      d[mn(m, n)] = {{"dstar_checked", dstar_checked}, {"dstar_mismatches", dstar_bad},
                     {"d_checked", d_checked}, {"d_mismatches", d_bad}};
      if (dstar_bad) fail(r, mn(m, n) + ": ∂* block form disagrees");
      if (d_bad) fail(r, mn(m, n) + ": d block form disagrees");
    }
    r.data = d;
  });
}

CriterionResult criterion_tanaka_spencer() {
  return timed(4, "Spencer injectivity and H¹ vanishing in positive homogeneity", 120, [](CriterionResult& r) {
    json d = json::object();
    for (auto [m, n] : kTanakaSet) {
      auto p = h1_by_homogeneity(m, n);
      json h1 = json::object();
      for (const auto& [ell, dim] : p.h1_dims_by_homogeneity) h1[std::to_string(ell)] = dim;
      d[mn(m, n)] = {{"spencer_rank", p.spencer.rank}, {"domain_dim", p.spencer.domain_dim},
                     {"injective", p.spencer.injective}, {"h1", h1}, {"tanaka_full", p.tanaka_full}};
      if (!p.spencer.injective) fail(r, mn(m, n) + ": Spencer map not injective");
      if (!p.tanaka_full) fail(r, mn(m, n) + ": positive-homogeneity H¹");
    }
    r.data = d;
  });
}

CriterionResult criterion_reducibility() {
  return timed(5, "Y·ker(∂*) ⊆ im(∂*) with certificates", 0, [](CriterionResult& r) {
    json d = json::object();
    for (auto [m, n] : kTanakaSet) {
      auto rep = reducibility_check(m, n);
      d[mn(m, n)] = {{"kernel_dim", rep.kernel_dim}, {"certificates", rep.certificates},
                     {"proof_identity", rep.proof_identity}, {"ok", rep.ok}};
      if (!rep.ok || rep.certificates != rep.kernel_dim) fail(r, mn(m, n) + ": missing certificate");
      if (!rep.proof_identity) fail(r, mn(m, n) + ": Y·φ = ∂*(φ₂,0) fails");
    }
    r.data = d;
  });
}

CriterionResult criterion_sl2_module() {
  return timed(6, "C¹(a,q) = V_{n+2} + 2V_n + V_{n-2} without trivial summands", 0, [](CriterionResult& r) {
    json d = json::object();
    for (int n = 3; n <= 10; ++n) {
      auto dec = c1_aq_decomposition(1, n);
      json mult = json::object();
      for (const auto& [w, k] : dec.multiplicities) mult[std::to_string(w)] = k;
      d[std::to_string(n)] = mult;
      const std::map<int, int> expected{{n - 2, 1}, {n, 2}, {n + 2, 1}};
      if (dec.multiplicities != expected) fail(r, "n=" + std::to_string(n) + ": unexpected multiplicities");
      if (dec.multiplicities.count(0)) fail(r, "n=" + std::to_string(n) + ": trivial summand");
    }
    r.data = d;
  });
}

CriterionResult criterion_models() {
  return timed(7, "homogeneous A2/C2/G2 curvature verdicts", 60, [](CriterionResult& r) {
    json d = json::object();
    for (auto t : {Rank2Type::A2, Rank2Type::C2, Rank2Type::G2}) {
      auto rep = model_curvature(build_rank2(t));
      const std::string name = to_string(t);
      const auto& parts = rep.trivial_summands.parts;
      auto part = [&](const std::string& v) -> const SummandProjection& {
        for (const auto& p : parts)
          if (p.values == v) return p;
        throw std::logic_error("missing summand part");
      };
      json pj = json::object();
      for (const auto& p : parts)
        pj[p.values] = {{"trivial_multiplicity", p.trivial_multiplicity}, {"projection_norm2", to_string(p.projection_norm2)}};
      d[name] = {{"normal", rep.normal},
                 {"insertion_X_zero", rep.insertion_X_zero},
                 {"regular", rep.regular},
                 {"strongly_regular", rep.strongly_regular},
                 {"summands", pj},
                 {"kappa_norm2", to_string(rep.trivial_summands.kappa_norm2)}};
      if (rep.witness)
        d[name]["witness"] = {rep.witness->degree_i, rep.witness->degree_j, rep.witness->output_degree};
      if (t != Rank2Type::G2) {
        if (!rep.normal) fail(r, name + ": ∂*κ ≠ 0");
        if (!rep.insertion_X_zero) fail(r, name + ": i_Xκ ≠ 0");
        if (!rep.regular) fail(r, name + ": not regular");
        if (!rep.strongly_regular) fail(r, name + ": not strongly regular");
      }
      if (t == Rank2Type::A2) {
        const auto& a = part("a");
        if (a.trivial_multiplicity != 1)
          fail(r, "A2: Λ²V4*⊗V4 has " + std::to_string(a.trivial_multiplicity) + " trivial summands, expected 1");
        else if (a.projection_norm2 != rep.trivial_summands.kappa_norm2)
          fail(r, "A2: κ is not contained in the Λ²V4*⊗V4 trivial summand");
      }
      if (t == Rank2Type::C2) {
        const auto &a = part("a"), &s = part("sl2");
        if (a.trivial_multiplicity != 1 || s.trivial_multiplicity != 1) fail(r, "C2: expected one trivial summand in each part");
        if (sgn(a.projection_norm2) == 0 || sgn(s.projection_norm2) == 0) fail(r, "C2: κ lies in a single summand");
        if (!rep.trivial_summands.in_trivial_sum) fail(r, "C2: κ leaves the sum of trivial summands");
      }
      if (t == Rank2Type::G2) {
        if (!rep.regular) fail(r, "G2: not regular");
        if (rep.strongly_regular) fail(r, "G2: unexpectedly strongly regular");
        else if (!rep.witness || rep.witness->degree_i != -8 || rep.witness->degree_j != -9 ||
                 rep.witness->output_degree != -11)
          fail(r, "G2: witness is not (-8,-9) -> -11");
      }
    }
    r.data = d;
  });
}

namespace {

struct FlatCase {
  std::string name;
  std::string source;
  int m, n;
};

const std::vector<FlatCase>& positive_cases() {
  static const std::vector<FlatCase> cases{
      {"5th-order sl3 model", "5*u3*u4/u2 - 40/9*u3^3/u2^2", 1, 4},
      {"7th-order sp4 model", "(70*u3^2*u4*u6 + 49*u3^2*u5^2 - 280*u3*u4^2*u5 + 175*u4^4)/(10*u3^3)", 1, 6},
      {"circles m=2",
       "3*u1_2*(u1_1*u1_2 + u2_1*u2_2)/(1 + u1_1^2 + u2_1^2); 3*u2_2*(u1_1*u1_2 + u2_1*u2_2)/(1 + u1_1^2 + u2_1^2)", 2, 2},
      {"circles m=3",
       "3*u1_2*(u1_1*u1_2 + u2_1*u2_2 + u3_1*u3_2)/(1 + u1_1^2 + u2_1^2 + u3_1^2);"
       "3*u2_2*(u1_1*u1_2 + u2_1*u2_2 + u3_1*u3_2)/(1 + u1_1^2 + u2_1^2 + u3_1^2);"
       "3*u3_2*(u1_1*u1_2 + u2_1*u2_2 + u3_1*u3_2)/(1 + u1_1^2 + u2_1^2 + u3_1^2)",
       3, 2},
      {"submaximal family n=3", "4/3*u3^2/u2", 1, 3},
      {"submaximal family n=5", "6/5*u5^2/u4", 1, 5},
      {"coupled system m=2 n=2", "0; u1_2^2", 2, 2},
  };
  return cases;
}

}  // namespace

CriterionResult criterion_wilczynski_positive(unsigned threads) {
  return timed(8, "Wilczynski-flat positive controls", 300, [threads](CriterionResult& r) {
    json d = json::object();
    for (const auto& c : positive_cases()) {
      FlatnessConfig cfg;
      cfg.samples = 8;
      cfg.seed = 0;
      cfg.threads = threads;
      auto rep = flatness_verdict(parse_system(c.source, c.m, c.n), c.n, cfg);
      d[c.name] = {{"verdict", to_string(rep.verdict)}, {"order", rep.order}, {"samples", cfg.samples}, {"seed", cfg.seed}};
      if (rep.verdict != Verdict::flat) fail(r, c.name + ": " + to_string(rep.verdict));
    }
    r.data = d;
  });
}

CriterionResult criterion_wilczynski_negative() {
  return timed(9, "u^(5) = u is not flat, Θ5 constant term -1680", 0, [](CriterionResult& r) {
    FlatnessConfig cfg;
    auto rep = flatness_verdict(parse_system("u0", 1, 4), 4, cfg);
    // j = 1 term of the Θ formula for r = n + 1 = 5: -(2r-2)! (n-r+1)! / ((r-1)! 0!) P_0
    const Q oracle = -factorial(8) * factorial(0) / (factorial(4) * factorial(0));
    json d = {{"verdict", to_string(rep.verdict)}, {"oracle", to_string(oracle)}};
    if (rep.verdict != Verdict::not_flat || !rep.witness) {
      fail(r, "verdict " + to_string(rep.verdict));
    } else {
      const auto& w = *rep.witness;
      d["witness"] = {{"r", w.r}, {"series_index", w.series_index}, {"coefficient", to_string(w.coefficient(0, 0))}};
      if (w.r != 5 || w.series_index != 0) fail(r, "witness at r=" + std::to_string(w.r));
      if (w.coefficient(0, 0) != oracle) fail(r, "Θ5 constant term " + to_string(w.coefficient(0, 0)));
    }
    r.data = d;
  });
}

CriterionResult criterion_wilczynski_linear() {
  return timed(10, "scalar Θ2 ≡ 0 and LF substitute-back on random linear systems", 0, [](CriterionResult& r) {
    SplitMix64 rng{10};
    int residual_ok = 0, scalar = 0, theta2_ok = 0;
    json systems = json::array();
    for (int s = 0; s < 20; ++s) {
      LinearSystem sys;
      sys.m = 1 + rng.uniform(0, 2);
      sys.n = 1 + rng.uniform(0, 3);
      sys.t0 = rng.uniform(-3, 3);
      const int order = 10;
      for (int k = 0; k <= sys.n; ++k) {
        MatrixSeries p(static_cast<std::size_t>(sys.m), order);
        for (int c = 0; c <= order; ++c)
          for (int i = 0; i < sys.m; ++i)
            for (int j = 0; j < sys.m; ++j) p[c](i, j) = Q(rng.uniform(-4, 4), rng.uniform(1, 3));
        sys.P.push_back(std::move(p));
      }
      auto red = lf_reduce(sys);
      auto sb = substitute_back(sys, red);
      auto theta = theta_invariants(red.reduced);
      const bool ok = sb.residual_zero && sb.order >= 0;
      if (ok) ++residual_ok;
      bool t2 = true;
      if (sys.m == 1) {
        ++scalar;
        t2 = theta.theta.count(2) && theta.theta.at(2).is_zero();
        if (t2) ++theta2_ok;
      }
      systems.push_back({{"m", sys.m}, {"n", sys.n}, {"certified_order", sb.order}, {"residual_zero", sb.residual_zero}});
    }
    r.data = {{"systems", systems}, {"residual_ok", residual_ok}, {"scalar_systems", scalar}, {"scalar_theta2_zero", theta2_ok}};
    if (residual_ok != 20) fail(r, std::to_string(20 - residual_ok) + " systems with nonzero residual");
    if (theta2_ok != scalar) fail(r, "scalar Θ2 nonzero");
    if (scalar == 0) fail(r, "no scalar system sampled");
  });
}

CriterionResult criterion_laplacian() {
  return timed(11, "□ bijective on im(∂*) in each homogeneity", 0, [](CriterionResult& r) {
    json d = json::object();
    for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 3}, {2, 2}}) {
      auto rep = laplacian_on_image(m, n);
      json per = json::object();
      for (const auto& [ell, dr] : rep.dim_and_rank) per[std::to_string(ell)] = {dr.first, dr.second};
      d[mn(m, n)] = per;
      if (!rep.bijective) fail(r, mn(m, n) + ": □ loses rank");
    }
    r.data = d;
  });
}

namespace {

std::vector<CriterionResult> run_core(unsigned threads) {
  return {criterion_lie_axioms(),        criterion_complexes(),          criterion_block_formulas(),
          criterion_tanaka_spencer(),    criterion_reducibility(),       criterion_sl2_module(),
          criterion_models(),            criterion_wilczynski_positive(threads), criterion_wilczynski_negative(),
          criterion_wilczynski_linear(), criterion_laplacian()};
}

}  // namespace

CriterionResult criterion_determinism(const std::string& first_run_json) {
  return timed(12, "repeated runs give byte-identical JSON", 0, [&](CriterionResult& r) {
    auto again = run_core(2);
    const std::string second = acceptance_json(again).dump(2);
    r.data = {{"bytes", first_run_json.size()}, {"identical", second == first_run_json}};
    if (second != first_run_json) fail(r, "second run differs");
  });
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  auto results = run_core(options.threads);
  if (options.determinism) results.push_back(criterion_determinism(acceptance_json(results).dump(2)));
  return results;
}

json acceptance_json(const std::vector<CriterionResult>& results) {
  json arr = json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    arr.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"data", r.data}});
  }
  return {{"criteria", arr}, {"all_pass", all}};
}

std::string acceptance_text(const std::vector<CriterionResult>& results) {
  std::ostringstream out;
  for (const auto& r : results) {
    out << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.title << " (";
    out.setf(std::ios::fixed);
    out.precision(2);
    out << r.seconds << " s)";
    if (!r.detail.empty()) out << ": " << r.detail;
    out << "\n";
  }
  return out.str();
}

}  // namespace cclass
