#include "cclass/acceptance.hpp"
#include "cclass/models.hpp"
#include "cclass/structure.hpp"
#include "cclass/wilczynski.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace cclass;
using nlohmann::json;

namespace {

enum Exit { ok = 0, not_flat = 1, usage = 2, property_failure = 3, inconclusive = 4 };

std::string format = "json";

void emit(const json& j, const std::string& text) {
  if (format == "json") std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

int cmd_algebra(int m, int n) {
  auto g = build_ode_algebra(m, n);
  json j = table_to_json(*g);
  std::ostringstream t;
  t << "g(" << m << "," << n << "): dim " << g->dim() << "\n";
  for (std::size_t i = 0; i < g->dim(); ++i)
    t << "  " << g->labels()[i] << "  degree " << g->degree(i) << "\n";
  emit(j, t.str());
  return ok;
}

int cmd_structure(int m, int n) {
  auto r = structure_report(m, n);
  json j = to_json(r);
  std::ostringstream t;
  t << "structure (" << m << "," << n << ")" << (r.prolongation.outside_paper_scope ? " [outside paper scope]" : "") << "\n"
    << "  spencer rank " << r.prolongation.spencer.rank << " / " << r.prolongation.spencer.domain_dim
    << (r.prolongation.spencer.injective ? " injective" : " not injective") << "\n"
    << "  tanaka full: " << (r.prolongation.tanaka_full ? "yes" : "no") << "\n"
    << "  reducibility: " << (r.reducibility.ok ? "ok" : "fails") << "\n"
    << "  dims ker " << r.dims.ker << ", im " << r.dims.im << ", E " << r.dims.e << "\n"
    << "  all pass: " << (r.all_pass ? "yes" : "no") << "\n";
  emit(j, t.str());
  if (r.prolongation.outside_paper_scope) return ok;
  return r.all_pass ? ok : property_failure;
}

int cmd_wilczynski(const std::string& source, int m, int n, std::uint64_t seed, int samples, int order, bool literal) {
  std::vector<JetExpression> f;
  try {
    f = parse_system(source, m, n);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return usage;
  }
  FlatnessConfig cfg;
  cfg.seed = seed;
  cfg.samples = samples;
  cfg.order = order;
  cfg.options.literal = literal;
  auto rep = flatness_verdict(f, n, cfg);
  std::ostringstream t;
  t << to_string(rep.verdict) << " (order " << rep.order << ", " << cfg.samples << " samples, seed " << cfg.seed << ")\n";
  if (rep.witness)
    t << "  witness: sample " << rep.witness->sample << ", r = " << rep.witness->r << ", coefficient of t^"
      << rep.witness->series_index << " nonzero\n";
  if (!rep.diagnosis.empty()) t << "  " << rep.diagnosis << "\n";
  emit(to_json(rep), t.str());
  switch (rep.verdict) {
    case Verdict::flat: return ok;
    case Verdict::not_flat: return not_flat;
    case Verdict::inconclusive: return inconclusive;
  }
  return inconclusive;
}

int cmd_models(const std::string& type, bool verify_sl3) {
  if (verify_sl3) {
    auto r = verify_sl3_realization();
    std::ostringstream t;
    t << "sl3 realization: " << (r.ok() ? "ok" : "FAILED") << " (" << r.pairs_checked << " pairs, image rank "
      << r.image_rank << ")\n";
    emit(to_json(r), t.str());
    return r.ok() ? ok : property_failure;
  }
  Rank2Type t;
  try {
    t = rank2_type_from_string(type);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return usage;
  }
  auto model = build_rank2(t);
  auto dec = principal_decompose(model);
  auto alpha = embed_alpha(model, dec);
  auto rep = model_curvature(model);
  json j = to_json(rep);
  j["cartan"] = model.cartan;
  j["y_coefficients"] = {to_string(dec.triple.y_coefficients[0]), to_string(dec.triple.y_coefficients[1])};
  j["reference_y_coefficients"] = {to_string(dec.triple.reference_y_coefficients[0]), to_string(dec.triple.reference_y_coefficients[1])};
  j["alpha_equivariant"] = alpha.equivariant;
  json filtration = json::object();
  for (std::size_t i = 0; i < model.roots.size(); ++i) filtration[model.algebra->labels()[i]] = alpha.filtration[i];
  j["filtration_degrees"] = filtration;
  std::ostringstream s;
  s << to_string(t) << " (n = " << rep.n << "): normal " << rep.normal << ", i_X kappa = 0 " << rep.insertion_X_zero
    << ", regular " << rep.regular << ", strongly regular " << rep.strongly_regular << "\n";
  if (rep.witness)
    s << "  witness: degrees (" << rep.witness->degree_i << ", " << rep.witness->degree_j << ") -> "
      << rep.witness->output_degree << "\n";
  emit(j, s.str());
  return rep.matches_expected ? ok : property_failure;
}

int cmd_selftest(unsigned threads) {
  AcceptanceOptions opt;
  opt.threads = threads;
  auto results = run_acceptance(opt);
  emit(acceptance_json(results), acceptance_text(results));
  for (const auto& r : results)
    if (!r.pass) return property_failure;
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations for C-class ODE geometry"};
  app.require_subcommand(1);
  int m = 1, n = 0, samples = 8, order = -1;
  std::uint64_t seed = 0;
  std::string expr, expr_file, type;
  bool verify_sl3 = false, literal = false;
  unsigned threads = 0;

  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  };
  auto* algebra = app.add_subcommand("algebra", "Dump the structure constants of g(m,n)");
  algebra->add_option("-m", m)->required();
  algebra->add_option("-n", n)->required();
  add_format(algebra);

  auto* structure = app.add_subcommand("structure", "Prolongation, reducibility and normalization checks");
  structure->add_option("-m", m)->required();
  structure->add_option("-n", n)->required();
  add_format(structure);

  auto* wil = app.add_subcommand("wilczynski", "Generalized Wilczynski flatness verdict");
  wil->add_option("-m", m, "Number of unknown functions");
  wil->add_option("-n", n, "The ODE has order n+1")->required();
  auto* e1 = wil->add_option("--expr", expr, "Right-hand sides separated by ';'");
  auto* e2 = wil->add_option("--expr-file", expr_file, "File holding the right-hand sides");
  e1->excludes(e2);
  wil->add_option("--seed", seed);
  wil->add_option("--samples", samples)->check(CLI::PositiveNumber);
  wil->add_option("--order", order, "Series order N (default 2n+6)");
  wil->add_flag("--literal", literal, "Apply the invariant formula to the raw linearization");
  wil->add_option("--threads", threads, "Worker threads (default CCLASS_THREADS)");
  add_format(wil);

  auto* models = app.add_subcommand("models", "Homogeneous A2/C2/G2 curvature reports");
  models->add_option("--type", type, "a2, c2 or g2");
  models->add_flag("--verify-sl3", verify_sl3, "Check the sl3 vector-field realization");
  add_format(models);

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_option("--threads", threads);
  add_format(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    if (*algebra) return cmd_algebra(m, n);
    if (*structure) return cmd_structure(m, n);
    if (*wil) {
      std::string source = expr;
      if (!expr_file.empty()) {
        std::ifstream in(expr_file);
        if (!in) {
          std::cerr << "cannot read " << expr_file << "\n";
          return usage;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        source = ss.str();
      }
      if (source.empty()) {
        std::cerr << "wilczynski needs --expr or --expr-file\n";
        return usage;
      }
      if (threads) {
        static std::string env = std::to_string(threads);
        setenv("CCLASS_THREADS", env.c_str(), 1);
      }
      return cmd_wilczynski(source, m, n, seed, samples, order, literal);
    }
    if (*models) {
      if (!verify_sl3 && type.empty()) {
        std::cerr << "models needs --type or --verify-sl3\n";
        return usage;
      }
      return cmd_models(type, verify_sl3);
    }
    if (*selftest) return cmd_selftest(threads);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return property_failure;
  }
  return usage;
}
