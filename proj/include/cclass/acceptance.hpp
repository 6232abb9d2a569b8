#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace cclass {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;  ///< 0 means no time limit
  nlohmann::json data;
};

struct AcceptanceOptions {
  unsigned threads = 0;  ///< passed to the flatness sampler; 0 means the default
  bool determinism = true;
};

CriterionResult criterion_lie_axioms();
CriterionResult criterion_complexes();
CriterionResult criterion_block_formulas();
CriterionResult criterion_tanaka_spencer();
CriterionResult criterion_reducibility();
CriterionResult criterion_sl2_module();
CriterionResult criterion_models();
CriterionResult criterion_wilczynski_positive(unsigned threads = 0);
CriterionResult criterion_wilczynski_negative();
CriterionResult criterion_wilczynski_linear();
CriterionResult criterion_laplacian();
/// Runs criteria 1–11 twice with different thread counts and compares the JSON byte for byte.
CriterionResult criterion_determinism(const std::string& first_run_json);

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});
/// Timing-free JSON, suitable for byte comparison.
nlohmann::json acceptance_json(const std::vector<CriterionResult>& results);
/// One line per criterion: "[PASS] 3 title (1.23 s) detail".
std::string acceptance_text(const std::vector<CriterionResult>& results);

}  // namespace cclass
