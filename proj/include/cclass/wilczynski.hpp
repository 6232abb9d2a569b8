#pragma once

#include "cclass/jet.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <stdexcept>

namespace cclass {

/// u^{(n+1)} = P_n u^{(n)} + … + P_0 u with P_r given as m×m series around t0.
struct LinearSystem {
  int m = 0;
  int n = 0;
  Q t0;
  std::vector<MatrixSeries> P;  ///< P[r], r = 0..n

  /// Minimum truncation order over the coefficients.
  int order() const;
  LinearSystem truncate(int order) const;
};

/// Raised when theta_invariants is handed a system that is not in Laguerre–Forsyth form.
class NotLaguerreForsyth : public std::invalid_argument {
 public:
  NotLaguerreForsyth(const std::string& coefficient, int series_index)
      : std::invalid_argument(coefficient + " has a nonzero coefficient at order " + std::to_string(series_index)),
        coefficient_(coefficient),
        series_index_(series_index) {}
  const std::string& coefficient() const { return coefficient_; }
  int series_index() const { return series_index_; }

 private:
  std::string coefficient_;
  int series_index_;
};

struct WilczynskiValues {
  int m = 0;
  int n = 0;
  int order = -1;                       ///< certified order of every Θ_r
  std::map<int, MatrixSeries> theta;    ///< r = 2..n+1
  std::map<int, bool> flat;             ///< Θ_r zero through `order`

  bool all_flat() const;
  /// First nonzero coefficient: (r, series index).
  std::optional<std::pair<int, int>> first_nonzero() const;
};

/// Θ_r straight from the formula, without checking the Laguerre–Forsyth precondition.
WilczynskiValues theta_raw(const LinearSystem& sys);
/// Throws NotLaguerreForsyth unless P_n ≡ 0 and tr P_{n-1} ≡ 0 through the system order.
WilczynskiValues theta_invariants(const LinearSystem& sys);

/// Substituting u(t) = M(t) v(s), s - t0 = Λ(t - t0): the system satisfied by v in s.
/// Λ needs zero constant term and nonzero linear term; M must be invertible at t0.
LinearSystem transform_system(const LinearSystem& sys, const MatrixSeries& M, const TruncatedSeries& Lambda);

/// Free constants of the reduction: μ(t0), λ'(t0) and w'(t0) in λ' = λ'(t0) w^{-2}.
struct LfOptions {
  std::optional<Matrix> mu_initial;
  Q lambda_slope = 1;
  Q w_slope = 0;
};

struct LfRecord {
  MatrixSeries M;          ///< full multiplier u = M v
  TruncatedSeries Lambda;  ///< s - t0 as a series in t - t0
  MatrixSeries mu;         ///< first step, kills P_n
  TruncatedSeries w;       ///< second step, λ' = γ w^{-2}, multiplier w^n
};

struct LfResult {
  LinearSystem reduced;
  LfRecord record;
};

LfResult lf_reduce(const LinearSystem& sys, const LfOptions& options = {});

/// Pushes a fundamental solution of sys through (M, Λ) and checks it against the reduced system.
struct SubstituteBack {
  int order = -1;             ///< order through which the residual is known
  bool residual_zero = false; ///< residual vanishes through `order`
};
SubstituteBack substitute_back(const LinearSystem& sys, const LfResult& reduction);

/// P_r = ∂f/∂u_r along the formal solution through p, certified through order N.
LinearSystem linearize_along(const std::vector<JetExpression>& f, const JetPoint& p, int N);

struct WilczynskiOptions {
  LfOptions lf;
  bool literal = false;  ///< apply the Θ formula to the raw linearization, skipping LF reduction
};

/// Θ_r of the LF-reduced linearization along the solution through p, certified through order N.
WilczynskiValues generalized_wilczynski(const std::vector<JetExpression>& f, const JetPoint& p, int N,
                                        const WilczynskiOptions& options = {});

struct FlatnessConfig {
  int samples = 8;
  std::uint64_t seed = 0;
  int order = -1;  ///< -1 means 2n + 6
  int max_attempts = 16;
  unsigned threads = 0;  ///< 0 means CCLASS_THREADS or hardware concurrency
  WilczynskiOptions options;
};

enum class Verdict { flat, not_flat, inconclusive };
std::string to_string(Verdict v);

struct FlatnessSample {
  JetPoint jet;
  int attempts = 0;
  bool singular = false;  ///< no admissible jet found within max_attempts
  std::string diagnosis;
  WilczynskiValues values;
};

struct FlatnessWitness {
  int sample = 0;
  int r = 0;
  int series_index = 0;
  Matrix coefficient;
};

struct FlatnessReport {
  Verdict verdict = Verdict::inconclusive;
  int order = 0;
  int m = 0, n = 0;
  FlatnessConfig config;
  std::vector<FlatnessSample> samples;
  std::optional<FlatnessWitness> witness;
  std::string diagnosis;
};

FlatnessReport flatness_verdict(const std::vector<JetExpression>& f, int n, const FlatnessConfig& config);

/// Thread count from CCLASS_THREADS, else hardware concurrency, at least 1.
unsigned default_thread_count();

nlohmann::json series_to_json(const TruncatedSeries& s);
nlohmann::json matrix_series_to_json(const MatrixSeries& s);
nlohmann::json to_json(const WilczynskiValues& v);
nlohmann::json to_json(const FlatnessReport& r);

}  // namespace cclass
