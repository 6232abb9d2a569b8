#include "cclass/wilczynski.hpp"

#include "cclass/random.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace cclass {

using nlohmann::json;

int LinearSystem::order() const {
  if (P.empty()) return -1;
  int o = P[0].order();
  for (const auto& p : P) o = std::min(o, p.order());
  return o;
}

LinearSystem LinearSystem::truncate(int order) const {
  LinearSystem r = *this;
  for (auto& p : r.P) p = p.truncate(order);
  return r;
}

bool WilczynskiValues::all_flat() const {
  return std::all_of(flat.begin(), flat.end(), [](const auto& kv) { return kv.second; });
}

std::optional<std::pair<int, int>> WilczynskiValues::first_nonzero() const {
  for (const auto& [r, s] : theta)
    for (int k = 0; k <= std::min(order, s.order()); ++k)
      if (!s[k].is_zero()) return std::make_pair(r, k);
  return std::nullopt;
}

namespace {

void check_shape(const LinearSystem& sys) {
  if (sys.m < 1 || sys.n < 0) throw std::invalid_argument("linear system needs m >= 1 and n >= 0");
  if (static_cast<int>(sys.P.size()) != sys.n + 1)
    throw std::invalid_argument("linear system needs n + 1 coefficient matrices");
  for (const auto& p : sys.P)
    if (static_cast<int>(p.dim()) != sys.m) throw std::invalid_argument("linear system coefficient has the wrong size");
}

std::optional<int> first_nonzero_index(const TruncatedSeries& s) { return s.first_nonzero(); }

std::optional<int> first_nonzero_index(const MatrixSeries& s) {
  for (int k = 0; k <= s.order(); ++k)
    if (!s[k].is_zero()) return k;
  return std::nullopt;
}

// μ' = A μ, μ(0) = C.
MatrixSeries solve_linear(const MatrixSeries& A, const Matrix& C) {
  const int order = A.order() + 1;
  MatrixSeries mu(A.dim(), order);
  mu[0] = C;
  for (int k = 0; k < order; ++k) {
    Matrix s(A.dim(), A.dim());
    for (int i = 0; i <= k; ++i)
      if (!A[i].is_zero()) s += A[i] * mu[k - i];
    mu[k + 1] = Q(1, k + 1) * s;
  }
  return mu;
}

// w'' = q w, w(0) = 1, w'(0) = beta.
TruncatedSeries solve_second_order(const TruncatedSeries& q, const Q& beta) {
  const int order = q.order() + 2;
  std::vector<Q> w(static_cast<std::size_t>(order) + 1);
  w[0] = 1;
  if (order >= 1) w[1] = beta;
  for (int k = 0; k + 2 <= order; ++k) {
    Q s = 0;
    for (int i = 0; i <= k; ++i)
      if (sgn(q[i]) != 0) s += q[i] * w[static_cast<std::size_t>(k - i)];
    w[static_cast<std::size_t>(k + 2)] = s / Q((k + 2) * (k + 1));
  }
  return TruncatedSeries(std::move(w));
}

WilczynskiValues finish(WilczynskiValues v) {
  for (auto& [r, s] : v.theta) {
    s = s.truncate(v.order);
    v.flat[r] = s.is_zero();
  }
  return v;
}

}  // namespace

WilczynskiValues theta_raw(const LinearSystem& sys) {
  check_shape(sys);
  const int n = sys.n;
  WilczynskiValues v;
  v.m = sys.m;
  v.n = n;
  v.order = sys.order();
  // Derivatives P_i^{(d)} computed on demand.
  std::vector<std::vector<MatrixSeries>> deriv(static_cast<std::size_t>(n) + 1);
  auto derivative = [&](int i, int d) -> const MatrixSeries& {
    auto& list = deriv[static_cast<std::size_t>(i)];
    if (list.empty()) list.push_back(sys.P[static_cast<std::size_t>(i)]);
    while (static_cast<int>(list.size()) <= d) list.push_back(list.back().derivative());
    return list[static_cast<std::size_t>(d)];
  };
  for (int r = 2; r <= n + 1; ++r) {
    MatrixSeries theta = MatrixSeries(static_cast<std::size_t>(sys.m), v.order);
    for (int j = 1; j <= r - 1; ++j) {
      Q c = factorial(2 * r - j - 1) * factorial(n - r + j) / (factorial(r - j) * factorial(j - 1));
      if (j % 2 == 1) c = -c;
      theta += c * derivative(n - r + j, j - 1);
    }
    v.order = std::min(v.order, theta.order());
    v.theta.emplace(r, std::move(theta));
  }
  return finish(std::move(v));
}

WilczynskiValues theta_invariants(const LinearSystem& sys) {
  check_shape(sys);
  const int n = sys.n;
  if (auto k = first_nonzero_index(sys.P[static_cast<std::size_t>(n)]))
    throw NotLaguerreForsyth("P_" + std::to_string(n), *k);
  if (n >= 1)
    if (auto k = first_nonzero_index(sys.P[static_cast<std::size_t>(n - 1)].trace()))
      throw NotLaguerreForsyth("tr P_" + std::to_string(n - 1), *k);
  return theta_raw(sys);
}

LinearSystem transform_system(const LinearSystem& sys, const MatrixSeries& M, const TruncatedSeries& Lambda) {
  check_shape(sys);
  const int n = sys.n;
  const auto m = static_cast<std::size_t>(sys.m);
  if (M.dim() != m) throw std::invalid_argument("transform_system: multiplier has the wrong size");
  if (Lambda.order() < 1 || sgn(Lambda[0]) != 0 || sgn(Lambda[1]) == 0)
    throw std::domain_error("transform_system: reparameterization must fix t0 with nonzero slope");
  const TruncatedSeries L = Lambda.derivative();
  // u^{(k)} = Σ_i B[k][i] v^{(i)}(Λ).
  std::vector<std::vector<MatrixSeries>> B(static_cast<std::size_t>(n) + 2);
  B[0].push_back(M);
  for (int k = 0; k <= n; ++k) {
    const auto& prev = B[static_cast<std::size_t>(k)];
    auto& next = B[static_cast<std::size_t>(k + 1)];
    for (int i = 0; i <= k + 1; ++i) {
      std::optional<MatrixSeries> term;
      if (i <= k) term = prev[static_cast<std::size_t>(i)].derivative();
      if (i >= 1) {
        MatrixSeries t = L * prev[static_cast<std::size_t>(i - 1)];
        term = term ? *term + t : t;
      }
      next.push_back(std::move(*term));
    }
  }
  const MatrixSeries Tinv = B[static_cast<std::size_t>(n + 1)][static_cast<std::size_t>(n + 1)].inverse();
  const TruncatedSeries back = Lambda.reversion();
  LinearSystem out;
  out.m = sys.m;
  out.n = n;
  out.t0 = sys.t0;
  for (int i = 0; i <= n; ++i) {
    MatrixSeries S = B[static_cast<std::size_t>(n + 1)][static_cast<std::size_t>(i)];
    for (int r = i; r <= n; ++r)
      S -= sys.P[static_cast<std::size_t>(r)] * B[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
    out.P.push_back((Q(-1) * (Tinv * S)).compose(back));
  }
  return out;
}

LfResult lf_reduce(const LinearSystem& sys, const LfOptions& options) {
  check_shape(sys);
  const int n = sys.n;
  const auto m = static_cast<std::size_t>(sys.m);
  const int order = sys.order();
  if (order < n + 1) throw std::invalid_argument("lf_reduce: truncation order must be at least n + 1");
  if (sgn(options.lambda_slope) == 0) throw std::domain_error("lf_reduce: lambda'(t0) must be nonzero");
  Matrix C = options.mu_initial ? *options.mu_initial : Matrix::identity(m);
  if (C.rows() != m || C.cols() != m) throw std::invalid_argument("lf_reduce: mu(t0) has the wrong size");
  if (C.rank() != m) throw std::domain_error("lf_reduce: mu(t0) is singular");

  LfRecord rec;
  rec.mu = solve_linear(Q(1, n + 1) * sys.P[static_cast<std::size_t>(n)], C);
  const TruncatedSeries tau = TruncatedSeries::variable(order + 2);
  if (n == 0) {
    rec.w = TruncatedSeries::constant(1, order + 2);
    rec.M = rec.mu;
    rec.Lambda = options.lambda_slope * tau;
    return {transform_system(sys, rec.M, rec.Lambda), std::move(rec)};
  }
  const LinearSystem first = transform_system(sys, rec.mu, tau);
  const Q c_n = Q(n * (n + 1) * (n + 2), 12);
  const TruncatedSeries q = (1 / (2 * Q(sys.m) * c_n)) * first.P[static_cast<std::size_t>(n - 1)].trace();
  rec.w = solve_second_order(q, options.w_slope);
  rec.Lambda = (options.lambda_slope * (rec.w * rec.w).inverse()).antiderivative();
  rec.M = rec.w.pow(n) * rec.mu;
  LinearSystem reduced = transform_system(sys, rec.M, rec.Lambda);
  if (first_nonzero_index(reduced.P[static_cast<std::size_t>(n)]) ||
      first_nonzero_index(reduced.P[static_cast<std::size_t>(n - 1)].trace()))
    throw std::logic_error("lf_reduce: reduction did not reach Laguerre-Forsyth form");
  return {std::move(reduced), std::move(rec)};
}

SubstituteBack substitute_back(const LinearSystem& sys, const LfResult& reduction) {
  check_shape(sys);
  const int n = sys.n;
  const auto m = static_cast<std::size_t>(sys.m);
  const int O = sys.order();
  const int top = O + n + 1;
  const MatrixSeries Minv = reduction.record.M.inverse();
  const TruncatedSeries back = reduction.record.Lambda.reversion();
  SubstituteBack out;
  out.residual_zero = true;
  bool first = true;
  for (int j = 0; j <= n; ++j) {
    // U^{(k)}(t0) = δ_jk I, then c_{k+n+1} from the equation.
    MatrixSeries U(m, top);
    U[j] = Q(1) / factorial(j) * Matrix::identity(m);
    for (int k = 0; k + n + 1 <= top; ++k) {
      Matrix rhs(m, m);
      for (int r = 0; r <= n; ++r)
        for (int i = 0; i <= k; ++i) {
          const Matrix& p = sys.P[static_cast<std::size_t>(r)][i];
          if (p.is_zero()) continue;
          const int l = k - i;
          rhs += (factorial(l + r) / factorial(l)) * (p * U[l + r]);
        }
      U[k + n + 1] = (factorial(k) / factorial(k + n + 1)) * rhs;
    }
    MatrixSeries V = (Minv * U).compose(back);
    std::vector<MatrixSeries> dv{V};
    for (int k = 0; k <= n; ++k) dv.push_back(dv.back().derivative());
    MatrixSeries res = dv[static_cast<std::size_t>(n + 1)];
    for (int i = 0; i <= n; ++i) res -= reduction.reduced.P[static_cast<std::size_t>(i)] * dv[static_cast<std::size_t>(i)];
    out.order = first ? res.order() : std::min(out.order, res.order());
    first = false;
    if (!res.is_zero()) out.residual_zero = false;
  }
  return out;
}

LinearSystem linearize_along(const std::vector<JetExpression>& f, const JetPoint& p, int N) {
  const int m = static_cast<int>(f.size());
  const int n = p.n();
  if (N < 0) throw std::invalid_argument("linearize_along: negative order");
  const auto sol = formal_solve(f, p, N + n);
  const auto jets = jet_series(sol, n);
  LinearSystem sys;
  sys.m = m;
  sys.n = n;
  sys.t0 = p.t0;
  for (int r = 0; r <= n; ++r) {
    std::vector<std::vector<TruncatedSeries>> entries(static_cast<std::size_t>(m));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        JetExpression d = partial_derivative(f[static_cast<std::size_t>(a)], JetVariable::u(b, r));
        entries[static_cast<std::size_t>(a)].push_back(evaluate_along(d, p.t0, jets, N));
      }
    sys.P.push_back(MatrixSeries::from_entries(entries));
  }
  return sys;
}

WilczynskiValues generalized_wilczynski(const std::vector<JetExpression>& f, const JetPoint& p, int N,
                                        const WilczynskiOptions& options) {
  const int n = p.n();
  if (N < 0) throw std::invalid_argument("generalized_wilczynski: negative order");
  int working = options.literal ? N + n : N + 3 * n + 2;
  for (int attempt = 0; attempt < 4; ++attempt) {
    LinearSystem sys = linearize_along(f, p, working);
    WilczynskiValues v = options.literal ? theta_raw(sys) : theta_invariants(lf_reduce(sys, options.lf).reduced);
    if (v.order >= N) {
      v.order = N;
      return finish(std::move(v));
    }
    working += N - v.order;
  }
  throw std::logic_error("generalized_wilczynski: could not reach the requested order");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::flat: return "FLAT";
    case Verdict::not_flat: return "NOT-FLAT";
    case Verdict::inconclusive: return "INCONCLUSIVE";
  }
  return "";
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("CCLASS_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

JetPoint random_jet(std::uint64_t seed, int sample, int attempt, int m, int n) {
  SplitMix64 outer{seed};
  SplitMix64 g{outer.next() ^ (static_cast<std::uint64_t>(sample) << 32) ^ static_cast<std::uint64_t>(attempt)};
  g.next();
  JetPoint p;
  p.t0 = g.uniform(-10, 10);
  p.u.assign(static_cast<std::size_t>(m), std::vector<Q>(static_cast<std::size_t>(n) + 1));
  for (auto& row : p.u)
    for (auto& x : row) x = g.uniform(-10, 10);
  return p;
}

}  // namespace

FlatnessReport flatness_verdict(const std::vector<JetExpression>& f, int n, const FlatnessConfig& config) {
  if (f.empty() || n < 0) throw std::invalid_argument("flatness_verdict needs m >= 1 and n >= 0");
  if (config.samples < 1 || config.max_attempts < 1) throw std::invalid_argument("flatness_verdict needs samples >= 1");
  FlatnessReport report;
  report.config = config;
  report.m = static_cast<int>(f.size());
  report.n = n;
  report.order = config.order < 0 ? 2 * n + 6 : config.order;
  report.config.order = report.order;
  report.samples.resize(static_cast<std::size_t>(config.samples));

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (int i; (i = next++) < config.samples;) {
      auto& s = report.samples[static_cast<std::size_t>(i)];
      try {
        for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
          s.jet = random_jet(config.seed, i, attempt, report.m, n);
          s.attempts = attempt + 1;
          try {
            s.values = generalized_wilczynski(f, s.jet, report.order, config.options);
            s.singular = false;
            s.diagnosis.clear();
            break;
          } catch (const std::domain_error& e) {
            s.singular = true;
            s.diagnosis = e.what();
          }
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned threads = config.threads ? config.threads : default_thread_count();
  threads = std::min<unsigned>(threads, static_cast<unsigned>(config.samples));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  int admissible = 0;
  for (int i = 0; i < config.samples; ++i) {
    const auto& s = report.samples[static_cast<std::size_t>(i)];
    if (s.singular) continue;
    ++admissible;
    if (!report.witness)
      if (auto nz = s.values.first_nonzero())
        report.witness = FlatnessWitness{i, nz->first, nz->second, s.values.theta.at(nz->first)[nz->second]};
  }
  if (admissible == 0) {
    report.verdict = Verdict::inconclusive;
    report.diagnosis = "every sampled jet was singular; last: " + report.samples.back().diagnosis;
  } else if (report.witness) {
    report.verdict = Verdict::not_flat;
  } else {
    report.verdict = Verdict::flat;
    if (admissible < config.samples)
      report.diagnosis = std::to_string(config.samples - admissible) + " of " + std::to_string(config.samples) +
                         " samples singular";
  }
  return report;
}

json series_to_json(const TruncatedSeries& s) {
  json coeffs = json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(to_string(c));
  return {{"order", s.order()}, {"coeffs", coeffs}};
}

namespace {

json matrix_to_json(const Matrix& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(to_string(a(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json jet_to_json(const JetPoint& p) {
  json u = json::array();
  for (const auto& row : p.u) {
    json r = json::array();
    for (const auto& x : row) r.push_back(to_string(x));
    u.push_back(r);
  }
  return {{"t0", to_string(p.t0)}, {"u", u}};
}

}  // namespace

json matrix_series_to_json(const MatrixSeries& s) {
  json coeffs = json::array();
  for (int k = 0; k <= s.order(); ++k) coeffs.push_back(matrix_to_json(s[k]));
  return {{"order", s.order()}, {"coeffs", coeffs}};
}

json to_json(const WilczynskiValues& v) {
  json theta = json::object(), flat = json::object();
  for (const auto& [r, s] : v.theta) {
    theta[std::to_string(r)] = v.flat.at(r) ? json("0") : matrix_series_to_json(s);
    flat[std::to_string(r)] = v.flat.at(r);
  }
  return {{"m", v.m}, {"n", v.n}, {"order", v.order}, {"theta", theta}, {"flat", flat}};
}

json to_json(const FlatnessReport& r) {
  json samples = json::array();
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    const auto& s = r.samples[i];
    json j = {{"index", i}, {"jet", jet_to_json(s.jet)}, {"attempts", s.attempts}, {"singular", s.singular}};
    if (s.singular) j["diagnosis"] = s.diagnosis;
    else {
      json w = to_json(s.values);
      j["theta"] = w["theta"];
      j["flat"] = w["flat"];
    }
    samples.push_back(j);
  }
  json witnesses = json::array();
  if (r.witness)
    witnesses.push_back({{"sample", r.witness->sample},
                         {"jet", jet_to_json(r.samples[static_cast<std::size_t>(r.witness->sample)].jet)},
                         {"r", r.witness->r},
                         {"series_index", r.witness->series_index},
                         {"coefficient", matrix_to_json(r.witness->coefficient)}});
  json out = {{"verdict", to_string(r.verdict)},
              {"order", r.order},
              {"m", r.m},
              {"n", r.n},
              {"config",
               {{"samples", r.config.samples},
                {"seed", r.config.seed},
                {"order", r.order},
                {"max_attempts", r.config.max_attempts},
                {"literal", r.config.options.literal}}},
              {"samples", samples},
              {"witnesses", witnesses}};
  if (!r.diagnosis.empty()) out["diagnosis"] = r.diagnosis;
  return out;
}

}  // namespace cclass
