#include "mtclm/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace mtclm {

void validate_spec(const ScenarioSpec& spec) {
  if (spec.n < 4) throw std::invalid_argument("simgen: n must be >= 4");
  if (spec.p < 18) throw std::invalid_argument("simgen: p must be >= 18");
  if (spec.rho < 0 || spec.rho >= 1)
    throw std::invalid_argument("simgen: rho must lie in [0, 1)");
  if (spec.coef_magnitude == CoefMagnitude::fixed && spec.fixed_magnitude <= 0)
    throw std::invalid_argument("simgen: fixed_magnitude must be positive");
}

std::pair<VectorXd, VectorXd> scenario_support(Scenario scenario, int p) {
  if (p < 18) throw std::invalid_argument("scenario_support: p must be >= 18");
  VectorXd screen = VectorXd::Zero(p);
  VectorXd severity = VectorXd::Zero(p);
  for (int j = 0; j < 5; ++j) screen[j] = 1.0;
  for (int j = 5; j < 10; ++j) screen[j] = -1.0;
  switch (scenario) {
    case Scenario::parallel:
    case Scenario::identical:
      severity = screen;
      break;
    case Scenario::almost_inverse:
      // Signs flip relative to screening except the 1st and 6th predictors.
      severity = -screen;
      severity[0] = screen[0];
      severity[5] = screen[5];
      break;
    case Scenario::similar:
      // 4th and 9th drop out; 11th and 12th take their places and signs.
      severity = screen;
      severity[3] = 0.0;
      severity[8] = 0.0;
      severity[10] = 1.0;
      severity[11] = -1.0;
      break;
    case Scenario::almost_independent:
      severity[0] = 1.0;
      severity[5] = -1.0;
      for (int j = 10; j < 14; ++j) severity[j] = 1.0;
      for (int j = 14; j < 18; ++j) severity[j] = -1.0;
      break;
  }
  return {screen, severity};
}

namespace {

constexpr int kLevels = 3;  // K: severity levels 1..3, four categories total

// ceil(num * n / den) without floating point.
long long ceil_frac(long long n, long long num, long long den) {
  return (n * num + den - 1) / den;
}

VectorXd draw_magnitudes(const VectorXd& signs, const ScenarioSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.75, 1.25);
  VectorXd coef = VectorXd::Zero(signs.size());
  for (Eigen::Index j = 0; j < signs.size(); ++j) {
    if (signs[j] == 0.0) continue;
    const double mag =
        spec.coef_magnitude == CoefMagnitude::fixed ? spec.fixed_magnitude : unif(rng);
    coef[j] = signs[j] * mag;
  }
  return coef;
}

MatrixXd draw_predictors(const ScenarioSpec& spec, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  MatrixXd z(spec.n, spec.p);
  for (int i = 0; i < spec.n; ++i)
    for (int j = 0; j < spec.p; ++j) z(i, j) = normal(rng);
  if (spec.rho == 0.0) return z;
  MatrixXd toeplitz(spec.p, spec.p);
  for (int i = 0; i < spec.p; ++i)
    for (int j = 0; j < spec.p; ++j) toeplitz(i, j) = std::pow(spec.rho, std::abs(i - j));
  const MatrixXd chol = toeplitz.llt().matrixL();
  return z * chol.transpose();
}

VectorXd draw_logistic(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  VectorXd e(n);
  for (int i = 0; i < n; ++i) {
    double q = unif(rng);
    while (q <= 0.0 || q >= 1.0) q = unif(rng);
    e[i] = std::log(q) - std::log1p(-q);
  }
  return e;
}

std::vector<int> ascending_order(const VectorXd& v) {
  std::vector<int> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return v[i] < v[j]; });
  return order;
}

double boundary_midpoint(const VectorXd& v, const std::vector<int>& order, long long below) {
  const long long sz = static_cast<long long>(order.size());
  if (below <= 0) return v[order[0]] - 1.0;
  if (below >= sz) return v[order[sz - 1]] + 1.0;
  return 0.5 * (v[order[below - 1]] + v[order[below]]);
}

}  // namespace

std::pair<OrdinalDataset, GroundTruth> generate(const ScenarioSpec& spec) {
  validate_spec(spec);
  std::mt19937_64 rng(spec.seed);
  const auto [screen_signs, severity_signs] = scenario_support(spec.scenario, spec.p);

  // Latent-scale coefficients. parallel shares a single regression.
  const VectorXd latent_screen_coef = draw_magnitudes(screen_signs, spec, rng);
  const VectorXd latent_severity_coef = spec.scenario == Scenario::parallel
                                            ? latent_screen_coef
                                            : draw_magnitudes(severity_signs, spec, rng);

  const MatrixXd x = draw_predictors(spec, rng);
  const VectorXd e_screen = draw_logistic(spec.n, rng);
  const VectorXd ys = x * latent_screen_coef + e_screen;

  OrdinalDataset data;
  data.x = x;
  data.k_max = kLevels;
  data.y.setZero(spec.n);

  GroundTruth gt;
  gt.beta_true = -latent_screen_coef;
  gt.gamma_true = -latent_severity_coef;
  gt.severity_thresholds.resize(2);

  const long long n = spec.n;
  if (spec.scenario == Scenario::parallel) {
    const auto order = ascending_order(ys);
    const long long q1 = ceil_frac(n, 1, 2), q2 = ceil_frac(n, 2, 3), q3 = ceil_frac(n, 5, 6);
    for (long long r = 0; r < n; ++r) {
      int level = 0;
      if (r >= q3) level = 3;
      else if (r >= q2) level = 2;
      else if (r >= q1) level = 1;
      data.y[order[r]] = level;
    }
    gt.screen_threshold = boundary_midpoint(ys, order, q1);
    gt.severity_thresholds << boundary_midpoint(ys, order, q2), boundary_midpoint(ys, order, q3);
    if (spec.retain_latent) gt.latent_screen = ys;
  } else {
    const VectorXd e_severity = draw_logistic(spec.n, rng);
    const VectorXd yv = x * latent_severity_coef + e_severity;
    const auto order = ascending_order(ys);
    const long long n0 = ceil_frac(n, 1, 2);
    gt.screen_threshold = boundary_midpoint(ys, order, n0);

    std::vector<int> patients(order.begin() + n0, order.end());
    std::sort(patients.begin(), patients.end(), [&](int i, int j) { return yv[i] < yv[j]; });
    const long long m = static_cast<long long>(patients.size());
    const long long k1 = ceil_frac(m, 1, 3), k2 = ceil_frac(m, 2, 3);
    for (long long r = 0; r < m; ++r) {
      int level = 1;
      if (r >= k2) level = 3;
      else if (r >= k1) level = 2;
      data.y[patients[r]] = level;
    }
    gt.severity_thresholds << boundary_midpoint(yv, patients, k1),
        boundary_midpoint(yv, patients, k2);
    if (spec.retain_latent) {
      gt.latent_screen = ys;
      gt.latent_severity = yv;
    }
  }
  return {std::move(data), std::move(gt)};
}

std::string to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::parallel: return "parallel";
    case Scenario::identical: return "identical";
    case Scenario::almost_inverse: return "almost-inverse";
    case Scenario::similar: return "similar";
    case Scenario::almost_independent: return "almost-independent";
  }
  return "unknown";
}

Scenario scenario_from_string(const std::string& name) {
  std::string s = name;
  std::replace(s.begin(), s.end(), '_', '-');
  if (s == "parallel" || s == "scenario1") return Scenario::parallel;
  if (s == "identical" || s == "scenario2") return Scenario::identical;
  if (s == "almost-inverse" || s == "scenario3") return Scenario::almost_inverse;
  if (s == "similar" || s == "scenario4") return Scenario::similar;
  if (s == "almost-independent" || s == "scenario5") return Scenario::almost_independent;
  throw std::invalid_argument("unknown scenario: " + name);
}

CoefMagnitude coef_magnitude_from_string(const std::string& name) {
  if (name == "uniform" || name == "uniform_075_125") return CoefMagnitude::uniform_075_125;
  if (name == "fixed") return CoefMagnitude::fixed;
  throw std::invalid_argument("unknown coefficient mode: " + name);
}

}  // namespace mtclm
