#pragma once

#include <random>
#include <utility>

#include "mtclm/likelihood.hpp"
#include "mtclm/smooth_solver.hpp"
#include "mtclm/types.hpp"

namespace mtclm::testutil {

// Random coefficients with increasing thresholds, moderate scale.
inline MtclmParams random_model(int p, int k_max, std::mt19937_64& rng, double scale = 0.7) {
  std::normal_distribution<double> normal(0.0, scale);
  std::uniform_real_distribution<double> gap(0.3, 1.2);
  MtclmParams params;
  params.alpha = normal(rng);
  params.beta.resize(p);
  params.gamma.resize(p);
  for (int j = 0; j < p; ++j) {
    params.beta[j] = normal(rng);
    params.gamma[j] = normal(rng);
  }
  params.zeta.resize(k_max - 1);
  params.zeta[0] = normal(rng) - 0.5;
  for (int k = 1; k < k_max - 1; ++k) params.zeta[k] = params.zeta[k - 1] + gap(rng);
  return params;
}

// Draws labels from the model itself so the joint likelihood is well posed.
inline OrdinalDataset draw_from_model(const MtclmParams& params, int n, std::mt19937_64& rng) {
  const int p = static_cast<int>(params.beta.size());
  const int k_max = static_cast<int>(params.zeta.size()) + 1;
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  OrdinalDataset data;
  data.x.resize(n, p);
  data.y.resize(n);
  data.k_max = k_max;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) data.x(i, j) = normal(rng);
    const double eta = params.alpha + data.x.row(i).dot(params.beta);
    if (unif(rng) < sigmoid(eta)) {
      data.y[i] = 0;
      continue;
    }
    const double u = data.x.row(i).dot(params.gamma);
    const double q = unif(rng);
    int level = k_max;
    for (int k = 1; k < k_max; ++k) {
      if (q < sigmoid(params.zeta[k - 1] + u)) {
        level = k;
        break;
      }
    }
    data.y[i] = level;
  }
  return data;
}

// Joint maximum likelihood through the smooth solver alone, no splitting.
inline std::pair<MtclmParams, double> direct_mle(const OrdinalDataset& data,
                                                 double grad_tol = 1e-9,
                                                 int max_iter = 2000) {
  const SmoothPacking packing{data.x.cols(), data.k_max};
  SmoothObjective objective = [&](const VectorXd& x, VectorXd* grad) -> double {
    const MtclmParams params = packing.unpack(x);
    const double value = screening_nll(data, params.alpha, params.beta) +
                         severity_nll(data, params.zeta, params.gamma);
    if (grad) {
      const ScreeningGrad gs = grad_screening(data, params.alpha, params.beta);
      const SeverityGrad gv = grad_severity(data, params.zeta, params.gamma);
      *grad = packing.pack_grad(x, gs.d_alpha, gv.d_zeta, gs.d_beta, gv.d_gamma);
    }
    return value;
  };
  SmoothSolveSettings settings;
  settings.grad_tol = grad_tol;
  settings.max_inner_iter = max_iter;
  const MinimizeResult res = minimize_smooth(
      objective, packing.pack(intercept_only_params(data, 0.5)), settings);
  return {packing.unpack(res.x), res.value};
}

// Sup distance across all parameter groups.
inline double param_sup_distance(const MtclmParams& a, const MtclmParams& b) {
  double d = std::fabs(a.alpha - b.alpha);
  d = std::fmax(d, (a.beta - b.beta).cwiseAbs().maxCoeff());
  d = std::fmax(d, (a.gamma - b.gamma).cwiseAbs().maxCoeff());
  d = std::fmax(d, (a.zeta - b.zeta).cwiseAbs().maxCoeff());
  return d;
}

}  // namespace mtclm::testutil
