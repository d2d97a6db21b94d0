#pragma once

#include <vector>

#include "mtclm/types.hpp"

namespace mtclm {

enum class BaselineKind { logistic_l1, clm_l1 };

struct ProxGradSettings {
  int max_iter = 20000;
  double tol = 1e-10;       // relative objective-change stop
  double init_step = 1.0;
  double step_growth = 1.1; // step recovery between iterations
};

struct BaselineFit {
  BaselineKind kind = BaselineKind::logistic_l1;
  VectorXd intercepts;    // [alpha] for logistic; K increasing thresholds for clm
  VectorXd coefficients;  // p
  double lambda = 0.0;
  bool converged = false;
  int iterations = 0;
  double objective = 0.0;
  double kkt_gap = 0.0;   // max L1-subgradient violation at exit
};

// L1-penalized logistic regression on the collapsed labels (0 vs >= 1),
// oriented as logit P(Y=0|x) = alpha + x'coef; proximal gradient with
// backtracking, intercept unpenalized.
BaselineFit fit_logistic_l1(const OrdinalDataset& data, double lambda,
                            const ProxGradSettings& settings = {});

// L1-penalized cumulative logit model over all levels 0..K with K thresholds,
// oriented as logit P(Y<=k|x) = t_{k+1} + x'coef. Thresholds stay increasing
// through the same log-gap coordinates the joint model uses.
BaselineFit fit_clm_l1(const OrdinalDataset& data, double lambda,
                       const ProxGradSettings& settings = {});

// Average negative log-likelihood of the full-ordinal CLM on this data.
double clm_nll(const OrdinalDataset& data, const VectorXd& thresholds, const VectorXd& coef);

// n x (k_max+1) class probabilities under the baseline CLM.
MatrixXd clm_predict_proba(const VectorXd& thresholds, const VectorXd& coef, const MatrixXd& x);

// P(Y=0|x) under the fitted baseline (logistic or clm).
VectorXd baseline_healthy_proba(const BaselineFit& fit, const MatrixXd& x);

// Maps a standardized-scale baseline fit back to the original data scale.
BaselineFit baseline_to_original_scale(const BaselineFit& fit, const StandardizeRecord& rec);

}  // namespace mtclm
