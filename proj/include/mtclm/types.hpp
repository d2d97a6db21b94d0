#pragma once

#include <Eigen/Dense>
#include <utility>

namespace mtclm {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Eigen::VectorXi;

// Ordinal screening/severity sample. Labels live in {0, ..., k_max} where
// 0 means disease-free and 1..k_max are increasing severity levels.
struct OrdinalDataset {
  MatrixXd x;     // n x p predictor matrix
  VectorXi y;     // n labels
  int k_max = 0;  // highest severity level K

  Eigen::Index n_rows() const { return x.rows(); }
  Eigen::Index n_cols() const { return x.cols(); }
};

// Throws std::invalid_argument naming the first violated requirement:
// finite x, y/x row agreement, labels inside {0..k_max}, k_max >= 2.
void validate_dataset(const OrdinalDataset& data);

// Model parameters. Screening: logit P(Y=0|x) = alpha + x'beta.
// Severity:  logit P(1<=Y<=k | Y>=1, x) = zeta_k + x'gamma, k = 1..K-1.
struct MtclmParams {
  double alpha = 0.0;
  VectorXd beta;   // p
  VectorXd zeta;   // K-1, strictly increasing
  VectorXd gamma;  // p
};

void validate_params(const MtclmParams& params, Eigen::Index p, int k_max);

struct PenaltyConfig {
  double lambda11 = 0.0;  // L1 on beta
  double lambda12 = 0.0;  // L1 on gamma
  double lambda_f = 0.0;  // fused |beta_j - gamma_j|
  double lambda_g = 0.0;  // group sqrt(beta_j^2 + gamma_j^2)
};

// Nonnegativity plus "at most one of lambda_f, lambda_g nonzero".
void validate_penalty(const PenaltyConfig& penalty);

struct AdmmSettings {
  double mu_f = 1.0;      // fused-constraint penalty parameter
  double mu_1 = 1.0;      // consensus-constraint penalty parameter
  int max_iter = 2000;
  double eps_abs = 1e-5;
  double eps_rel = 1e-4;
};

void validate_admm_settings(const AdmmSettings& settings);

struct StandardizeRecord {
  VectorXd mean;   // p column means
  VectorXd scale;  // p column sd (1/n denominator); 1.0 for constant columns
};

// Centers every column and rescales the non-constant ones to unit sd.
std::pair<OrdinalDataset, StandardizeRecord> standardize(const OrdinalDataset& data);

// Maps parameters fitted on standardized predictors back to the original
// scale so that linear predictors agree on every input row.
MtclmParams to_original_scale(const MtclmParams& params, const StandardizeRecord& rec);

// Closed-form intercept-only fit from category frequencies:
// alpha = logit P_hat(Y=0), zeta_k = logit P_hat(Y<=k | Y>=1). `smoothing`
// adds that many pseudo-observations per category boundary so the result
// stays finite and strictly increasing on degenerate data; 0 = exact MLE.
MtclmParams intercept_only_params(const OrdinalDataset& data, double smoothing = 0.0);

}  // namespace mtclm
