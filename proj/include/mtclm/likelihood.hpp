#pragma once

#include "mtclm/types.hpp"

namespace mtclm {

// Stable scalar helpers.
double sigmoid(double u);
double softplus(double u);            // log(1 + e^u) without overflow
double log_sigmoid(double u);         // -softplus(-u)
double sigmoid_deriv(double u);       // sigma(u) * (1 - sigma(u)), no cancellation
double log_expm1(double u);           // log(e^u - 1), u > 0
double logit(double q);

// Floor applied to category probabilities inside gradient ratios.
inline constexpr double kProbFloor = 1e-300;

// Average negative log-likelihood of the screening block,
// -(1/n) sum_i [ 1(y_i=0) log sigma(eta_i) + 1(y_i>=1) log(1 - sigma(eta_i)) ]
// with eta_i = alpha + x_i'beta.
double screening_nll(const OrdinalDataset& data, double alpha, const VectorXd& beta);

// Average negative log-likelihood of the severity block. Only rows with
// y >= 1 contribute; the divisor stays the full n.
double severity_nll(const OrdinalDataset& data, const VectorXd& zeta, const VectorXd& gamma);

struct LikelihoodValue {
  double screening = 0.0;
  double severity = 0.0;
  double total = 0.0;
};

LikelihoodValue total_nll(const OrdinalDataset& data, const MtclmParams& params);

struct ScreeningGrad {
  double d_alpha = 0.0;
  VectorXd d_beta;
};

struct SeverityGrad {
  VectorXd d_zeta;
  VectorXd d_gamma;
};

ScreeningGrad grad_screening(const OrdinalDataset& data, double alpha, const VectorXd& beta);
SeverityGrad grad_severity(const OrdinalDataset& data, const VectorXd& zeta, const VectorXd& gamma);

// Cumulative-logit machinery shared by the severity block and the ordinal
// baseline: classes 0..M with M finite thresholds t, class probabilities
// P(c) = sigma(t_{c+1} + u) - sigma(t_c + u), t_0 = -inf, t_{M+1} = +inf.
// Rows with cls[i] < 0 are skipped; sums are raw (caller scales).
double cumulative_logit_nll(const VectorXi& cls, const VectorXd& thresholds, const VectorXd& u);

struct CumulativeLogitGrad {
  VectorXd d_u;           // per-row d(-log P)/du, 0 for skipped rows
  VectorXd d_thresholds;  // accumulated over rows
};

CumulativeLogitGrad cumulative_logit_grad(const VectorXi& cls, const VectorXd& thresholds,
                                          const VectorXd& u);

// n x (M+1) matrix of class probabilities for the same parameterization.
MatrixXd cumulative_logit_proba(const VectorXd& thresholds, const VectorXd& u);

}  // namespace mtclm
