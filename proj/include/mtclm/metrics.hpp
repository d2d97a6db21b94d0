#pragma once

#include "mtclm/types.hpp"

namespace mtclm {

// Mann-Whitney AUC with half credit for tied scores. Labels are 0/1; throws
// std::invalid_argument when one class is absent.
double roc_auc(const VectorXd& scores, const VectorXi& labels);

// 2TP / (2TP + FP + FN) on 0/1 vectors; 0 when the denominator is zero.
double f1_score(const VectorXi& predicted, const VectorXi& truth);

double accuracy(const VectorXi& predicted, const VectorXi& truth);
double mean_absolute_error(const VectorXi& predicted, const VectorXi& truth);

enum class TauVariant { b, a };

// Kendall rank correlation; tau-b (tie-corrected) by default. Throws
// std::invalid_argument when either vector is constant.
double kendall_tau(const VectorXi& a, const VectorXi& b, TauVariant variant = TauVariant::b);

struct SelectionMetrics {
  double power = 0.0;        // TP / number of truly active positions
  double fdr = 0.0;          // FP / number of selected positions, 0 when none selected
  double sensitivity = 0.0;  // same ratio as power
  double specificity = 0.0;  // TN / number of truly inactive positions
};

// Pooled over the 2p (beta, gamma) positions; a position is selected iff the
// estimate is exactly nonzero, truly active iff the true coefficient is.
SelectionMetrics selection_metrics(const VectorXd& beta_hat, const VectorXd& gamma_hat,
                                   const VectorXd& beta_true, const VectorXd& gamma_true);

}  // namespace mtclm
