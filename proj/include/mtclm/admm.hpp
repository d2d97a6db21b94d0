#pragma once

#include <optional>
#include <vector>

#include "mtclm/smooth_solver.hpp"
#include "mtclm/types.hpp"

namespace mtclm {

// Splitting variables. theta column 0 is the smooth copy of beta, column 1
// of gamma; b mirrors theta under the consensus constraint theta = b. The
// fused variant adds a = theta * d (d = (1, -1)') with multiplier u; the
// group variant leaves a and u empty.
struct AdmmState {
  MatrixXd theta;  // p x 2
  MatrixXd b;      // p x 2
  MatrixXd v;      // p x 2 multiplier for theta - b
  VectorXd a;      // p (fused only)
  VectorXd u;      // p (fused only)
  double alpha = 0.0;
  VectorXd zeta;

  bool fused() const { return a.size() > 0; }
};

struct ResidualReport {
  double primal = 0.0;
  double dual = 0.0;
  double eps_pri = 0.0;
  double eps_dual = 0.0;
};

// Stacked constraint-violation norm, dual residual mu * (change in auxiliary
// variables) mapped through the constraint adjoint, and the matching
// absolute + relative thresholds.
ResidualReport residuals(const AdmmState& current, const AdmmState& previous,
                         const AdmmSettings& settings);

struct FitResult {
  MtclmParams params;  // beta/gamma read from b, alpha/zeta from the smooth block
  bool converged = false;
  int iterations = 0;
  std::vector<double> objective_trace;        // penalized objective per outer iteration
  std::vector<double> aug_lagrangian_trace;   // augmented Lagrangian per outer iteration
  std::vector<double> primal_residual_trace;
  std::vector<double> dual_residual_trace;
  double final_primal_residual = 0.0;
  double final_dual_residual = 0.0;
  AdmmState state;  // exit state, reusable as a warm start
  PenaltyConfig penalty;
  AdmmSettings admm;
  SmoothSolveSettings smooth;
};

// Penalized objective: total nll plus every active penalty term evaluated
// at params.beta / params.gamma.
double objective_value(const OrdinalDataset& data, const MtclmParams& params,
                       const PenaltyConfig& penalty);

// L1 + fused-lasso fit; penalty.lambda_g must be zero.
FitResult fit_fused(const OrdinalDataset& data, const PenaltyConfig& penalty,
                    const AdmmSettings& admm = {}, const SmoothSolveSettings& smooth = {},
                    const std::optional<MtclmParams>& init = std::nullopt,
                    const AdmmState* warm = nullptr);

// L1 + group-lasso fit; penalty.lambda_f must be zero.
FitResult fit_group(const OrdinalDataset& data, const PenaltyConfig& penalty,
                    const AdmmSettings& admm = {}, const SmoothSolveSettings& smooth = {},
                    const std::optional<MtclmParams>& init = std::nullopt,
                    const AdmmState* warm = nullptr);

}  // namespace mtclm
