#pragma once

#include <functional>

#include "mtclm/types.hpp"

namespace mtclm {

struct SmoothSolveSettings {
  int max_inner_iter = 200;
  double grad_tol = 1e-6;       // sup-norm stopping tolerance
  int history = 10;             // L-BFGS memory
  double armijo_c = 1e-4;
  double backtrack_ratio = 0.5;
  int max_linesearch = 60;
};

// Objective callback: returns the value at x and, when grad is non-null,
// fills it with the gradient.
using SmoothObjective = std::function<double(const VectorXd&, VectorXd*)>;

struct MinimizeResult {
  VectorXd x;
  double value = 0.0;
  double grad_norm = 0.0;  // sup-norm at exit
  int iterations = 0;
  bool converged = false;
};

// Limited-memory quasi-Newton descent with Armijo backtracking. Monotone:
// every accepted step lowers the objective. Throws std::invalid_argument if
// the objective is non-finite at the start.
MinimizeResult minimize_smooth(const SmoothObjective& objective, const VectorXd& start,
                               const SmoothSolveSettings& settings);

// Strictly increasing thresholds <-> unconstrained log-gap coordinates:
// phi_1 = zeta_1, phi_k = log(zeta_k - zeta_{k-1}) for k >= 2.
VectorXd zeta_to_loggap(const VectorXd& zeta);
VectorXd loggap_to_zeta(const VectorXd& phi);
// Pulls a gradient in zeta back to phi coordinates.
VectorXd loggap_chain_rule(const VectorXd& phi, const VectorXd& d_zeta);

// Packing layout for the joint smooth block: [alpha, phi (K-1), beta (p), gamma (p)].
struct SmoothPacking {
  Eigen::Index p = 0;
  int k_max = 0;

  Eigen::Index size() const { return 1 + (k_max - 1) + 2 * p; }
  VectorXd pack(const MtclmParams& params) const;
  MtclmParams unpack(const VectorXd& x) const;
  // Gradient in natural coordinates -> packed coordinates (needs phi slice of x).
  VectorXd pack_grad(const VectorXd& x, double d_alpha, const VectorXd& d_zeta,
                     const VectorXd& d_beta, const VectorXd& d_gamma) const;
};

}  // namespace mtclm
