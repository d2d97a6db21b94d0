#pragma once

#include "mtclm/types.hpp"

namespace mtclm {

// n x (K+1) matrix of category probabilities:
// P(Y=0|x) = sigma(g0), P(Y=k|x) = (1 - sigma(g0)) (sigma(g_k) - sigma(g_{k-1}))
// with g0 = alpha + x'beta and g_k = zeta_k + x'gamma. Rows sum to one and
// the implied cumulative probabilities are monotone for any valid params.
MatrixXd predict_proba(const MtclmParams& params, const MatrixXd& x);

// 1 iff predicted disease probability 1 - P(Y=0|x) >= threshold.
VectorXi predict_screen(const MtclmParams& params, const MatrixXd& x, double threshold = 0.5);

// Argmax category; ties resolve to the lower label.
VectorXi predict_class(const MtclmParams& params, const MatrixXd& x);
VectorXi argmax_class(const MatrixXd& proba);

}  // namespace mtclm
