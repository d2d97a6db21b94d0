#include "mtclm/predict.hpp"

#include <stdexcept>

#include "mtclm/likelihood.hpp"

namespace mtclm {

MatrixXd predict_proba(const MtclmParams& params, const MatrixXd& x) {
  if (x.cols() != params.beta.size())
    throw std::invalid_argument("predict_proba: x has wrong number of columns");
  const int K = static_cast<int>(params.zeta.size()) + 1;
  const VectorXd g0 = (x * params.beta).array() + params.alpha;
  const VectorXd u = x * params.gamma;
  MatrixXd proba(x.rows(), K + 1);
  const MatrixXd severity = cumulative_logit_proba(params.zeta, u);  // n x K
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double p0 = sigmoid(g0[i]);
    proba(i, 0) = p0;
    proba.row(i).segment(1, K) = (1.0 - p0) * severity.row(i);
  }
  return proba;
}

VectorXi predict_screen(const MtclmParams& params, const MatrixXd& x, double threshold) {
  const MatrixXd proba = predict_proba(params, x);
  VectorXi out(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    out[i] = (1.0 - proba(i, 0)) >= threshold ? 1 : 0;
  return out;
}

VectorXi argmax_class(const MatrixXd& proba) {
  VectorXi out(proba.rows());
  for (Eigen::Index i = 0; i < proba.rows(); ++i) {
    int best = 0;
    for (Eigen::Index c = 1; c < proba.cols(); ++c)
      if (proba(i, c) > proba(i, best)) best = static_cast<int>(c);
    out[i] = best;
  }
  return out;
}

VectorXi predict_class(const MtclmParams& params, const MatrixXd& x) {
  return argmax_class(predict_proba(params, x));
}

}  // namespace mtclm
