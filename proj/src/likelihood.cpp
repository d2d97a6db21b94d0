#include "mtclm/likelihood.hpp"

#include <cmath>
#include <stdexcept>

namespace mtclm {

double sigmoid(double u) {
  if (u >= 0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

double softplus(double u) {
  return std::fmax(u, 0.0) + std::log1p(std::exp(-std::fabs(u)));
}

double log_sigmoid(double u) { return -softplus(-u); }

double sigmoid_deriv(double u) {
  // sigma(u)sigma(-u) evaluated in log space so large |u| underflows cleanly
  // instead of rounding sigma to 1 and cancelling.
  return std::exp(-softplus(u) - softplus(-u));
}

double log_expm1(double u) {
  if (u <= 0.6931471805599453) return std::log(std::expm1(u));
  return u + std::log1p(-std::exp(-u));
}

double logit(double q) { return std::log(q) - std::log1p(-q); }

double screening_nll(const OrdinalDataset& data, double alpha, const VectorXd& beta) {
  const Eigen::Index n = data.x.rows();
  const VectorXd eta = (data.x * beta).array() + alpha;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    sum += data.y[i] == 0 ? softplus(-eta[i]) : softplus(eta[i]);
  return sum / static_cast<double>(n);
}

ScreeningGrad grad_screening(const OrdinalDataset& data, double alpha, const VectorXd& beta) {
  const Eigen::Index n = data.x.rows();
  const VectorXd eta = (data.x * beta).array() + alpha;
  VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i)
    w[i] = sigmoid(eta[i]) - (data.y[i] == 0 ? 1.0 : 0.0);
  w /= static_cast<double>(n);
  ScreeningGrad g;
  g.d_alpha = w.sum();
  g.d_beta.noalias() = data.x.transpose() * w;
  return g;
}

// -log P(class) for one row; classes 0..M, thresholds t_1..t_M.
static double neg_log_class_prob(int c, const VectorXd& t, double u, int M) {
  if (c == 0) return softplus(-(t[0] + u));
  if (c == M) return softplus(t[M - 1] + u);
  // log(sigma(a) - sigma(b)) = log sigma(b) + log sigma(-a) + log(e^{a-b} - 1)
  const double a = t[c] + u, b = t[c - 1] + u;
  return softplus(-b) + softplus(a) - log_expm1(t[c] - t[c - 1]);
}

double cumulative_logit_nll(const VectorXi& cls, const VectorXd& thresholds, const VectorXd& u) {
  const int M = static_cast<int>(thresholds.size());
  double sum = 0.0;
  for (Eigen::Index i = 0; i < cls.size(); ++i) {
    if (cls[i] < 0) continue;
    sum += neg_log_class_prob(cls[i], thresholds, u[i], M);
  }
  return sum;
}

CumulativeLogitGrad cumulative_logit_grad(const VectorXi& cls, const VectorXd& thresholds,
                                          const VectorXd& u) {
  const int M = static_cast<int>(thresholds.size());
  CumulativeLogitGrad g;
  g.d_u = VectorXd::Zero(cls.size());
  g.d_thresholds = VectorXd::Zero(M);
  for (Eigen::Index i = 0; i < cls.size(); ++i) {
    const int c = cls[i];
    if (c < 0) continue;
    if (c == 0) {
      // -log sigma(t_1 + u): derivative -(1 - sigma) wrt both t_1 and u
      const double s = sigmoid(-(thresholds[0] + u[i]));
      g.d_u[i] = -s;
      g.d_thresholds[0] -= s;
    } else if (c == M) {
      const double s = sigmoid(thresholds[M - 1] + u[i]);
      g.d_u[i] = s;
      g.d_thresholds[M - 1] += s;
    } else {
      const double a = thresholds[c] + u[i], b = thresholds[c - 1] + u[i];
      const double log_diff = -softplus(-b) - softplus(a) + log_expm1(thresholds[c] - thresholds[c - 1]);
      const double diff = std::fmax(std::exp(log_diff), kProbFloor);
      const double da = sigmoid_deriv(a), db = sigmoid_deriv(b);
      g.d_u[i] = -(da - db) / diff;
      g.d_thresholds[c] -= da / diff;
      g.d_thresholds[c - 1] += db / diff;
    }
  }
  return g;
}

MatrixXd cumulative_logit_proba(const VectorXd& thresholds, const VectorXd& u) {
  const int M = static_cast<int>(thresholds.size());
  MatrixXd proba(u.size(), M + 1);
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    double lower = 0.0;
    for (int c = 0; c < M; ++c) {
      const double upper = sigmoid(thresholds[c] + u[i]);
      proba(i, c) = upper - lower;
      lower = upper;
    }
    proba(i, M) = 1.0 - lower;
  }
  return proba;
}

static VectorXi severity_classes(const OrdinalDataset& data) {
  VectorXi cls(data.y.size());
  for (Eigen::Index i = 0; i < data.y.size(); ++i) cls[i] = data.y[i] - 1;
  return cls;
}

double severity_nll(const OrdinalDataset& data, const VectorXd& zeta, const VectorXd& gamma) {
  const VectorXd u = data.x * gamma;
  return cumulative_logit_nll(severity_classes(data), zeta, u) / static_cast<double>(data.x.rows());
}

SeverityGrad grad_severity(const OrdinalDataset& data, const VectorXd& zeta, const VectorXd& gamma) {
  const double n = static_cast<double>(data.x.rows());
  const VectorXd u = data.x * gamma;
  CumulativeLogitGrad raw = cumulative_logit_grad(severity_classes(data), zeta, u);
  SeverityGrad g;
  g.d_zeta = raw.d_thresholds / n;
  g.d_gamma.noalias() = data.x.transpose() * (raw.d_u / n);
  return g;
}

LikelihoodValue total_nll(const OrdinalDataset& data, const MtclmParams& params) {
  LikelihoodValue v;
  v.screening = screening_nll(data, params.alpha, params.beta);
  v.severity = severity_nll(data, params.zeta, params.gamma);
  v.total = v.screening + v.severity;
  return v;
}

}  // namespace mtclm
