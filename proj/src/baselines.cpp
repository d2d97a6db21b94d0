#include "mtclm/baselines.hpp"

#include <cmath>
#include <stdexcept>

#include "mtclm/likelihood.hpp"
#include "mtclm/prox.hpp"
#include "mtclm/smooth_solver.hpp"

namespace mtclm {

namespace {

// Proximal gradient on F(w) = g(w) + lambda * ||w_tail||_1 where the first
// `n_free` coordinates are unpenalized. g reports value and gradient.
struct ProxGradProblem {
  std::function<double(const VectorXd&, VectorXd*)> g;
  Eigen::Index n_free = 0;
  double lambda = 0.0;
};

struct ProxGradOutcome {
  VectorXd w;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  VectorXd smooth_grad;  // gradient of g at exit
};

double penalized_value(const ProxGradProblem& prob, const VectorXd& w, double g_val) {
  return g_val + prob.lambda * w.tail(w.size() - prob.n_free).lpNorm<1>();
}

ProxGradOutcome prox_grad_descend(const ProxGradProblem& prob, VectorXd w,
                                  const ProxGradSettings& settings) {
  ProxGradOutcome out;
  VectorXd grad(w.size()), w_next(w.size()), grad_next(w.size());
  double g_val = prob.g(w, &grad);
  double f_val = penalized_value(prob, w, g_val);
  double step = settings.init_step;

  for (int iter = 0; iter < settings.max_iter; ++iter) {
    bool accepted = false;
    double g_next = 0.0;
    for (int bt = 0; bt < 80; ++bt) {
      w_next = w - step * grad;
      w_next.tail(w.size() - prob.n_free) =
          soft_threshold(w_next.tail(w.size() - prob.n_free).eval(), step * prob.lambda);
      g_next = prob.g(w_next, nullptr);
      const VectorXd delta = w_next - w;
      // Quadratic upper-bound test for the smooth part.
      if (std::isfinite(g_next) &&
          g_next <= g_val + grad.dot(delta) + delta.squaredNorm() / (2.0 * step) + 1e-14) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    const double f_next = penalized_value(prob, w_next, g_next);
    const double change = std::fabs(f_val - f_next) / std::fmax(1.0, std::fabs(f_val));
    w.swap(w_next);
    g_val = prob.g(w, &grad);
    f_val = f_next;
    out.iterations = iter + 1;
    if (change < settings.tol) {
      out.converged = true;
      break;
    }
    step *= settings.step_growth;
  }
  out.w = std::move(w);
  out.objective = f_val;
  out.smooth_grad = std::move(grad);
  return out;
}

double kkt_violation(const VectorXd& coef, const VectorXd& grad, double lambda) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < coef.size(); ++j) {
    const double v = coef[j] == 0.0 ? std::fmax(0.0, std::fabs(grad[j]) - lambda)
                                    : std::fabs(grad[j] + lambda * (coef[j] > 0 ? 1.0 : -1.0));
    worst = std::fmax(worst, v);
  }
  return worst;
}

}  // namespace

BaselineFit fit_logistic_l1(const OrdinalDataset& data, double lambda,
                            const ProxGradSettings& settings) {
  if (lambda < 0) throw std::invalid_argument("fit_logistic_l1: negative lambda");
  const Eigen::Index p = data.x.cols();

  ProxGradProblem prob;
  prob.n_free = 1;
  prob.lambda = lambda;
  prob.g = [&](const VectorXd& w, VectorXd* grad) -> double {
    const double alpha = w[0];
    const VectorXd beta = w.tail(p);
    if (grad) {
      ScreeningGrad g = grad_screening(data, alpha, beta);
      (*grad)[0] = g.d_alpha;
      grad->tail(p) = g.d_beta;
    }
    return screening_nll(data, alpha, beta);
  };

  VectorXd start = VectorXd::Zero(p + 1);
  start[0] = intercept_only_params(data, 0.5).alpha;
  ProxGradOutcome out = prox_grad_descend(prob, start, settings);

  BaselineFit fit;
  fit.kind = BaselineKind::logistic_l1;
  fit.intercepts = out.w.head(1);
  fit.coefficients = out.w.tail(p);
  fit.lambda = lambda;
  fit.converged = out.converged;
  fit.iterations = out.iterations;
  fit.objective = out.objective;
  fit.kkt_gap = kkt_violation(fit.coefficients, out.smooth_grad.tail(p), lambda);
  return fit;
}

namespace {

double clm_raw_nll(const OrdinalDataset& data, const VectorXd& thresholds, const VectorXd& coef) {
  return cumulative_logit_nll(data.y, thresholds, data.x * coef) /
         static_cast<double>(data.x.rows());
}

}  // namespace

double clm_nll(const OrdinalDataset& data, const VectorXd& thresholds, const VectorXd& coef) {
  return clm_raw_nll(data, thresholds, coef);
}

MatrixXd clm_predict_proba(const VectorXd& thresholds, const VectorXd& coef, const MatrixXd& x) {
  return cumulative_logit_proba(thresholds, x * coef);
}

BaselineFit fit_clm_l1(const OrdinalDataset& data, double lambda,
                       const ProxGradSettings& settings) {
  if (lambda < 0) throw std::invalid_argument("fit_clm_l1: negative lambda");
  const Eigen::Index p = data.x.cols();
  const int K = data.k_max;
  const double n = static_cast<double>(data.x.rows());

  // Layout: [phi (K log-gap threshold coords), coef (p)].
  ProxGradProblem prob;
  prob.n_free = K;
  prob.lambda = lambda;
  prob.g = [&](const VectorXd& w, VectorXd* grad) -> double {
    const VectorXd thresholds = loggap_to_zeta(w.head(K));
    const VectorXd coef = w.tail(p);
    const VectorXd u = data.x * coef;
    if (grad) {
      CumulativeLogitGrad raw = cumulative_logit_grad(data.y, thresholds, u);
      grad->head(K) = loggap_chain_rule(w.head(K), raw.d_thresholds / n);
      grad->tail(p).noalias() = data.x.transpose() * (raw.d_u / n);
    }
    return cumulative_logit_nll(data.y, thresholds, u) / n;
  };

  // Start thresholds at the smoothed cumulative frequency logits.
  VectorXd counts = VectorXd::Zero(K + 1);
  for (Eigen::Index i = 0; i < data.y.size(); ++i) counts[data.y[i]] += 1.0;
  VectorXd t0(K);
  double cum = 0.0;
  for (int k = 0; k < K; ++k) {
    cum += counts[k];
    t0[k] = logit((cum + 0.5 * (k + 1)) / (n + 0.5 * (K + 1)));
  }
  VectorXd start = VectorXd::Zero(K + p);
  start.head(K) = zeta_to_loggap(t0);

  ProxGradOutcome out = prox_grad_descend(prob, start, settings);

  BaselineFit fit;
  fit.kind = BaselineKind::clm_l1;
  fit.intercepts = loggap_to_zeta(out.w.head(K));
  fit.coefficients = out.w.tail(p);
  fit.lambda = lambda;
  fit.converged = out.converged;
  fit.iterations = out.iterations;
  fit.objective = out.objective;

  // KKT measured in natural coordinates for the penalized block.
  CumulativeLogitGrad raw = cumulative_logit_grad(data.y, fit.intercepts, data.x * fit.coefficients);
  const VectorXd coef_grad = data.x.transpose() * (raw.d_u / n);
  fit.kkt_gap = kkt_violation(fit.coefficients, coef_grad, lambda);
  return fit;
}

VectorXd baseline_healthy_proba(const BaselineFit& fit, const MatrixXd& x) {
  const VectorXd eta = (x * fit.coefficients).array() + fit.intercepts[0];
  VectorXd p0(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) p0[i] = sigmoid(eta[i]);
  return p0;
}

BaselineFit baseline_to_original_scale(const BaselineFit& fit, const StandardizeRecord& rec) {
  BaselineFit out = fit;
  out.coefficients = fit.coefficients.cwiseQuotient(rec.scale);
  const double shift = out.coefficients.dot(rec.mean);
  out.intercepts = fit.intercepts.array() - shift;
  return out;
}

}  // namespace mtclm
