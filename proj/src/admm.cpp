#include "mtclm/admm.hpp"

#include <cmath>
#include <stdexcept>

#include "mtclm/likelihood.hpp"
#include "mtclm/prox.hpp"

namespace mtclm {

double objective_value(const OrdinalDataset& data, const MtclmParams& params,
                       const PenaltyConfig& penalty) {
  double value = total_nll(data, params).total;
  value += penalty.lambda11 * params.beta.lpNorm<1>();
  value += penalty.lambda12 * params.gamma.lpNorm<1>();
  if (penalty.lambda_f > 0) value += penalty.lambda_f * (params.beta - params.gamma).lpNorm<1>();
  if (penalty.lambda_g > 0) {
    for (Eigen::Index j = 0; j < params.beta.size(); ++j)
      value += penalty.lambda_g * std::hypot(params.beta[j], params.gamma[j]);
  }
  return value;
}

ResidualReport residuals(const AdmmState& current, const AdmmState& previous,
                         const AdmmSettings& settings) {
  const double p = static_cast<double>(current.theta.rows());
  ResidualReport r;
  if (current.fused()) {
    const VectorXd fused_gap = current.theta.col(0) - current.theta.col(1) - current.a;
    const MatrixXd consensus_gap = current.theta - current.b;
    r.primal = std::sqrt(fused_gap.squaredNorm() + consensus_gap.squaredNorm());

    // Adjoint of theta -> (theta d, theta) maps (q, Q) to q d' + Q.
    MatrixXd dual_mat = settings.mu_1 * (current.b - previous.b);
    const VectorXd da = settings.mu_f * (current.a - previous.a);
    dual_mat.col(0) += da;
    dual_mat.col(1) -= da;
    r.dual = dual_mat.norm();

    const double ax_norm =
        std::sqrt((current.theta.col(0) - current.theta.col(1)).squaredNorm() +
                  current.theta.squaredNorm());
    const double bz_norm = std::sqrt(current.a.squaredNorm() + current.b.squaredNorm());
    r.eps_pri = settings.eps_abs * std::sqrt(3.0 * p) +
                settings.eps_rel * std::fmax(ax_norm, bz_norm);

    MatrixXd aty = current.v;
    aty.col(0) += current.u;
    aty.col(1) -= current.u;
    r.eps_dual = settings.eps_abs * std::sqrt(2.0 * p) + settings.eps_rel * aty.norm();
  } else {
    r.primal = (current.theta - current.b).norm();
    r.dual = settings.mu_1 * (current.b - previous.b).norm();
    r.eps_pri = settings.eps_abs * std::sqrt(2.0 * p) +
                settings.eps_rel * std::fmax(current.theta.norm(), current.b.norm());
    r.eps_dual = settings.eps_abs * std::sqrt(2.0 * p) + settings.eps_rel * current.v.norm();
  }
  return r;
}

namespace {

double aug_lagrangian(const OrdinalDataset& data, const AdmmState& st,
                      const PenaltyConfig& penalty, const AdmmSettings& settings) {
  MtclmParams params;
  params.alpha = st.alpha;
  params.zeta = st.zeta;
  params.beta = st.theta.col(0);
  params.gamma = st.theta.col(1);
  double value = total_nll(data, params).total;
  value += penalty.lambda11 * st.b.col(0).lpNorm<1>();
  value += penalty.lambda12 * st.b.col(1).lpNorm<1>();
  const MatrixXd consensus_gap = st.theta - st.b;
  value += (st.v.cwiseProduct(consensus_gap)).sum() +
           0.5 * settings.mu_1 * consensus_gap.squaredNorm();
  if (st.fused()) {
    value += penalty.lambda_f * st.a.lpNorm<1>();
    const VectorXd fused_gap = st.theta.col(0) - st.theta.col(1) - st.a;
    value += st.u.dot(fused_gap) + 0.5 * settings.mu_f * fused_gap.squaredNorm();
  } else if (penalty.lambda_g > 0) {
    for (Eigen::Index j = 0; j < st.b.rows(); ++j)
      value += penalty.lambda_g * std::hypot(st.b(j, 0), st.b(j, 1));
  }
  return value;
}

AdmmState initial_state(const OrdinalDataset& data, bool fused,
                        const std::optional<MtclmParams>& init) {
  const Eigen::Index p = data.x.cols();
  AdmmState st;
  MtclmParams start = init ? *init : intercept_only_params(data, 0.5);
  st.alpha = start.alpha;
  st.zeta = start.zeta;
  st.theta.resize(p, 2);
  st.theta.col(0) = init ? start.beta : VectorXd::Zero(p);
  st.theta.col(1) = init ? start.gamma : VectorXd::Zero(p);
  st.b = st.theta;
  st.v = MatrixXd::Zero(p, 2);
  if (fused) {
    st.a = st.theta.col(0) - st.theta.col(1);
    st.u = VectorXd::Zero(p);
  }
  return st;
}

FitResult run_admm(const OrdinalDataset& data, const PenaltyConfig& penalty,
                   const AdmmSettings& admm, const SmoothSolveSettings& smooth, bool fused,
                   const std::optional<MtclmParams>& init, const AdmmState* warm) {
  validate_dataset(data);
  validate_penalty(penalty);
  validate_admm_settings(admm);
  if (fused && penalty.lambda_g > 0)
    throw std::invalid_argument("fit_fused: lambda_g must be zero");
  if (!fused && penalty.lambda_f > 0)
    throw std::invalid_argument("fit_group: lambda_f must be zero");
  if (init) validate_params(*init, data.x.cols(), data.k_max);

  const Eigen::Index p = data.x.cols();
  AdmmState st = warm ? *warm : initial_state(data, fused, init);
  if (warm && (st.theta.rows() != p || st.fused() != fused))
    throw std::invalid_argument("warm state does not match problem shape");

  SmoothPacking packing{p, data.k_max};
  FitResult res;
  res.penalty = penalty;
  res.admm = admm;
  res.smooth = smooth;

  double inner_tol = 1e-4;
  VectorXd x = packing.pack(MtclmParams{st.alpha, st.theta.col(0), st.zeta, st.theta.col(1)});

  for (int iter = 0; iter < admm.max_iter; ++iter) {
    // Smooth block over (alpha, zeta, theta) with the penalties held fixed.
    auto objective = [&](const VectorXd& xv, VectorXd* grad) -> double {
      MtclmParams params = packing.unpack(xv);
      double value = screening_nll(data, params.alpha, params.beta) +
                     severity_nll(data, params.zeta, params.gamma);
      const VectorXd r1 = params.beta - st.b.col(0);
      const VectorXd r2 = params.gamma - st.b.col(1);
      value += st.v.col(0).dot(r1) + st.v.col(1).dot(r2) +
               0.5 * admm.mu_1 * (r1.squaredNorm() + r2.squaredNorm());
      VectorXd fused_gap;
      if (fused) {
        fused_gap = params.beta - params.gamma - st.a;
        value += st.u.dot(fused_gap) + 0.5 * admm.mu_f * fused_gap.squaredNorm();
      }
      if (grad) {
        ScreeningGrad gs = grad_screening(data, params.alpha, params.beta);
        SeverityGrad gv = grad_severity(data, params.zeta, params.gamma);
        VectorXd d_beta = gs.d_beta + st.v.col(0) + admm.mu_1 * r1;
        VectorXd d_gamma = gv.d_gamma + st.v.col(1) + admm.mu_1 * r2;
        if (fused) {
          const VectorXd pull = st.u + admm.mu_f * fused_gap;
          d_beta += pull;
          d_gamma -= pull;
        }
        *grad = packing.pack_grad(xv, gs.d_alpha, gv.d_zeta, d_beta, d_gamma);
      }
      return value;
    };

    SmoothSolveSettings inner = smooth;
    inner.grad_tol = std::fmax(smooth.grad_tol, inner_tol);
    MinimizeResult min_res = minimize_smooth(objective, x, inner);
    x = min_res.x;
    MtclmParams params = packing.unpack(x);
    st.alpha = params.alpha;
    st.zeta = params.zeta;
    st.theta.col(0) = params.beta;
    st.theta.col(1) = params.gamma;

    AdmmState prev = st;
    if (fused)
      st.a = soft_threshold((st.theta.col(0) - st.theta.col(1) + st.u / admm.mu_f).eval(),
                            penalty.lambda_f / admm.mu_f);
    st.b.col(0) = soft_threshold((st.theta.col(0) + st.v.col(0) / admm.mu_1).eval(),
                                 penalty.lambda11 / admm.mu_1);
    st.b.col(1) = soft_threshold((st.theta.col(1) + st.v.col(1) / admm.mu_1).eval(),
                                 penalty.lambda12 / admm.mu_1);
    if (!fused && penalty.lambda_g > 0) {
      const double xi = std::sqrt(2.0) * penalty.lambda_g / admm.mu_1;
      for (Eigen::Index j = 0; j < p; ++j)
        st.b.row(j) = group_soft_threshold(st.b.row(j).transpose(), xi).transpose();
    }
    if (fused) st.u += admm.mu_f * (st.theta.col(0) - st.theta.col(1) - st.a);
    st.v += admm.mu_1 * (st.theta - st.b);

    const ResidualReport rr = residuals(st, prev, admm);
    res.objective_trace.push_back(objective_value(data, params, penalty));
    res.aug_lagrangian_trace.push_back(aug_lagrangian(data, st, penalty, admm));
    res.primal_residual_trace.push_back(rr.primal);
    res.dual_residual_trace.push_back(rr.dual);
    res.iterations = iter + 1;
    res.final_primal_residual = rr.primal;
    res.final_dual_residual = rr.dual;

    inner_tol = std::fmax(smooth.grad_tol, std::fmin(1e-4, 0.05 * std::fmax(rr.primal, rr.dual)));

    if (rr.primal <= rr.eps_pri && rr.dual <= rr.eps_dual) {
      res.converged = true;
      break;
    }
  }

  res.params.alpha = st.alpha;
  res.params.zeta = st.zeta;
  res.params.beta = st.b.col(0);
  res.params.gamma = st.b.col(1);
  res.state = std::move(st);
  return res;
}

}  // namespace

FitResult fit_fused(const OrdinalDataset& data, const PenaltyConfig& penalty,
                    const AdmmSettings& admm, const SmoothSolveSettings& smooth,
                    const std::optional<MtclmParams>& init, const AdmmState* warm) {
  return run_admm(data, penalty, admm, smooth, true, init, warm);
}

FitResult fit_group(const OrdinalDataset& data, const PenaltyConfig& penalty,
                    const AdmmSettings& admm, const SmoothSolveSettings& smooth,
                    const std::optional<MtclmParams>& init, const AdmmState* warm) {
  return run_admm(data, penalty, admm, smooth, false, init, warm);
}

}  // namespace mtclm
