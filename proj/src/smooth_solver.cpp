#include "mtclm/smooth_solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace mtclm {

MinimizeResult minimize_smooth(const SmoothObjective& objective, const VectorXd& start,
                               const SmoothSolveSettings& settings) {
  const Eigen::Index dim = start.size();
  MinimizeResult res;
  res.x = start;
  VectorXd grad(dim);
  res.value = objective(res.x, &grad);
  if (!std::isfinite(res.value))
    throw std::invalid_argument("minimize_smooth: objective non-finite at start");
  res.grad_norm = grad.lpNorm<Eigen::Infinity>();
  if (res.grad_norm <= settings.grad_tol) {
    res.converged = true;
    return res;
  }

  const int m = settings.history;
  std::vector<VectorXd> s_hist, y_hist;
  std::vector<double> rho_hist;

  VectorXd direction(dim), x_new(dim), grad_new(dim), alpha_buf;
  for (int iter = 0; iter < settings.max_inner_iter; ++iter) {
    // Two-loop recursion.
    direction = -grad;
    const int hist = static_cast<int>(s_hist.size());
    alpha_buf.resize(hist);
    for (int i = hist - 1; i >= 0; --i) {
      alpha_buf[i] = rho_hist[i] * s_hist[i].dot(direction);
      direction -= alpha_buf[i] * y_hist[i];
    }
    if (hist > 0) {
      const double scale = s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
      direction *= scale;
    }
    for (int i = 0; i < hist; ++i) {
      const double b = rho_hist[i] * y_hist[i].dot(direction);
      direction += (alpha_buf[i] - b) * s_hist[i];
    }
    double dir_deriv = grad.dot(direction);
    if (!(dir_deriv < 0)) {
      direction = -grad;
      dir_deriv = -grad.squaredNorm();
    }

    double step = 1.0;
    double value_new = std::numeric_limits<double>::infinity();
    bool accepted = false;
    for (int ls = 0; ls < settings.max_linesearch; ++ls) {
      x_new = res.x + step * direction;
      value_new = objective(x_new, &grad_new);
      if (std::isfinite(value_new) &&
          value_new <= res.value + settings.armijo_c * step * dir_deriv) {
        accepted = true;
        break;
      }
      step *= settings.backtrack_ratio;
    }
    if (!accepted) {
      res.iterations = iter;
      res.grad_norm = grad.lpNorm<Eigen::Infinity>();
      return res;  // stalled; best point so far is res.x
    }

    VectorXd s = x_new - res.x;
    VectorXd y = grad_new - grad;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (static_cast<int>(s_hist.size()) == m) {
        s_hist.erase(s_hist.begin());
        y_hist.erase(y_hist.begin());
        rho_hist.erase(rho_hist.begin());
      }
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
    } else {
      // Negative curvature invalidates the stored pairs; restart from steepest descent.
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
    }

    res.x.swap(x_new);
    res.value = value_new;
    grad.swap(grad_new);
    res.iterations = iter + 1;
    res.grad_norm = grad.lpNorm<Eigen::Infinity>();
    if (res.grad_norm <= settings.grad_tol) {
      res.converged = true;
      return res;
    }
  }
  return res;
}

VectorXd zeta_to_loggap(const VectorXd& zeta) {
  VectorXd phi(zeta.size());
  if (zeta.size() == 0) return phi;
  phi[0] = zeta[0];
  for (Eigen::Index k = 1; k < zeta.size(); ++k) {
    const double gap = zeta[k] - zeta[k - 1];
    if (!(gap > 0)) throw std::invalid_argument("zeta_to_loggap: thresholds not increasing");
    phi[k] = std::log(gap);
  }
  return phi;
}

VectorXd loggap_to_zeta(const VectorXd& phi) {
  VectorXd zeta(phi.size());
  if (phi.size() == 0) return zeta;
  zeta[0] = phi[0];
  for (Eigen::Index k = 1; k < phi.size(); ++k) zeta[k] = zeta[k - 1] + std::exp(phi[k]);
  return zeta;
}

VectorXd loggap_chain_rule(const VectorXd& phi, const VectorXd& d_zeta) {
  VectorXd d_phi(phi.size());
  if (phi.size() == 0) return d_phi;
  // zeta_k depends on phi_1 for every k and on phi_j (j>=2) for k >= j.
  double suffix = 0.0;
  for (Eigen::Index k = phi.size() - 1; k >= 1; --k) {
    suffix += d_zeta[k];
    d_phi[k] = std::exp(phi[k]) * suffix;
  }
  d_phi[0] = suffix + d_zeta[0];
  return d_phi;
}

VectorXd SmoothPacking::pack(const MtclmParams& params) const {
  VectorXd x(size());
  x[0] = params.alpha;
  x.segment(1, k_max - 1) = zeta_to_loggap(params.zeta);
  x.segment(k_max, p) = params.beta;
  x.segment(k_max + p, p) = params.gamma;
  return x;
}

MtclmParams SmoothPacking::unpack(const VectorXd& x) const {
  MtclmParams params;
  params.alpha = x[0];
  params.zeta = loggap_to_zeta(x.segment(1, k_max - 1));
  params.beta = x.segment(k_max, p);
  params.gamma = x.segment(k_max + p, p);
  return params;
}

VectorXd SmoothPacking::pack_grad(const VectorXd& x, double d_alpha, const VectorXd& d_zeta,
                                  const VectorXd& d_beta, const VectorXd& d_gamma) const {
  VectorXd g(size());
  g[0] = d_alpha;
  g.segment(1, k_max - 1) = loggap_chain_rule(x.segment(1, k_max - 1), d_zeta);
  g.segment(k_max, p) = d_beta;
  g.segment(k_max + p, p) = d_gamma;
  return g;
}

}  // namespace mtclm
