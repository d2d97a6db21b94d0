#include "mtclm/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mtclm {

void validate_dataset(const OrdinalDataset& data) {
  if (data.x.rows() == 0 || data.x.cols() == 0)
    throw std::invalid_argument("dataset: predictor matrix is empty");
  if (data.y.size() != data.x.rows())
    throw std::invalid_argument("dataset: y has " + std::to_string(data.y.size()) +
                                " entries but x has " + std::to_string(data.x.rows()) + " rows");
  if (data.k_max < 2)
    throw std::invalid_argument("dataset: k_max must be >= 2, got " + std::to_string(data.k_max));
  if (!data.x.allFinite())
    throw std::invalid_argument("dataset: predictor matrix contains non-finite values");
  for (Eigen::Index i = 0; i < data.y.size(); ++i) {
    if (data.y[i] < 0 || data.y[i] > data.k_max)
      throw std::invalid_argument("dataset: y[" + std::to_string(i) + "] = " +
                                  std::to_string(data.y[i]) + " outside {0.." +
                                  std::to_string(data.k_max) + "}");
  }
}

void validate_params(const MtclmParams& params, Eigen::Index p, int k_max) {
  if (params.beta.size() != p)
    throw std::invalid_argument("params: beta has wrong length");
  if (params.gamma.size() != p)
    throw std::invalid_argument("params: gamma has wrong length");
  if (params.zeta.size() != k_max - 1)
    throw std::invalid_argument("params: zeta must have k_max-1 entries");
  if (!std::isfinite(params.alpha) || !params.beta.allFinite() || !params.gamma.allFinite() ||
      !params.zeta.allFinite())
    throw std::invalid_argument("params: non-finite entry");
  for (Eigen::Index k = 1; k < params.zeta.size(); ++k) {
    if (!(params.zeta[k] > params.zeta[k - 1]))
      throw std::invalid_argument("params: zeta must be strictly increasing");
  }
}

void validate_penalty(const PenaltyConfig& penalty) {
  if (penalty.lambda11 < 0 || penalty.lambda12 < 0 || penalty.lambda_f < 0 || penalty.lambda_g < 0)
    throw std::invalid_argument("penalty: negative tuning parameter");
  if (penalty.lambda_f > 0 && penalty.lambda_g > 0)
    throw std::invalid_argument("penalty: lambda_f and lambda_g cannot both be nonzero");
}

void validate_admm_settings(const AdmmSettings& settings) {
  if (settings.mu_f <= 0 || settings.mu_1 <= 0)
    throw std::invalid_argument("admm settings: penalty parameters must be positive");
  if (settings.max_iter < 1)
    throw std::invalid_argument("admm settings: max_iter must be >= 1");
  if (settings.eps_abs <= 0 || settings.eps_rel < 0)
    throw std::invalid_argument("admm settings: tolerances must be positive");
}

std::pair<OrdinalDataset, StandardizeRecord> standardize(const OrdinalDataset& data) {
  const Eigen::Index n = data.x.rows(), p = data.x.cols();
  StandardizeRecord rec;
  rec.mean = data.x.colwise().mean();
  rec.scale = VectorXd::Ones(p);
  OrdinalDataset out = data;
  out.x.rowwise() -= rec.mean.transpose();
  for (Eigen::Index j = 0; j < p; ++j) {
    const double sd = std::sqrt(out.x.col(j).squaredNorm() / static_cast<double>(n));
    if (sd > 0) {
      rec.scale[j] = sd;
      out.x.col(j) /= sd;
    }
  }
  return {std::move(out), std::move(rec)};
}

MtclmParams to_original_scale(const MtclmParams& params, const StandardizeRecord& rec) {
  MtclmParams out = params;
  out.beta = params.beta.cwiseQuotient(rec.scale);
  out.gamma = params.gamma.cwiseQuotient(rec.scale);
  const double beta_shift = out.beta.dot(rec.mean);
  const double gamma_shift = out.gamma.dot(rec.mean);
  out.alpha = params.alpha - beta_shift;
  out.zeta = params.zeta.array() - gamma_shift;
  return out;
}

MtclmParams intercept_only_params(const OrdinalDataset& data, double smoothing) {
  const Eigen::Index n = data.y.size();
  const int K = data.k_max;
  VectorXd counts = VectorXd::Zero(K + 1);
  for (Eigen::Index i = 0; i < n; ++i) counts[data.y[i]] += 1.0;
  const double n0 = counts[0];
  const double npat = static_cast<double>(n) - n0;

  auto logit = [](double q) { return std::log(q / (1.0 - q)); };

  MtclmParams params;
  params.alpha = logit((n0 + smoothing) / (static_cast<double>(n) + 2.0 * smoothing));
  params.beta = VectorXd::Zero(data.x.cols());
  params.gamma = VectorXd::Zero(data.x.cols());
  params.zeta.resize(K - 1);
  double cum = 0.0;
  for (int k = 1; k < K; ++k) {
    cum += counts[k];
    params.zeta[k - 1] =
        logit((cum + smoothing * k) / (npat + smoothing * K));
  }
  return params;
}

}  // namespace mtclm
