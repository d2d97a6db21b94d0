#include <doctest.h>

#include <cmath>
#include <random>

#include "mtclm/simgen.hpp"
#include "mtclm/types.hpp"

using namespace mtclm;

namespace {

OrdinalDataset tiny_dataset() {
  OrdinalDataset data;
  data.x.resize(4, 2);
  data.x << 0.0, 1.0, 2.0, -1.0, 1.0, 0.5, -1.0, 3.0;
  data.y.resize(4);
  data.y << 0, 1, 2, 0;
  data.k_max = 2;
  return data;
}

}  // namespace

TEST_CASE("validate_dataset accepts a well-formed sample") {
  CHECK_NOTHROW(validate_dataset(tiny_dataset()));
}

TEST_CASE("validate_dataset rejects each malformed input") {
  OrdinalDataset data = tiny_dataset();
  data.x.resize(0, 0);
  CHECK_THROWS_AS(validate_dataset(data), std::invalid_argument);

  data = tiny_dataset();
  data.y.resize(3);
  CHECK_THROWS_AS(validate_dataset(data), std::invalid_argument);

  data = tiny_dataset();
  data.k_max = 1;
  CHECK_THROWS_AS(validate_dataset(data), std::invalid_argument);

  data = tiny_dataset();
  data.x(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(validate_dataset(data), std::invalid_argument);

  data = tiny_dataset();
  data.y[2] = 3;
  CHECK_THROWS_AS(validate_dataset(data), std::invalid_argument);

  data = tiny_dataset();
  data.y[0] = -1;
  CHECK_THROWS_AS(validate_dataset(data), std::invalid_argument);
}

TEST_CASE("validate_params enforces shapes and increasing thresholds") {
  MtclmParams params;
  params.beta = VectorXd::Zero(3);
  params.gamma = VectorXd::Zero(3);
  params.zeta.resize(2);
  params.zeta << -0.5, 0.7;
  CHECK_NOTHROW(validate_params(params, 3, 3));

  MtclmParams bad = params;
  bad.beta.resize(2);
  CHECK_THROWS_AS(validate_params(bad, 3, 3), std::invalid_argument);

  bad = params;
  bad.zeta << 0.7, 0.7;
  CHECK_THROWS_AS(validate_params(bad, 3, 3), std::invalid_argument);

  bad = params;
  bad.alpha = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(validate_params(bad, 3, 3), std::invalid_argument);
}

TEST_CASE("validate_penalty rejects negatives and double structural penalties") {
  CHECK_NOTHROW(validate_penalty({0.1, 0.2, 0.3, 0.0}));
  CHECK_NOTHROW(validate_penalty({0.1, 0.2, 0.0, 0.3}));
  CHECK_THROWS_AS(validate_penalty({-0.1, 0.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate_penalty({0.1, 0.1, 0.2, 0.2}), std::invalid_argument);
}

TEST_CASE("validate_admm_settings rejects nonpositive knobs") {
  CHECK_NOTHROW(validate_admm_settings({}));
  CHECK_THROWS_AS(validate_admm_settings({0.0, 1.0, 10, 1e-5, 1e-4}), std::invalid_argument);
  CHECK_THROWS_AS(validate_admm_settings({1.0, 1.0, 0, 1e-5, 1e-4}), std::invalid_argument);
  CHECK_THROWS_AS(validate_admm_settings({1.0, 1.0, 10, 0.0, 1e-4}), std::invalid_argument);
}

TEST_CASE("standardize maps a two-point column to plus and minus one") {
  OrdinalDataset data;
  data.x.resize(2, 1);
  data.x << 0.0, 2.0;
  data.y.resize(2);
  data.y << 0, 1;
  data.k_max = 2;
  const auto [out, rec] = standardize(data);
  CHECK(out.x(0, 0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(out.x(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rec.mean[0] == doctest::Approx(1.0));
  CHECK(rec.scale[0] == doctest::Approx(1.0));
}

TEST_CASE("standardize yields zero mean and unit population sd per column") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal(2.0, 3.0);
  OrdinalDataset data;
  data.x.resize(37, 4);
  for (Eigen::Index i = 0; i < data.x.rows(); ++i)
    for (Eigen::Index j = 0; j < data.x.cols(); ++j) data.x(i, j) = normal(rng);
  data.y = VectorXi::Zero(37);
  data.k_max = 2;

  const auto [out, rec] = standardize(data);
  for (Eigen::Index j = 0; j < out.x.cols(); ++j) {
    CHECK(std::fabs(out.x.col(j).mean()) < 1e-12);
    const double sd = std::sqrt(out.x.col(j).squaredNorm() / static_cast<double>(out.x.rows()));
    CHECK(sd == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("standardize centers constant columns and keeps scale one") {
  OrdinalDataset data = tiny_dataset();
  data.x.col(1).setConstant(5.0);
  const auto [out, rec] = standardize(data);
  CHECK(rec.scale[1] == 1.0);
  CHECK(out.x.col(1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("to_original_scale preserves both linear predictors row by row") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  OrdinalDataset data;
  data.x.resize(40, 6);
  for (Eigen::Index i = 0; i < data.x.rows(); ++i)
    for (Eigen::Index j = 0; j < data.x.cols(); ++j) data.x(i, j) = 1.5 * normal(rng) - 0.7;
  data.y = VectorXi::Zero(40);
  data.k_max = 3;

  const auto [std_data, rec] = standardize(data);
  MtclmParams params;
  params.alpha = 0.3;
  params.beta.resize(6);
  params.gamma.resize(6);
  for (int j = 0; j < 6; ++j) {
    params.beta[j] = normal(rng);
    params.gamma[j] = normal(rng);
  }
  params.zeta.resize(2);
  params.zeta << -0.2, 0.9;

  const MtclmParams original = to_original_scale(params, rec);
  const VectorXd eta_std = (std_data.x * params.beta).array() + params.alpha;
  const VectorXd eta_orig = (data.x * original.beta).array() + original.alpha;
  CHECK((eta_std - eta_orig).cwiseAbs().maxCoeff() < 1e-10);

  for (int k = 0; k < 2; ++k) {
    const VectorXd g_std = (std_data.x * params.gamma).array() + params.zeta[k];
    const VectorXd g_orig = (data.x * original.gamma).array() + original.zeta[k];
    CHECK((g_std - g_orig).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("intercept_only_params reproduces category frequency logits") {
  OrdinalDataset data;
  data.x = MatrixXd::Zero(6, 2);
  data.y.resize(6);
  data.y << 0, 0, 1, 2, 2, 3;
  data.k_max = 3;

  auto logit = [](double q) { return std::log(q / (1.0 - q)); };

  const MtclmParams exact = intercept_only_params(data);
  CHECK(exact.alpha == doctest::Approx(logit(2.0 / 6.0)).epsilon(1e-14));
  CHECK(exact.zeta[0] == doctest::Approx(logit(1.0 / 4.0)).epsilon(1e-14));
  CHECK(exact.zeta[1] == doctest::Approx(logit(3.0 / 4.0)).epsilon(1e-14));
  CHECK(exact.beta.isZero(0.0));
  CHECK(exact.gamma.isZero(0.0));

  const MtclmParams smoothed = intercept_only_params(data, 0.5);
  CHECK(smoothed.alpha == doctest::Approx(logit(2.5 / 7.0)).epsilon(1e-14));
  CHECK(smoothed.zeta[0] == doctest::Approx(logit(1.5 / 5.5)).epsilon(1e-14));
  CHECK(smoothed.zeta[1] == doctest::Approx(logit(4.0 / 5.5)).epsilon(1e-14));
}

TEST_CASE("intercept_only_params stays finite on one-sided data when smoothed") {
  OrdinalDataset data;
  data.x = MatrixXd::Zero(5, 1);
  data.y.resize(5);
  data.y << 1, 1, 2, 3, 3;  // no healthy rows
  data.k_max = 3;
  const MtclmParams smoothed = intercept_only_params(data, 0.5);
  CHECK(std::isfinite(smoothed.alpha));
  CHECK(std::isfinite(smoothed.zeta[0]));
  CHECK(smoothed.zeta[1] > smoothed.zeta[0]);
}

TEST_CASE("generated scenario datasets pass validation") {
  for (Scenario scenario : {Scenario::parallel, Scenario::identical, Scenario::almost_inverse,
                            Scenario::similar, Scenario::almost_independent}) {
    ScenarioSpec spec;
    spec.scenario = scenario;
    spec.n = 60;
    spec.p = 20;
    spec.rho = 0.2;
    spec.seed = 9;
    const auto [data, truth] = generate(spec);
    CHECK_NOTHROW(validate_dataset(data));
    CHECK(data.k_max == 3);
  }
}
