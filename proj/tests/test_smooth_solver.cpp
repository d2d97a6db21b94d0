#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "mtclm/likelihood.hpp"
#include "mtclm/smooth_solver.hpp"

using namespace mtclm;

TEST_CASE("minimize_smooth solves a shifted quadratic to high accuracy") {
  const int d = 8;
  VectorXd center(d);
  for (int j = 0; j < d; ++j) center[j] = 0.3 * j - 1.0;
  VectorXd weights(d);
  for (int j = 0; j < d; ++j) weights[j] = 1.0 + j;

  SmoothObjective objective = [&](const VectorXd& x, VectorXd* grad) {
    const VectorXd diff = x - center;
    if (grad) *grad = weights.asDiagonal() * diff;
    return 0.5 * diff.dot(weights.asDiagonal() * diff);
  };

  SmoothSolveSettings settings;
  settings.grad_tol = 1e-10;
  const MinimizeResult res = minimize_smooth(objective, VectorXd::Zero(d), settings);
  CHECK(res.converged);
  CHECK((res.x - center).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(res.value < 1e-15);
}

TEST_CASE("minimize_smooth exits immediately at a stationary start") {
  SmoothObjective objective = [](const VectorXd& x, VectorXd* grad) {
    if (grad) *grad = 2.0 * x;
    return x.squaredNorm();
  };
  const MinimizeResult res = minimize_smooth(objective, VectorXd::Zero(3), {});
  CHECK(res.converged);
  CHECK(res.iterations == 0);
}

TEST_CASE("minimize_smooth throws on a non-finite start") {
  SmoothObjective objective = [](const VectorXd& x, VectorXd* grad) {
    if (grad) grad->setConstant(x.size(), 1.0);
    return std::numeric_limits<double>::quiet_NaN();
  };
  CHECK_THROWS_AS(minimize_smooth(objective, VectorXd::Zero(2), {}), std::invalid_argument);
}

TEST_CASE("minimize_smooth is monotone on the rosenbrock function") {
  SmoothObjective objective = [](const VectorXd& x, VectorXd* grad) {
    const double a = 1.0 - x[0];
    const double b = x[1] - x[0] * x[0];
    if (grad) {
      grad->resize(2);
      (*grad)[0] = -2.0 * a - 400.0 * x[0] * b;
      (*grad)[1] = 200.0 * b;
    }
    return a * a + 100.0 * b * b;
  };
  SmoothSolveSettings settings;
  settings.max_inner_iter = 500;
  settings.grad_tol = 1e-8;

  VectorXd start(2);
  start << -1.2, 1.0;
  const MinimizeResult res = minimize_smooth(objective, start, settings);
  CHECK(res.converged);
  CHECK((res.x - VectorXd::Ones(2)).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(res.value <= objective(start, nullptr));
}

TEST_CASE("screening fit matches a long plain gradient descent run") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  OrdinalDataset data;
  data.x.resize(60, 3);
  for (int i = 0; i < 60; ++i)
    for (int j = 0; j < 3; ++j) data.x(i, j) = normal(rng);
  data.y.resize(60);
  for (int i = 0; i < 60; ++i) data.y[i] = (normal(rng) > 0.3) ? 0 : 1 + (i % 2);
  data.k_max = 2;

  SmoothObjective objective = [&](const VectorXd& x, VectorXd* grad) {
    const VectorXd beta = x.tail(3);
    if (grad) {
      const ScreeningGrad g = grad_screening(data, x[0], beta);
      grad->resize(4);
      (*grad)[0] = g.d_alpha;
      grad->tail(3) = g.d_beta;
    }
    return screening_nll(data, x[0], beta);
  };

  // Plain gradient descent oracle with a conservative fixed step.
  VectorXd ref = VectorXd::Zero(4);
  VectorXd grad(4);
  for (int it = 0; it < 200000; ++it) {
    objective(ref, &grad);
    ref -= 2.0 * grad;
  }

  SmoothSolveSettings settings;
  settings.grad_tol = 1e-10;
  settings.max_inner_iter = 500;
  const MinimizeResult res = minimize_smooth(objective, VectorXd::Zero(4), settings);
  CHECK(res.converged);
  CHECK((res.x - ref).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("loggap coordinates round trip and keep thresholds increasing") {
  VectorXd zeta(3);
  zeta << -0.7, 0.4, 2.9;
  const VectorXd phi = zeta_to_loggap(zeta);
  CHECK(phi[0] == doctest::Approx(-0.7));
  CHECK(phi[1] == doctest::Approx(std::log(1.1)).epsilon(1e-12));
  CHECK(phi[2] == doctest::Approx(std::log(2.5)).epsilon(1e-12));
  const VectorXd back = loggap_to_zeta(phi);
  CHECK((back - zeta).cwiseAbs().maxCoeff() < 1e-12);

  VectorXd wild(4);
  wild << 2.0, -3.0, 0.0, 5.0;
  const VectorXd z2 = loggap_to_zeta(wild);
  for (int k = 1; k < 4; ++k) CHECK(z2[k] > z2[k - 1]);
}

TEST_CASE("loggap chain rule matches finite differences of a zeta function") {
  VectorXd phi(3);
  phi << 0.3, -0.5, 0.2;
  VectorXd direction(3);
  direction << 0.8, -0.4, 1.3;

  auto f_of_zeta = [&](const VectorXd& zeta) {
    return std::sin(zeta[0]) + zeta[1] * zeta[1] + std::exp(0.3 * zeta[2]) +
           zeta.dot(direction);
  };
  auto grad_zeta = [&](const VectorXd& zeta) {
    VectorXd g(3);
    g[0] = std::cos(zeta[0]) + direction[0];
    g[1] = 2.0 * zeta[1] + direction[1];
    g[2] = 0.3 * std::exp(0.3 * zeta[2]) + direction[2];
    return g;
  };

  const VectorXd zeta = loggap_to_zeta(phi);
  const VectorXd analytic = loggap_chain_rule(phi, grad_zeta(zeta));
  const double h = 1e-7;
  for (int j = 0; j < 3; ++j) {
    VectorXd up = phi, dn = phi;
    up[j] += h;
    dn[j] -= h;
    const double fd = (f_of_zeta(loggap_to_zeta(up)) - f_of_zeta(loggap_to_zeta(dn))) / (2 * h);
    CHECK(analytic[j] == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("smooth packing round trips parameters and gradients") {
  SmoothPacking packing{3, 4};
  CHECK(packing.size() == 1 + 3 + 6);

  MtclmParams params;
  params.alpha = 0.4;
  params.beta.resize(3);
  params.beta << 1.0, -2.0, 0.5;
  params.zeta.resize(3);
  params.zeta << -1.0, 0.2, 1.7;
  params.gamma.resize(3);
  params.gamma << 0.1, 0.0, -0.3;

  const VectorXd x = packing.pack(params);
  const MtclmParams back = packing.unpack(x);
  CHECK(back.alpha == params.alpha);
  CHECK((back.beta - params.beta).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((back.zeta - params.zeta).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((back.gamma - params.gamma).cwiseAbs().maxCoeff() < 1e-14);
}
