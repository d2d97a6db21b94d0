#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "mtclm/prox.hpp"

using namespace mtclm;

TEST_CASE("scalar soft threshold matches worked values") {
  CHECK(soft_threshold(3.0, 1.0) == 2.0);
  CHECK(soft_threshold(-3.0, 1.0) == -2.0);
  CHECK(soft_threshold(0.5, 1.0) == 0.0);
  CHECK(soft_threshold(-0.5, 1.0) == 0.0);
  CHECK(soft_threshold(1.0, 1.0) == 0.0);
  CHECK(soft_threshold(2.0, 0.0) == 2.0);
  CHECK_THROWS_AS(soft_threshold(1.0, -0.1), std::invalid_argument);
}

TEST_CASE("scalar soft threshold minimizes its objective over a fine grid") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(-4.0, 4.0);
  std::uniform_real_distribution<double> xs(0.0, 2.5);
  for (int rep = 0; rep < 50; ++rep) {
    const double z = unif(rng);
    const double xi = xs(rng);
    const double w_star = soft_threshold(z, xi);
    auto objective = [&](double w) { return 0.5 * (w - z) * (w - z) + xi * std::fabs(w); };
    const double f_star = objective(w_star);
    double best_grid = std::numeric_limits<double>::infinity();
    for (double w = -5.0; w <= 5.0; w += 1e-3) best_grid = std::fmin(best_grid, objective(w));
    CHECK(f_star <= best_grid + 1e-9);
  }
}

TEST_CASE("matrix soft threshold applies elementwise and keeps exact zeros") {
  Eigen::MatrixXd z(2, 2);
  z << 3.0, -0.5, 0.0, -3.0;
  const Eigen::MatrixXd out = soft_threshold(z, 1.0);
  CHECK(out(0, 0) == 2.0);
  CHECK(out(0, 1) == 0.0);
  CHECK(out(1, 0) == 0.0);
  CHECK(out(1, 1) == -2.0);
}

TEST_CASE("soft threshold is nonexpansive") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  for (int rep = 0; rep < 200; ++rep) {
    const double a = unif(rng), b = unif(rng);
    const double xi = 0.5 * std::fabs(unif(rng));
    CHECK(std::fabs(soft_threshold(a, xi) - soft_threshold(b, xi)) <= std::fabs(a - b) + 1e-15);
  }
}

TEST_CASE("group soft threshold matches worked values") {
  Eigen::Vector2d z(3.0, 4.0);  // norm 5
  const Eigen::Vector2d shrunk = group_soft_threshold(z, 1.0);
  CHECK(shrunk[0] == doctest::Approx(3.0 * 0.8).epsilon(1e-15));
  CHECK(shrunk[1] == doctest::Approx(4.0 * 0.8).epsilon(1e-15));

  const Eigen::Vector2d zero = group_soft_threshold(z, 5.0);
  CHECK(zero[0] == 0.0);
  CHECK(zero[1] == 0.0);
  CHECK_THROWS_AS(group_soft_threshold(z, -1.0), std::invalid_argument);
}

TEST_CASE("group soft threshold minimizes its objective over a 2d grid") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  std::uniform_real_distribution<double> xs(0.0, 2.0);
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::Vector2d z(unif(rng), unif(rng));
    const double xi = xs(rng);
    const Eigen::Vector2d w_star = group_soft_threshold(z, xi);
    auto objective = [&](const Eigen::Vector2d& w) {
      return 0.5 * (w - z).squaredNorm() + xi * w.norm();
    };
    const double f_star = objective(w_star);
    double best_grid = std::numeric_limits<double>::infinity();
    for (double w0 = -3.0; w0 <= 3.0; w0 += 0.02)
      for (double w1 = -3.0; w1 <= 3.0; w1 += 0.02)
        best_grid = std::fmin(best_grid, objective(Eigen::Vector2d(w0, w1)));
    CHECK(f_star <= best_grid + 1e-6);
  }
}

TEST_CASE("group soft threshold preserves direction") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  for (int rep = 0; rep < 50; ++rep) {
    Eigen::Vector3d z(unif(rng), unif(rng), unif(rng));
    const double xi = 0.4;
    const Eigen::Vector3d out = group_soft_threshold(z, xi);
    if (out.norm() > 0) {
      const double cosine = out.dot(z) / (out.norm() * z.norm());
      CHECK(cosine == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(out.norm() == doctest::Approx(z.norm() - xi).epsilon(1e-12));
    } else {
      CHECK(z.norm() <= xi + 1e-15);
    }
  }
}
