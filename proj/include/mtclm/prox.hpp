#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace mtclm {

// S(z, xi) = sign(z) * max(|z| - xi, 0), the minimizer of
// (1/2)(w - z)^2 + xi |w|.
inline double soft_threshold(double z, double xi) {
  if (xi < 0) throw std::invalid_argument("soft_threshold: negative threshold");
  const double mag = std::fabs(z) - xi;
  if (mag <= 0) return 0.0;
  return z > 0 ? mag : -mag;
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>
soft_threshold(const Eigen::MatrixBase<Derived>& z, double xi) {
  if (xi < 0) throw std::invalid_argument("soft_threshold: negative threshold");
  using Scalar = typename Derived::Scalar;
  return z.unaryExpr([xi](Scalar v) -> Scalar {
    const Scalar mag = std::fabs(v) - static_cast<Scalar>(xi);
    if (mag <= Scalar(0)) return Scalar(0);
    return v > Scalar(0) ? mag : -mag;
  });
}

// S_G(z, xi) = (1 - xi / ||z||_2)_+ z, the minimizer of
// (1/2)||w - z||^2 + xi ||w||_2; returns exact zero when ||z|| <= xi.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>
group_soft_threshold(const Eigen::MatrixBase<Derived>& z, double xi) {
  if (xi < 0) throw std::invalid_argument("group_soft_threshold: negative threshold");
  using Out = Eigen::Matrix<typename Derived::Scalar, Derived::RowsAtCompileTime,
                            Derived::ColsAtCompileTime>;
  const double norm = z.norm();
  if (norm <= xi) return Out::Zero(z.rows(), z.cols());
  return (z * (1.0 - xi / norm)).eval();
}

}  // namespace mtclm
