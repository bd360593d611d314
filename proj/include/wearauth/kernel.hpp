#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace wearauth {

// RBF: k(x,z) = exp(-gamma*|x-z|^2).
// Polynomial: k(x,z) = (scale*<x,z> + coef0)^degree.
struct Kernel {
  enum class Kind { RBF, Polynomial };
  Kind kind = Kind::RBF;
  double gamma = 0.05;
  int degree = 3;
  double coef0 = 0.0;
  double scale = 1.0;

  double operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& z) const {
    if (kind == Kind::RBF) return std::exp(-gamma * (x - z).squaredNorm());
    return std::pow(scale * x.dot(z) + coef0, degree);
  }
};

inline Kernel rbf_kernel(double gamma) {
  Kernel k;
  k.kind = Kernel::Kind::RBF;
  k.gamma = gamma;
  return k;
}

inline Kernel poly_kernel(int degree, double coef0, double scale) {
  Kernel k;
  k.kind = Kernel::Kind::Polynomial;
  k.degree = degree;
  k.coef0 = coef0;
  k.scale = scale;
  return k;
}

// Counterpart of the usual "scale" default: 1/(num_features * var(X)),
// where var is the population variance over all matrix entries.
inline double default_poly_scale(const Eigen::MatrixXd& x) {
  const double mean = x.mean();
  const double var = (x.array() - mean).square().mean();
  const double denom = static_cast<double>(x.cols()) * var;
  return denom > 0.0 ? 1.0 / denom : 1.0;
}

// Full Gram matrix of the rows of X.
inline Eigen::MatrixXd gram_matrix(const Eigen::MatrixXd& x, const Kernel& kernel) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd dots = x * x.transpose();
  Eigen::MatrixXd k(n, n);
  if (kernel.kind == Kernel::Kind::RBF) {
    Eigen::VectorXd sq = dots.diagonal();
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        k(i, j) = std::exp(-kernel.gamma * (sq[i] + sq[j] - 2.0 * dots(i, j)));
  } else {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        k(i, j) = std::pow(kernel.scale * dots(i, j) + kernel.coef0, kernel.degree);
  }
  return k;
}

}  // namespace wearauth
