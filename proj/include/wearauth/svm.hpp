#pragma once

#include <vector>

#include "wearauth/kernel.hpp"

namespace wearauth {

// Binary support vector classifier. coef[i] = alpha_i * y_i, decision
// f(x) = sum_i coef[i] * k(sv_i, x) + bias; f >= 0 reads as class +1.
struct SvmModel {
  Eigen::MatrixXd support_vectors;  // one per row
  Eigen::VectorXd coef;
  double bias = 0.0;
  Kernel kernel;
  double C = 1.0;

  double decision(const Eigen::VectorXd& x) const;
};

// One-class model: decision f(x) = sum_i alpha_i k(sv_i, x) - rho;
// f >= 0 reads as inlier.
struct OneClassSvmModel {
  Eigen::MatrixXd support_vectors;
  Eigen::VectorXd alpha;
  double rho = 0.0;
  Kernel kernel;
  double nu = 0.5;

  double decision(const Eigen::VectorXd& x) const;
};

// Sequential minimal optimization with maximal-violating-pair selection
// (ties to the lower index), stopping when the KKT violation drops to tol.
// y entries must be -1 or +1 and both classes must be present. Throws
// ConvergenceError carrying the final violation if the iteration cap is hit.
SvmModel smo_train(const Eigen::MatrixXd& x, const std::vector<int>& y,
                   const Kernel& kernel, double C, double tol = 1e-3,
                   long max_iter = 0);

// Same machinery on the one-class dual: minimize (1/2) a'Ka subject to
// sum a = 1, 0 <= a_i <= 1/(nu*n).
OneClassSvmModel ocsvm_train(const Eigen::MatrixXd& x, double nu, double gamma,
                             double tol = 1e-3, long max_iter = 0);

}  // namespace wearauth
