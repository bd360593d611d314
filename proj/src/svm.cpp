#include "wearauth/svm.hpp"

#include <cmath>

#include "wearauth/errors.hpp"

namespace wearauth {

double SvmModel::decision(const Eigen::VectorXd& x) const {
  double f = bias;
  for (Eigen::Index i = 0; i < support_vectors.rows(); ++i)
    f += coef[i] * kernel(support_vectors.row(i).transpose(), x);
  return f;
}

double OneClassSvmModel::decision(const Eigen::VectorXd& x) const {
  double f = -rho;
  for (Eigen::Index i = 0; i < support_vectors.rows(); ++i)
    f += alpha[i] * kernel(support_vectors.row(i).transpose(), x);
  return f;
}

namespace {

constexpr double kTau = 1e-12;

// Shared SMO core: minimize (1/2) a'Qa + p'a subject to y'a fixed and
// 0 <= a_i <= C, where Q already carries any label signs. The gradient
// Q a + p is maintained incrementally; the working pair is the maximal
// violating pair, ties resolved to the lower index by the ascending scans.
struct SmoCore {
  const Eigen::MatrixXd& q;
  const std::vector<int>& y;
  double c;
  Eigen::VectorXd alpha;
  Eigen::VectorXd grad;

  double solve(double tol, long max_iter) {
    const Eigen::Index n = alpha.size();
    for (long iter = 0; iter < max_iter; ++iter) {
      Eigen::Index i = -1, j = -1;
      double gmax = -std::numeric_limits<double>::infinity();
      double gmax2 = -std::numeric_limits<double>::infinity();
      for (Eigen::Index t = 0; t < n; ++t) {
        const bool up = y[static_cast<std::size_t>(t)] > 0 ? alpha[t] < c
                                                           : alpha[t] > 0.0;
        if (up && -y[static_cast<std::size_t>(t)] * grad[t] > gmax) {
          gmax = -y[static_cast<std::size_t>(t)] * grad[t];
          i = t;
        }
      }
      for (Eigen::Index t = 0; t < n; ++t) {
        const bool low = y[static_cast<std::size_t>(t)] > 0 ? alpha[t] > 0.0
                                                            : alpha[t] < c;
        if (low && y[static_cast<std::size_t>(t)] * grad[t] > gmax2) {
          gmax2 = y[static_cast<std::size_t>(t)] * grad[t];
          j = t;
        }
      }
      if (i < 0 || j < 0 || gmax + gmax2 <= tol) return 0.0;

      const double old_i = alpha[i];
      const double old_j = alpha[j];
      if (y[static_cast<std::size_t>(i)] != y[static_cast<std::size_t>(j)]) {
        double quad = q(i, i) + q(j, j) + 2.0 * q(i, j);
        if (quad <= 0.0) quad = kTau;
        const double delta = (-grad[i] - grad[j]) / quad;
        const double diff = alpha[i] - alpha[j];
        alpha[i] += delta;
        alpha[j] += delta;
        if (diff > 0.0) {
          if (alpha[j] < 0.0) {
            alpha[j] = 0.0;
            alpha[i] = diff;
          }
        } else {
          if (alpha[i] < 0.0) {
            alpha[i] = 0.0;
            alpha[j] = -diff;
          }
        }
        if (diff > 0.0) {
          if (alpha[i] > c) {
            alpha[i] = c;
            alpha[j] = c - diff;
          }
        } else {
          if (alpha[j] > c) {
            alpha[j] = c;
            alpha[i] = c + diff;
          }
        }
      } else {
        double quad = q(i, i) + q(j, j) - 2.0 * q(i, j);
        if (quad <= 0.0) quad = kTau;
        const double delta = (grad[i] - grad[j]) / quad;
        const double sum = alpha[i] + alpha[j];
        alpha[i] -= delta;
        alpha[j] += delta;
        if (sum > c) {
          if (alpha[i] > c) {
            alpha[i] = c;
            alpha[j] = sum - c;
          }
        } else {
          if (alpha[j] < 0.0) {
            alpha[j] = 0.0;
            alpha[i] = sum;
          }
        }
        if (sum > c) {
          if (alpha[j] > c) {
            alpha[j] = c;
            alpha[i] = sum - c;
          }
        } else {
          if (alpha[i] < 0.0) {
            alpha[i] = 0.0;
            alpha[j] = sum;
          }
        }
      }
      grad += q.col(i) * (alpha[i] - old_i) + q.col(j) * (alpha[j] - old_j);
    }

    // Cap hit: report the residual violation.
    double gmax = -std::numeric_limits<double>::infinity();
    double gmax2 = -std::numeric_limits<double>::infinity();
    for (Eigen::Index t = 0; t < alpha.size(); ++t) {
      const bool up = y[static_cast<std::size_t>(t)] > 0 ? alpha[t] < c
                                                         : alpha[t] > 0.0;
      const bool low = y[static_cast<std::size_t>(t)] > 0 ? alpha[t] > 0.0
                                                          : alpha[t] < c;
      if (up) gmax = std::max(gmax, -y[static_cast<std::size_t>(t)] * grad[t]);
      if (low) gmax2 = std::max(gmax2, y[static_cast<std::size_t>(t)] * grad[t]);
    }
    return gmax + gmax2;
  }

  // Offset so that free support vectors sit on the margin; with no free
  // vector, the midpoint of the feasible interval.
  double rho() const {
    double sum_free = 0.0;
    int n_free = 0;
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    for (Eigen::Index t = 0; t < alpha.size(); ++t) {
      const double yg = y[static_cast<std::size_t>(t)] * grad[t];
      if (alpha[t] >= c) {
        if (y[static_cast<std::size_t>(t)] < 0)
          ub = std::min(ub, yg);
        else
          lb = std::max(lb, yg);
      } else if (alpha[t] <= 0.0) {
        if (y[static_cast<std::size_t>(t)] > 0)
          ub = std::min(ub, yg);
        else
          lb = std::max(lb, yg);
      } else {
        ++n_free;
        sum_free += yg;
      }
    }
    if (n_free > 0) return sum_free / n_free;
    if (std::isfinite(ub) && std::isfinite(lb)) return (ub + lb) / 2.0;
    if (std::isfinite(ub)) return ub;
    if (std::isfinite(lb)) return lb;
    return 0.0;
  }
};

long default_cap(Eigen::Index n, long requested) {
  if (requested > 0) return requested;
  return std::max<long>(200000, 200 * static_cast<long>(n));
}

}  // namespace

SvmModel smo_train(const Eigen::MatrixXd& x, const std::vector<int>& y,
                   const Kernel& kernel, double C, double tol, long max_iter) {
  const Eigen::Index n = x.rows();
  if (static_cast<Eigen::Index>(y.size()) != n)
    throw UsageError("smo_train: labels and rows differ in count");
  if (C <= 0.0) throw UsageError("smo_train: C must be positive");
  int pos = 0, neg = 0;
  for (int label : y) {
    if (label == 1)
      ++pos;
    else if (label == -1)
      ++neg;
    else
      throw UsageError("smo_train: labels must be -1 or +1");
  }
  if (pos == 0 || neg == 0) throw DataError("smo_train needs both classes");

  const Eigen::MatrixXd k = gram_matrix(x, kernel);
  Eigen::MatrixXd q(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      q(i, j) = y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] * k(i, j);

  SmoCore core{q, y, C, Eigen::VectorXd::Zero(n),
               Eigen::VectorXd::Constant(n, -1.0)};
  const double violation = core.solve(tol, default_cap(n, max_iter));
  if (violation > tol)
    throw ConvergenceError("SMO stopped before reaching tolerance " +
                               std::to_string(tol),
                           violation);

  double sum_ay = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (core.alpha[i] < -1e-12 || core.alpha[i] > C + 1e-12)
      throw ConvergenceError("SMO produced an out-of-box multiplier",
                             core.alpha[i]);
    sum_ay += core.alpha[i] * y[static_cast<std::size_t>(i)];
  }
  if (std::abs(sum_ay) > 1e-8)
    throw ConvergenceError("SMO violated the equality constraint", sum_ay);

  const double rho = core.rho();
  Eigen::Index n_sv = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (core.alpha[i] > 0.0) ++n_sv;

  SvmModel model;
  model.kernel = kernel;
  model.C = C;
  model.bias = -rho;
  model.support_vectors.resize(n_sv, x.cols());
  model.coef.resize(n_sv);
  Eigen::Index at = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (core.alpha[i] <= 0.0) continue;
    model.support_vectors.row(at) = x.row(i);
    model.coef[at] = core.alpha[i] * y[static_cast<std::size_t>(i)];
    ++at;
  }
  return model;
}

OneClassSvmModel ocsvm_train(const Eigen::MatrixXd& x, double nu, double gamma,
                             double tol, long max_iter) {
  const Eigen::Index n = x.rows();
  if (n < 2) throw DataError("ocsvm_train needs at least 2 rows");
  if (!(nu > 0.0 && nu <= 1.0)) throw UsageError("nu must lie in (0, 1]");

  const Kernel kernel = rbf_kernel(gamma);
  const Eigen::MatrixXd q = gram_matrix(x, kernel);
  const std::vector<int> y(static_cast<std::size_t>(n), 1);
  const double cap = 1.0 / (nu * static_cast<double>(n));

  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
  const auto n_bound = static_cast<Eigen::Index>(nu * static_cast<double>(n));
  for (Eigen::Index i = 0; i < std::min(n_bound, n); ++i) alpha[i] = cap;
  if (n_bound < n) alpha[n_bound] = 1.0 - static_cast<double>(n_bound) * cap;

  SmoCore core{q, y, cap, std::move(alpha), Eigen::VectorXd::Zero(n)};
  core.grad = q * core.alpha;
  const double violation = core.solve(tol, default_cap(n, max_iter));
  if (violation > tol)
    throw ConvergenceError("one-class SMO stopped before reaching tolerance " +
                               std::to_string(tol),
                           violation);

  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (core.alpha[i] < -1e-12 || core.alpha[i] > cap + 1e-12)
      throw ConvergenceError("one-class SMO produced an out-of-box multiplier",
                             core.alpha[i]);
    sum += core.alpha[i];
  }
  if (std::abs(sum - 1.0) > 1e-8)
    throw ConvergenceError("one-class SMO violated the sum constraint", sum);

  OneClassSvmModel model;
  model.kernel = kernel;
  model.nu = nu;
  model.rho = core.rho();
  Eigen::Index n_sv = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (core.alpha[i] > 0.0) ++n_sv;
  model.support_vectors.resize(n_sv, x.cols());
  model.alpha.resize(n_sv);
  Eigen::Index at = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (core.alpha[i] <= 0.0) continue;
    model.support_vectors.row(at) = x.row(i);
    model.alpha[at] = core.alpha[i];
    ++at;
  }
  return model;
}

}  // namespace wearauth
