#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "wearauth/errors.hpp"
#include "wearauth/rng.hpp"
#include "wearauth/svm.hpp"

using namespace wearauth;

namespace {

// Dual objective of the binary problem in minimization form:
// 0.5 a'Qa - sum a, with Q_ij = y_i y_j k(x_i, x_j).
double binary_dual_objective(const Eigen::MatrixXd& x, const std::vector<int>& y,
                             const Kernel& kernel, const Eigen::VectorXd& alpha) {
  const Eigen::Index n = x.rows();
  double obj = -alpha.sum();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      obj += 0.5 * alpha[i] * alpha[j] * y[static_cast<std::size_t>(i)] *
             y[static_cast<std::size_t>(j)] * kernel(x.row(i).transpose(), x.row(j).transpose());
  return obj;
}

// Recover alpha_i = |coef matched to training row i| from a trained model.
// Rows absent from the support set carry alpha 0.
Eigen::VectorXd recover_alpha(const SvmModel& model, const Eigen::MatrixXd& x,
                              const std::vector<int>& y) {
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(x.rows());
  std::vector<bool> used(static_cast<std::size_t>(model.support_vectors.rows()), false);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index s = 0; s < model.support_vectors.rows(); ++s) {
      if (used[static_cast<std::size_t>(s)]) continue;
      if ((model.support_vectors.row(s) - x.row(i)).norm() == 0.0 &&
          model.coef[s] * y[static_cast<std::size_t>(i)] > 0.0) {
        alpha[i] = model.coef[s] * y[static_cast<std::size_t>(i)];
        used[static_cast<std::size_t>(s)] = true;
        break;
      }
    }
  }
  return alpha;
}

}  // namespace

TEST_CASE("two symmetric points split down the middle") {
  Eigen::MatrixXd x(2, 1);
  x << -1, 1;
  const std::vector<int> y = {-1, 1};
  const SvmModel model = smo_train(x, y, rbf_kernel(0.5), 10.0);

  REQUIRE(model.support_vectors.rows() == 2);
  CHECK(std::abs(model.bias) < 1e-9);
  CHECK(model.coef[0] == doctest::Approx(-model.coef[1]).epsilon(1e-9));
  CHECK(model.decision(Eigen::VectorXd::Constant(1, 0.0)) ==
        doctest::Approx(0.0).epsilon(1e-9));
  CHECK(model.decision(Eigen::VectorXd::Constant(1, 1.0)) > 0.0);
  CHECK(model.decision(Eigen::VectorXd::Constant(1, -1.0)) < 0.0);
}

TEST_CASE("the XOR square is separable with an RBF kernel") {
  Eigen::MatrixXd x(4, 2);
  x << 0, 0, 1, 1, 0, 1, 1, 0;
  const std::vector<int> y = {1, 1, -1, -1};
  const SvmModel model = smo_train(x, y, rbf_kernel(1.0), 1e3);
  for (int i = 0; i < 4; ++i) {
    const double f = model.decision(x.row(i).transpose());
    CHECK(f * y[static_cast<std::size_t>(i)] > 0.0);
  }
}

TEST_CASE("random small problems match the projected-gradient oracle") {
  Rng rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 5.0);  // 2..6
    const int d = 1 + static_cast<int>(rng.uniform() * 3.0);
    Eigen::MatrixXd x(n, d);
    std::vector<int> y(static_cast<std::size_t>(n));
    bool has_pos = false, has_neg = false;
    for (int i = 0; i < n; ++i) {
      y[static_cast<std::size_t>(i)] = rng.uniform() < 0.5 ? -1 : 1;
      for (int j = 0; j < d; ++j) x(i, j) = 2.0 * rng.normal();
      (y[static_cast<std::size_t>(i)] > 0 ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg) {
      y[0] = -y[1 % n];
      has_pos = has_neg = true;
    }
    const double c = std::pow(10.0, -1.0 + 2.0 * rng.uniform());
    const Kernel kernel = trial % 2 == 0
                              ? rbf_kernel(0.2 + rng.uniform())
                              : poly_kernel(1 + (trial / 2) % 2, 1.0, 0.3);

    // Tight tolerance: the 1e-4 probe-agreement contract below needs the
    // bias pinned well past the default stopping rule.
    const SvmModel model = smo_train(x, y, kernel, c, 1e-7);

    // Oracle: minimize 0.5 a'Qa - 1'a over the box with y'a = 0.
    Eigen::MatrixXd q(n, n);
    Eigen::VectorXd yv(n);
    for (int i = 0; i < n; ++i) yv[i] = y[static_cast<std::size_t>(i)];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        q(i, j) = yv[i] * yv[j] *
                  kernel(x.row(i).transpose(), x.row(j).transpose());
    const Eigen::VectorXd p = Eigen::VectorXd::Constant(n, -1.0);
    const Eigen::VectorXd hi = Eigen::VectorXd::Constant(n, c);
    const Eigen::VectorXd a_star = oracle::qp_minimize(q, p, yv, 0.0, hi);
    const double best = oracle::qp_objective(q, p, a_star);

    const Eigen::VectorXd alpha = recover_alpha(model, x, y);
    const double got = binary_dual_objective(x, y, kernel, alpha);
    CHECK(got <= best + 1e-6 + 1e-9 * std::abs(best));

    // Decision agreement at probe points, using the oracle's own bias.
    Eigen::MatrixXd k(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        k(i, j) = kernel(x.row(i).transpose(), x.row(j).transpose());
    const double bias = oracle::svm_bias(a_star, yv, k, c);
    for (int probe = 0; probe < 5; ++probe) {
      Eigen::VectorXd z(d);
      for (int j = 0; j < d; ++j) z[j] = 2.0 * rng.normal();
      double f_oracle = bias;
      for (int i = 0; i < n; ++i)
        f_oracle += a_star[i] * yv[i] * kernel(x.row(i).transpose(), z);
      CHECK(std::abs(model.decision(z) - f_oracle) <= 1e-4);
    }
    ++checked;
  }
  CHECK(checked == 50);
}

TEST_CASE("trained duals satisfy the box and balance invariants") {
  Rng rng(404);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 20;
    Eigen::MatrixXd x(n, 3);
    std::vector<int> y(n);
    for (int i = 0; i < n; ++i) {
      y[static_cast<std::size_t>(i)] = i < n / 2 ? 1 : -1;
      for (int j = 0; j < 3; ++j)
        x(i, j) = rng.normal() + (i < n / 2 ? 0.8 : -0.8);
    }
    const double c = 2.0;
    const SvmModel model = smo_train(x, y, rbf_kernel(0.3), c);

    double balance = 0.0;
    for (Eigen::Index s = 0; s < model.coef.size(); ++s) {
      const double alpha = std::abs(model.coef[s]);
      CHECK(alpha >= -1e-12);
      CHECK(alpha <= c + 1e-12);
      CHECK(alpha > 0.0);  // only support vectors are stored
      balance += model.coef[s];
    }
    CHECK(std::abs(balance) <= 1e-8);

    // KKT at tolerance: margin violations bounded by the stopping rule.
    for (Eigen::Index i = 0; i < n; ++i) {
      const double f = model.decision(x.row(i).transpose());
      const double margin = y[static_cast<std::size_t>(i)] * f;
      // Non-SV rows must sit at or beyond the margin, within tolerance.
      bool is_sv = false;
      for (Eigen::Index s = 0; s < model.support_vectors.rows(); ++s)
        if ((model.support_vectors.row(s) - x.row(i)).norm() == 0.0) is_sv = true;
      if (!is_sv) CHECK(margin >= 1.0 - 5e-3);
    }
  }
}

TEST_CASE("single-class input cannot be trained") {
  Eigen::MatrixXd x(3, 1);
  x << 1, 2, 3;
  CHECK_THROWS_AS(smo_train(x, {1, 1, 1}, rbf_kernel(1.0), 1.0), DataError);
  CHECK_THROWS_AS(smo_train(x, {-1, -1, -1}, rbf_kernel(1.0), 1.0), DataError);
  CHECK_THROWS_AS(smo_train(x, {0, 1, -1}, rbf_kernel(1.0), 1.0), UsageError);
}

TEST_CASE("a hopeless iteration cap raises a convergence error") {
  Rng rng(5);
  Eigen::MatrixXd x(30, 2);
  std::vector<int> y(30);
  for (int i = 0; i < 30; ++i) {
    y[static_cast<std::size_t>(i)] = i % 2 ? 1 : -1;
    for (int j = 0; j < 2; ++j) x(i, j) = rng.normal();
  }
  CHECK_THROWS_AS(smo_train(x, y, rbf_kernel(0.5), 1.0, 1e-9, 2), ConvergenceError);
}

TEST_CASE("one-class duals match the oracle on tiny problems") {
  Rng rng(88);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng.uniform() * 4.0);  // 3..6
    Eigen::MatrixXd x(n, 2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < 2; ++j) x(i, j) = rng.normal();
    const double nu = 0.3 + 0.5 * rng.uniform();
    const double gamma = 0.2 + rng.uniform();

    const OneClassSvmModel model = ocsvm_train(x, nu, gamma, 1e-4);

    Eigen::MatrixXd k(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        k(i, j) = std::exp(-gamma * (x.row(i) - x.row(j)).squaredNorm());
    const Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    const Eigen::VectorXd hi = Eigen::VectorXd::Constant(n, 1.0 / (nu * n));
    const Eigen::VectorXd a_star = oracle::qp_minimize(k, p, ones, 1.0, hi);
    const double best = oracle::qp_objective(k, p, a_star);

    // Match the trained alphas back to training rows.
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
    for (Eigen::Index s = 0; s < model.support_vectors.rows(); ++s)
      for (int i = 0; i < n; ++i)
        if ((model.support_vectors.row(s) - x.row(i)).norm() == 0.0 &&
            alpha[i] == 0.0) {
          alpha[i] = model.alpha[s];
          break;
        }
    const double got = oracle::qp_objective(k, p, alpha);
    CHECK(got <= best + 1e-6 + 1e-9 * std::abs(best));
    CHECK(std::abs(alpha.sum() - 1.0) <= 1e-8);
    for (int i = 0; i < n; ++i) {
      CHECK(alpha[i] >= -1e-12);
      CHECK(alpha[i] <= 1.0 / (nu * n) + 1e-12);
    }
  }
}

TEST_CASE("the nu property brackets margin errors and support vectors") {
  Rng rng(777);
  const int n = 100;
  Eigen::MatrixXd x(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < 2; ++j) x(i, j) = rng.normal();

  for (double nu : {0.1, 0.5, 0.9}) {
    // Points on the margin satisfy f = 0 only at the exact optimum, so the
    // solver runs tight and the error cutoff sits an order above it.
    const OneClassSvmModel model = ocsvm_train(x, nu, 0.5, 1e-6);
    int margin_errors = 0;
    for (int i = 0; i < n; ++i)
      if (model.decision(x.row(i).transpose()) < -1e-5) ++margin_errors;
    const double sv_frac =
        static_cast<double>(model.support_vectors.rows()) / n;
    const double err_frac = static_cast<double>(margin_errors) / n;
    const double slack = 1.0 / n;
    CHECK(err_frac <= nu + slack);
    CHECK(sv_frac >= nu - slack);
  }
}

TEST_CASE("nu of one pins every alpha to the uniform cap") {
  Rng rng(12);
  const int n = 25;
  Eigen::MatrixXd x(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < 2; ++j) x(i, j) = rng.normal();
  const OneClassSvmModel model = ocsvm_train(x, 1.0, 0.3);
  CHECK(model.support_vectors.rows() == n);
  for (Eigen::Index i = 0; i < model.alpha.size(); ++i)
    CHECK(model.alpha[i] == doctest::Approx(1.0 / n).epsilon(1e-9));
}

TEST_CASE("a duplicated point is its own inlier") {
  Eigen::MatrixXd x(10, 2);
  for (int i = 0; i < 10; ++i) {
    x(i, 0) = 1.5;
    x(i, 1) = -0.5;
  }
  const OneClassSvmModel model = ocsvm_train(x, 0.5, 0.5);
  Eigen::VectorXd z(2);
  z << 1.5, -0.5;
  CHECK(model.decision(z) >= -1e-9);
}

TEST_CASE("training is deterministic") {
  Rng rng(91);
  Eigen::MatrixXd x(16, 2);
  std::vector<int> y(16);
  for (int i = 0; i < 16; ++i) {
    y[static_cast<std::size_t>(i)] = i % 2 ? 1 : -1;
    for (int j = 0; j < 2; ++j)
      x(i, j) = rng.normal() + (i % 2 ? 0.7 : -0.7);
  }
  const SvmModel a = smo_train(x, y, rbf_kernel(0.4), 2.0);
  const SvmModel b = smo_train(x, y, rbf_kernel(0.4), 2.0);
  CHECK(a.bias == b.bias);
  CHECK((a.coef - b.coef).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.support_vectors - b.support_vectors).cwiseAbs().maxCoeff() == 0.0);

  const OneClassSvmModel oa = ocsvm_train(x, 0.4, 0.3);
  const OneClassSvmModel ob = ocsvm_train(x, 0.4, 0.3);
  CHECK(oa.rho == ob.rho);
  CHECK((oa.alpha - ob.alpha).cwiseAbs().maxCoeff() == 0.0);
}
