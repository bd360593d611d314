#include "wearauth/gridsearch.hpp"

#include <functional>

#include "wearauth/classifiers.hpp"
#include "wearauth/errors.hpp"
#include "wearauth/eval.hpp"
#include "wearauth/svm.hpp"

namespace wearauth {

std::vector<int> stratified_fold_ids(const std::vector<int>& labels, int n_folds) {
  if (n_folds < 2) throw UsageError("stratified folds need n_folds >= 2");
  std::vector<int> fold(labels.size());
  int counter[2] = {0, 0};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int c = labels[i] ? 1 : 0;
    fold[i] = counter[c] % n_folds;
    ++counter[c];
  }
  return fold;
}

std::vector<double> default_gamma_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(i / 100.0);
  return grid;
}

std::vector<double> default_c_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 16; ++i) grid.push_back(i);
  return grid;
}

std::vector<int> default_k_grid() {
  std::vector<int> grid;
  for (int k = 1; k <= 40; ++k) grid.push_back(k);
  return grid;
}

std::vector<int> default_trees_grid() { return {150, 300, 450, 600}; }

namespace {

// Mean F1 over stratified folds for one hyperparameter cell. The trainer
// returns a predictor mapping a row to the predicted class.
double cell_score(
    const Eigen::MatrixXd& x, const std::vector<int>& labels, int n_folds,
    const std::function<std::function<int(const Eigen::VectorXd&)>(
        const Eigen::MatrixXd&, const std::vector<int>&)>& make_predictor) {
  const std::vector<int> fold = stratified_fold_ids(labels, n_folds);
  double sum_f1 = 0.0;
  for (int f = 0; f < n_folds; ++f) {
    std::vector<int> train_rows, test_rows;
    for (std::size_t i = 0; i < labels.size(); ++i)
      (fold[i] == f ? test_rows : train_rows).push_back(static_cast<int>(i));

    Eigen::MatrixXd xtr(static_cast<Eigen::Index>(train_rows.size()), x.cols());
    std::vector<int> ytr(train_rows.size());
    for (std::size_t i = 0; i < train_rows.size(); ++i) {
      xtr.row(static_cast<Eigen::Index>(i)) = x.row(train_rows[i]);
      ytr[i] = labels[static_cast<std::size_t>(train_rows[i])];
    }
    const auto predict = make_predictor(xtr, ytr);

    ConfusionCounts counts;
    for (int r : test_rows) {
      const int truth = labels[static_cast<std::size_t>(r)];
      const int predicted = predict(x.row(r).transpose());
      if (truth == 0)
        (predicted == 0 ? counts.tp : counts.fn)++;
      else
        (predicted == 0 ? counts.fp : counts.tn)++;
    }
    sum_f1 += metrics(counts).f1;
  }
  return sum_f1 / n_folds;
}

std::vector<int> to_pm1(const std::vector<int>& labels) {
  std::vector<int> y(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) y[i] = labels[i] == 0 ? 1 : -1;
  return y;
}

}  // namespace

SvmCell grid_search_svm_rbf(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                            const std::vector<double>& gammas,
                            const std::vector<double>& cs, int n_folds) {
  if (gammas.empty() || cs.empty()) throw UsageError("empty hyperparameter grid");
  SvmCell best;
  best.mean_f1 = -1.0;
  for (double gamma : gammas) {
    for (double c : cs) {
      const double f1 = cell_score(
          x, labels, n_folds,
          [&](const Eigen::MatrixXd& xtr, const std::vector<int>& ytr) {
            SvmModel model = smo_train(xtr, to_pm1(ytr), rbf_kernel(gamma), c);
            return [model = std::move(model)](const Eigen::VectorXd& row) {
              return model.decision(row) >= 0.0 ? 0 : 1;
            };
          });
      if (f1 > best.mean_f1) best = {gamma, c, f1};
    }
  }
  return best;
}

PolyCell grid_search_svm_poly(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                              const std::vector<int>& degrees,
                              const std::vector<double>& cs, int n_folds) {
  if (degrees.empty() || cs.empty()) throw UsageError("empty hyperparameter grid");
  PolyCell best;
  best.mean_f1 = -1.0;
  const double scale = default_poly_scale(x);
  for (int degree : degrees) {
    for (double c : cs) {
      const double f1 = cell_score(
          x, labels, n_folds,
          [&](const Eigen::MatrixXd& xtr, const std::vector<int>& ytr) {
            SvmModel model =
                smo_train(xtr, to_pm1(ytr), poly_kernel(degree, 0.0, scale), c);
            return [model = std::move(model)](const Eigen::VectorXd& row) {
              return model.decision(row) >= 0.0 ? 0 : 1;
            };
          });
      if (f1 > best.mean_f1) best = {degree, c, f1};
    }
  }
  return best;
}

IntCell grid_search_knn(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                        const std::vector<int>& ks, int n_folds) {
  if (ks.empty()) throw UsageError("empty hyperparameter grid");
  IntCell best;
  best.mean_f1 = -1.0;
  for (int k : ks) {
    const double f1 = cell_score(
        x, labels, n_folds,
        [&](const Eigen::MatrixXd& xtr, const std::vector<int>& ytr) {
          KnnModel model = knn_train(xtr, ytr, k);
          return [model = std::move(model)](const Eigen::VectorXd& row) {
            return model.decision(row) >= 0.0 ? 0 : 1;
          };
        });
    if (f1 > best.mean_f1) best = {k, f1};
  }
  return best;
}

IntCell grid_search_rf(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                       const std::vector<int>& trees, std::uint64_t seed,
                       int n_folds) {
  if (trees.empty()) throw UsageError("empty hyperparameter grid");
  IntCell best;
  best.mean_f1 = -1.0;
  for (int n_trees : trees) {
    const double f1 = cell_score(
        x, labels, n_folds,
        [&](const Eigen::MatrixXd& xtr, const std::vector<int>& ytr) {
          ForestModel model = rf_train(xtr, ytr, n_trees, seed);
          return [model = std::move(model)](const Eigen::VectorXd& row) {
            return model.decision(row) >= 0.0 ? 0 : 1;
          };
        });
    if (f1 > best.mean_f1) best = {n_trees, f1};
  }
  return best;
}

}  // namespace wearauth
