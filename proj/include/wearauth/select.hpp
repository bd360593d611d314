#pragma once

#include <Eigen/Dense>
#include <vector>

namespace wearauth {

// One-way ANOVA F statistic of one feature column against binary labels
// (0 = valid, 1 = imposter). Zero within-class variance with nonzero
// between-class variance yields +infinity (ranked first); both zero yields
// 0. Throws DataError when only one class is present.
double f_score(const Eigen::VectorXd& column, const std::vector<int>& labels);

struct SelectionResult {
  Eigen::VectorXd scores;  // one per feature
  std::vector<int> kept;   // K indices, descending score, ties to lower index
};

// Top-K features by F score. K must not exceed the feature count.
SelectionResult select_k(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                         int k);

// Label-free selection for one-class training: features are min-max
// normalized to [0, 1], then ranked by descending variance of the
// normalized column (constant features score 0).
SelectionResult select_k_unary(const Eigen::MatrixXd& x, int k);

// Per-feature standardization. Fit on training rows only; columns whose
// std is 0 divide by 1 instead.
struct Scaler {
  Eigen::VectorXd mean;
  Eigen::VectorXd std;

  void fit(const Eigen::MatrixXd& x);
  Eigen::MatrixXd transform(const Eigen::MatrixXd& x) const;
  Eigen::VectorXd transform(const Eigen::VectorXd& row) const;
};

// Column subset in `kept` order, as a new matrix.
Eigen::MatrixXd take_columns(const Eigen::MatrixXd& x, const std::vector<int>& kept);
Eigen::VectorXd take_elements(const Eigen::VectorXd& row, const std::vector<int>& kept);

}  // namespace wearauth
