#include "wearauth/select.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "wearauth/errors.hpp"

namespace wearauth {

double f_score(const Eigen::VectorXd& column, const std::vector<int>& labels) {
  const Eigen::Index n = column.size();
  if (static_cast<Eigen::Index>(labels.size()) != n)
    throw UsageError("f_score: column and labels differ in length");

  double sum[2] = {0, 0};
  Eigen::Index count[2] = {0, 0};
  for (Eigen::Index i = 0; i < n; ++i) {
    const int c = labels[static_cast<std::size_t>(i)] ? 1 : 0;
    sum[c] += column[i];
    ++count[c];
  }
  if (count[0] == 0 || count[1] == 0)
    throw DataError("f_score needs both classes present");

  const double grand = (sum[0] + sum[1]) / n;
  const double mean0 = sum[0] / count[0];
  const double mean1 = sum[1] / count[1];
  const double ss_between = count[0] * (mean0 - grand) * (mean0 - grand) +
                            count[1] * (mean1 - grand) * (mean1 - grand);
  double ss_within = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double m = labels[static_cast<std::size_t>(i)] ? mean1 : mean0;
    const double d = column[i] - m;
    ss_within += d * d;
  }

  if (ss_within == 0.0)
    return ss_between > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  const double ms_between = ss_between / 1.0;        // 2 groups: df1 = 1
  const double ms_within = ss_within / (n - 2.0);    // df2 = n - 2
  return ms_between / ms_within;
}

namespace {

SelectionResult top_k(const Eigen::VectorXd& scores, int k) {
  const int d = static_cast<int>(scores.size());
  if (k > d) throw UsageError("cannot select " + std::to_string(k) +
                              " features out of " + std::to_string(d));
  std::vector<int> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  SelectionResult result;
  result.scores = scores;
  result.kept.assign(order.begin(), order.begin() + k);
  return result;
}

}  // namespace

SelectionResult select_k(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                         int k) {
  Eigen::VectorXd scores(x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    scores[j] = f_score(x.col(j), labels);
  return top_k(scores, k);
}

SelectionResult select_k_unary(const Eigen::MatrixXd& x, int k) {
  if (x.rows() == 0) throw DataError("select_k_unary: empty matrix");
  Eigen::VectorXd scores(x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double lo = x.col(j).minCoeff();
    const double hi = x.col(j).maxCoeff();
    if (hi == lo) {
      scores[j] = 0.0;
      continue;
    }
    const Eigen::VectorXd scaled = (x.col(j).array() - lo) / (hi - lo);
    const double mean = scaled.mean();
    scores[j] = (scaled.array() - mean).square().mean();
  }
  return top_k(scores, k);
}

void Scaler::fit(const Eigen::MatrixXd& x) {
  if (x.rows() == 0) throw DataError("Scaler::fit on an empty training set");
  mean = x.colwise().mean();
  std.resize(x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    std[j] = std::sqrt((x.col(j).array() - mean[j]).square().mean());
}

Eigen::MatrixXd Scaler::transform(const Eigen::MatrixXd& x) const {
  Eigen::MatrixXd out(x.rows(), x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double s = std[j] > 0.0 ? std[j] : 1.0;
    out.col(j) = (x.col(j).array() - mean[j]) / s;
  }
  return out;
}

Eigen::VectorXd Scaler::transform(const Eigen::VectorXd& row) const {
  Eigen::VectorXd out(row.size());
  for (Eigen::Index j = 0; j < row.size(); ++j) {
    const double s = std[j] > 0.0 ? std[j] : 1.0;
    out[j] = (row[j] - mean[j]) / s;
  }
  return out;
}

Eigen::MatrixXd take_columns(const Eigen::MatrixXd& x, const std::vector<int>& kept) {
  Eigen::MatrixXd out(x.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j)
    out.col(static_cast<Eigen::Index>(j)) = x.col(kept[j]);
  return out;
}

Eigen::VectorXd take_elements(const Eigen::VectorXd& row, const std::vector<int>& kept) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j)
    out[static_cast<Eigen::Index>(j)] = row[kept[j]];
  return out;
}

}  // namespace wearauth
