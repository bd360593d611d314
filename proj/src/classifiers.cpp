#include "wearauth/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wearauth/errors.hpp"
#include "wearauth/rng.hpp"

namespace wearauth {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_both_classes(const std::vector<int>& labels) {
  bool has0 = false, has1 = false;
  for (int label : labels) (label == 0 ? has0 : has1) = true;
  if (!has0 || !has1) throw DataError("training set must contain both classes");
}

}  // namespace

double KnnModel::decision(const Eigen::VectorXd& x) const {
  const Eigen::Index n = points.rows();
  std::vector<std::pair<double, Eigen::Index>> dist;
  dist.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    dist.emplace_back((points.row(i).transpose() - x).norm(), i);
  std::nth_element(dist.begin(), dist.begin() + (k - 1), dist.end());
  int valid = 0;
  for (int i = 0; i < k; ++i)
    if (labels[static_cast<std::size_t>(dist[static_cast<std::size_t>(i)].second)] == 0)
      ++valid;
  return static_cast<double>(valid) / k - 0.5;
}

KnnModel knn_train(const Eigen::MatrixXd& x, const std::vector<int>& labels, int k) {
  if (x.rows() == 0) throw DataError("knn_train: empty training set");
  require_both_classes(labels);
  if (k < 1 || k > x.rows())
    throw UsageError("knn_train: k=" + std::to_string(k) + " outside 1.." +
                     std::to_string(x.rows()));
  KnnModel model;
  model.k = k;
  model.points = x;
  model.labels = labels;
  return model;
}

double NbModel::decision(const Eigen::VectorXd& x) const {
  double log0 = log_prior0, log1 = log_prior1;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double d0 = x[j] - mean0[j];
    const double d1 = x[j] - mean1[j];
    log0 += -0.5 * std::log(2.0 * kPi * var0[j]) - d0 * d0 / (2.0 * var0[j]);
    log1 += -0.5 * std::log(2.0 * kPi * var1[j]) - d1 * d1 / (2.0 * var1[j]);
  }
  return log0 - log1;
}

NbModel nb_train(const Eigen::MatrixXd& x, const std::vector<int>& labels) {
  require_both_classes(labels);
  const Eigen::Index d = x.cols();
  NbModel model;
  model.mean0 = Eigen::VectorXd::Zero(d);
  model.mean1 = Eigen::VectorXd::Zero(d);
  model.var0 = Eigen::VectorXd::Zero(d);
  model.var1 = Eigen::VectorXd::Zero(d);
  Eigen::Index n0 = 0, n1 = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    if (labels[static_cast<std::size_t>(i)] == 0) {
      model.mean0 += x.row(i).transpose();
      ++n0;
    } else {
      model.mean1 += x.row(i).transpose();
      ++n1;
    }
  }
  model.mean0 /= static_cast<double>(n0);
  model.mean1 /= static_cast<double>(n1);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    if (labels[static_cast<std::size_t>(i)] == 0)
      model.var0 += (x.row(i).transpose() - model.mean0).array().square().matrix();
    else
      model.var1 += (x.row(i).transpose() - model.mean1).array().square().matrix();
  }
  model.var0 = (model.var0 / static_cast<double>(n0)).cwiseMax(1e-9);
  model.var1 = (model.var1 / static_cast<double>(n1)).cwiseMax(1e-9);
  model.log_prior0 = std::log(static_cast<double>(n0) / x.rows());
  model.log_prior1 = std::log(static_cast<double>(n1) / x.rows());
  return model;
}

int ForestModel::tree_vote(const Tree& tree, const Eigen::VectorXd& x) const {
  int at = 0;
  while (tree.nodes[static_cast<std::size_t>(at)].feature >= 0) {
    const Node& node = tree.nodes[static_cast<std::size_t>(at)];
    at = x[node.feature] <= node.threshold ? node.left : node.right;
  }
  return tree.nodes[static_cast<std::size_t>(at)].leaf_class;
}

double ForestModel::decision(const Eigen::VectorXd& x) const {
  int valid = 0;
  for (const Tree& tree : trees)
    if (tree_vote(tree, x) == 0) ++valid;
  return static_cast<double>(valid) / trees.size() - 0.5;
}

namespace {

struct TreeBuilder {
  const Eigen::MatrixXd& x;
  const std::vector<int>& y;
  Rng& rng;
  int n_candidates;
  ForestModel::Tree tree;

  int leaf(int count0, int count1) {
    ForestModel::Node node;
    node.feature = -1;
    node.leaf_class = count1 > count0 ? 1 : 0;  // tie favors valid
    tree.nodes.push_back(node);
    return static_cast<int>(tree.nodes.size()) - 1;
  }

  int build(std::vector<int>& rows) {
    int count0 = 0, count1 = 0;
    for (int r : rows) (y[static_cast<std::size_t>(r)] == 0 ? count0 : count1)++;
    if (count0 == 0 || count1 == 0 || rows.size() < 2)
      return leaf(count0, count1);

    const int d = static_cast<int>(x.cols());
    const std::vector<int> candidates =
        rng.sample_without_replacement(d, std::min(n_candidates, d));

    // Best (weighted Gini, candidate order, threshold); first wins ties.
    double best_gini = std::numeric_limits<double>::infinity();
    int best_feature = -1;
    double best_threshold = 0.0;
    std::vector<int> sorted = rows;
    const double total = static_cast<double>(rows.size());
    for (int f : candidates) {
      std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
        if (x(a, f) != x(b, f)) return x(a, f) < x(b, f);
        return a < b;
      });
      int left0 = 0, left1 = 0;
      for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        (y[static_cast<std::size_t>(sorted[i])] == 0 ? left0 : left1)++;
        const double v = x(sorted[i], f);
        const double next = x(sorted[i + 1], f);
        if (v == next) continue;
        const double nl = static_cast<double>(i + 1);
        const double nr = total - nl;
        const double r0 = count0 - left0, r1 = count1 - left1;
        const double gini_l = 1.0 - (left0 * left0 + left1 * left1) / (nl * nl);
        const double gini_r = 1.0 - (r0 * r0 + r1 * r1) / (nr * nr);
        const double gini = (nl * gini_l + nr * gini_r) / total;
        if (gini < best_gini) {
          best_gini = gini;
          best_feature = f;
          best_threshold = v + (next - v) / 2.0;
        }
      }
    }
    if (best_feature < 0) return leaf(count0, count1);

    std::vector<int> left_rows, right_rows;
    for (int r : rows)
      (x(r, best_feature) <= best_threshold ? left_rows : right_rows).push_back(r);

    ForestModel::Node node;
    node.feature = best_feature;
    node.threshold = best_threshold;
    tree.nodes.push_back(node);
    const int at = static_cast<int>(tree.nodes.size()) - 1;
    const int left = build(left_rows);
    const int right = build(right_rows);
    tree.nodes[static_cast<std::size_t>(at)].left = left;
    tree.nodes[static_cast<std::size_t>(at)].right = right;
    return at;
  }
};

}  // namespace

ForestModel rf_train(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                     int n_trees, std::uint64_t seed) {
  require_both_classes(labels);
  if (n_trees < 1) throw UsageError("rf_train: need at least one tree");
  const auto n = static_cast<std::size_t>(x.rows());
  const int candidates =
      std::max(1, static_cast<int>(std::sqrt(static_cast<double>(x.cols()))));

  ForestModel model;
  model.trees.reserve(static_cast<std::size_t>(n_trees));
  for (int t = 0; t < n_trees; ++t) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
    std::vector<int> rows(n);
    for (std::size_t i = 0; i < n; ++i)
      rows[i] = static_cast<int>(rng.below(n));
    TreeBuilder builder{x, labels, rng, candidates, {}};
    builder.build(rows);
    model.trees.push_back(std::move(builder.tree));
  }
  return model;
}

}  // namespace wearauth
