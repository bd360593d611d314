#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace wearauth {

// Class convention throughout: 0 = valid user (positive), 1 = imposter.
// Each decision() is a score that reads >= 0 as "valid".

struct KnnModel {
  int k = 1;
  Eigen::MatrixXd points;
  std::vector<int> labels;

  // Fraction of the k nearest neighbors labeled valid, minus 1/2.
  // Neighbor order: (distance, index) ascending, so ties are stable.
  double decision(const Eigen::VectorXd& x) const;
};

KnnModel knn_train(const Eigen::MatrixXd& x, const std::vector<int>& labels, int k);

struct NbModel {
  Eigen::VectorXd mean0, var0, mean1, var1;  // per-feature Gaussian stats
  double log_prior0 = 0.0, log_prior1 = 0.0;

  // Log posterior ratio log P(valid|x) - log P(imposter|x).
  double decision(const Eigen::VectorXd& x) const;
};

// Per-class Gaussian fit with population variance floored at 1e-9.
NbModel nb_train(const Eigen::MatrixXd& x, const std::vector<int>& labels);

struct ForestModel {
  struct Node {
    int feature = -1;        // -1 marks a leaf
    double threshold = 0.0;
    int left = -1, right = -1;
    int leaf_class = 0;
  };
  struct Tree {
    std::vector<Node> nodes;  // node 0 is the root
  };
  std::vector<Tree> trees;

  int tree_vote(const Tree& tree, const Eigen::VectorXd& x) const;
  // Fraction of trees voting valid, minus 1/2.
  double decision(const Eigen::VectorXd& x) const;
};

// CART trees on Gini impurity, bootstrap resampling of n rows, and
// sqrt(d) random feature candidates per split. Fully deterministic for a
// fixed seed: each tree draws from its own derived RNG stream.
ForestModel rf_train(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                     int n_trees, std::uint64_t seed);

}  // namespace wearauth
