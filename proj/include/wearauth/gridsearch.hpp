#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace wearauth {

// Round-robin fold assignment per class, in row order, so every fold gets
// a near-equal share of each class.
std::vector<int> stratified_fold_ids(const std::vector<int>& labels, int n_folds);

// Default search spaces.
std::vector<double> default_gamma_grid();  // 0.01..0.10 step 0.01
std::vector<double> default_c_grid();      // 1..16 step 1
std::vector<int> default_k_grid();         // 1..40
std::vector<int> default_trees_grid();     // 150, 300, 450, 600

// Exhaustive searches maximizing mean F1 over internal stratified folds;
// the first cell in grid order wins ties. Grid order is the enumeration
// order of the loops: outer parameter first, inner parameter ascending.
struct SvmCell {
  double gamma = 0, c = 0;
  double mean_f1 = 0;
};
SvmCell grid_search_svm_rbf(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                            const std::vector<double>& gammas,
                            const std::vector<double>& cs, int n_folds = 3);

struct PolyCell {
  int degree = 1;
  double c = 0;
  double mean_f1 = 0;
};
PolyCell grid_search_svm_poly(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                              const std::vector<int>& degrees,
                              const std::vector<double>& cs, int n_folds = 3);

struct IntCell {
  int value = 0;
  double mean_f1 = 0;
};
IntCell grid_search_knn(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                        const std::vector<int>& ks, int n_folds = 3);
IntCell grid_search_rf(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                       const std::vector<int>& trees, std::uint64_t seed,
                       int n_folds = 3);

}  // namespace wearauth
