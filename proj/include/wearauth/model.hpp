#pragma once

#include <string>
#include <variant>
#include <vector>

#include "wearauth/calibration.hpp"
#include "wearauth/classifiers.hpp"
#include "wearauth/select.hpp"
#include "wearauth/svm.hpp"
#include "wearauth/types.hpp"

namespace wearauth {

// A complete scoring pipeline for one biometric model: feature selection,
// standardization, classifier payload, and confidence calibration.
struct TrainedModel {
  int format_version = 1;
  ModelKind kind = ModelKind::HR;
  std::string classifier;  // svm-rbf | svm-poly | ocsvm | knn | nb | rf
  std::variant<SvmModel, OneClassSvmModel, KnnModel, NbModel, ForestModel> payload;
  SelectionResult selection;               // indices into the full vector
  Scaler scaler;                           // fitted on the selected columns
  std::vector<std::string> feature_names;  // full fused vector, pre-selection
  Calibration calibration;
};

// Raw classifier score of a full (unselected, unscaled) feature vector;
// >= 0 reads as the valid user.
double decision_value(const TrainedModel& model, const Eigen::VectorXd& features);

// Calibrated P(valid) of a full feature vector.
double confidence(const TrainedModel& model, const Eigen::VectorXd& features);

bool predict_valid(const TrainedModel& model, const Eigen::VectorXd& features);

// Versioned JSON document; every real number survives a round trip exactly.
void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);

}  // namespace wearauth
