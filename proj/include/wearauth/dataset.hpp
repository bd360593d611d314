#pragma once

#include <string>
#include <vector>

#include "wearauth/config.hpp"
#include "wearauth/ingest.hpp"
#include "wearauth/types.hpp"

namespace wearauth {

// One feature row per instance, with the subject and fold-group labels the
// evaluation protocol needs. Instances come in uniform groups: 6 groups of
// 102 per subject (the 102 augmentation variants of each original event;
// heart rate and gait windows are partitioned into matching contiguous
// groups so every model shares the same protocol).
struct InstanceSet {
  ModelKind kind = ModelKind::HR;
  std::vector<std::string> names;
  Eigen::MatrixXd x;  // instances by features
  std::vector<int> subject;
  std::vector<int> group;
  std::vector<SubjectId> ids;
  int n_groups = 6;
};

// Featurize a whole dataset for one model kind. Breathing variants are
// generated and featurized one at a time, so memory stays flat.
InstanceSet build_instances(const Dataset& dataset, ModelKind kind,
                            const Config& config);

// CSV with columns: subject, group, then one column per feature name.
void write_features_csv(const InstanceSet& instances, const std::string& path);
InstanceSet read_features_csv(const std::string& path);

}  // namespace wearauth
