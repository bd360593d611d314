#pragma once

#include <string>
#include <vector>

#include "wearauth/authd.hpp"
#include "wearauth/config.hpp"
#include "wearauth/dataset.hpp"
#include "wearauth/eval.hpp"
#include "wearauth/model.hpp"

namespace wearauth {

// Hyperparameters for one classifier family. Only the fields the named
// family reads are meaningful.
struct ClassifierSpec {
  std::string name;  // svm-rbf | svm-poly | ocsvm | knn | nb | rf
  double gamma = 0.05;
  double c = 1.0;
  int degree = 1;
  int k = 1;
  int trees = 450;
  double nu = 0.5;
};

// Published operating points per model kind; the grid searches below are
// how they were found.
ClassifierSpec default_spec(ModelKind kind, const std::string& name);

// Re-derive the free hyperparameters of `spec` by exhaustive grid search on
// the subject's training matrix (internal stratified folds, best mean F1).
// ocsvm and nb have nothing to tune and come back unchanged.
ClassifierSpec tune_spec(const InstanceSet& instances, const SubjectId& subject,
                         const ClassifierSpec& spec, const Config& config);

struct FoldReport {
  int subject = 0;
  int held_out_group = 0;
  MetricReport metrics;
};

struct ProtocolResult {
  ModelKind kind = ModelKind::HR;
  std::string classifier;
  std::vector<SubjectId> subjects;
  std::vector<FoldReport> folds;       // one per (subject, group)
  AggregateReport summary;
  std::vector<SweepPoint> curve;       // pooled test confidences, all folds
  EerResult crossover;
};

// Leave-one-group-out protocol: 6 folds per subject with balanced seeded
// imposter sampling, one MetricReport per fold, and the pooled FAR/FRR
// sweep with its equal-error point. ocsvm folds train on the valid rows
// alone; every fold still tests against imposters.
ProtocolResult evaluate_protocol(const InstanceSet& instances,
                                 const ClassifierSpec& spec,
                                 const Config& config);

// One deployable model for one subject: trains on all 612 of the subject's
// rows plus floor(612/(S-1)) seeded rows per imposter (ocsvm trains on the
// subject's rows alone).
TrainedModel train_single(const InstanceSet& instances, const SubjectId& subject,
                          const ClassifierSpec& spec, const Config& config);

struct SimulationResult {
  long long accepts = 0;
  long long revokes = 0;
  long long by_route[3] = {0, 0, 0};  // terminal route, indexed by Route
  std::vector<std::string> log_lines;
};

// Replay one subject's streams through the hierarchical authenticator:
// each heart rate window becomes a session step, movement state is
// detected from the concurrent gait window, and the decision is logged as
// one JSON line.
SimulationResult simulate(const SubjectRecord& record, const ModelSet& models,
                          const Config& config);

// Report artifacts. All writers are deterministic in their inputs.
void write_report_csv(const ProtocolResult& result, const std::string& path);
void write_aggregate_csv(const ProtocolResult& result, const std::string& path);
void write_curve_csv(const std::vector<SweepPoint>& curve, const std::string& path);
void write_curve_svg(const std::vector<SweepPoint>& curve, const EerResult& crossover,
                     const std::string& title, const std::string& path);

}  // namespace wearauth
