#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace wearauth {

// Positive class = valid user (label 0).
struct ConfusionCounts {
  long long tp = 0, fn = 0, fp = 0, tn = 0;
  long long total() const { return tp + fn + fp + tn; }
};

struct MetricReport {
  double acc = 0, rmse = 0, far = 0, frr = 0, f1 = 0;
  double auc = 0.5;  // fill via roc_auc when scores are available
};

// ACC, RMSE = sqrt(misclassification rate), FAR, FRR, F1. Zero-denominator
// rules: FAR and FRR fall to 0; F1 is 1 for the all-negative perfect case
// (TP=0, FP=FN=0) and 0 for any other TP=0. Throws on all-zero counts.
MetricReport metrics(const ConfusionCounts& counts);
MetricReport metrics(const ConfusionCounts& counts, double auc);

// Trapezoidal area under the ROC curve with tied scores grouped; equals
// the pairwise-ordering estimator with ties counted 1/2.
double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels);

// Inclusive linear-interpolation quantile (values copied and sorted).
double quantile(std::vector<double> values, double p);

struct FoldPlan {
  int subject = 0;
  int held_out_group = 0;
  std::vector<int> train_rows;  // valid rows first, then imposters
  std::vector<int> test_rows;
};

// Leave-one-group-out plans: for every subject and every group, train on
// the subject's other groups plus floor(train_valid/(S-1)) rows drawn
// seeded and without replacement from each imposter's other groups; test
// on the held-out group plus floor(test_valid/(S-1)) rows from each
// imposter's held-out group. Row counts per (subject, group) must be
// uniform. No row of a held-out group ever enters training.
std::vector<FoldPlan> plan_folds(const std::vector<int>& subject_of_row,
                                 const std::vector<int>& group_of_row,
                                 int n_subjects, int n_groups,
                                 std::uint64_t seed);

struct SweepPoint {
  double theta = 0, far = 0, frr = 0;
};

// Accept iff confidence >= theta, for theta = 0.00, 0.01, ..., 1.00.
std::vector<SweepPoint> threshold_sweep(const std::vector<double>& confidences,
                                        const std::vector<int>& labels);

struct EerResult {
  double theta = 0;
  double rate = 0;
  bool crossed = false;  // false: no FAR/FRR crossing, nearest point returned
};

// Crossing of FAR and FRR, linearly interpolated between bracketing grid
// points; without a crossing, the grid point minimizing |FAR-FRR|.
EerResult eer(const std::vector<SweepPoint>& curve);

struct MetricSummary {
  double mean = 0, stdev = 0;
  double min = 0, p25 = 0, median = 0, p75 = 0, max = 0;
  std::array<int, 20> pdf{};  // counts in bins of width 0.05 over [0,1]
};

struct AggregateReport {
  int count = 0;
  MetricSummary acc, rmse, far, frr, f1, auc;
};

// Mean, sample std (0 for a single report), five-number summary, and
// histogram per metric.
AggregateReport aggregate(const std::vector<MetricReport>& reports);

}  // namespace wearauth
