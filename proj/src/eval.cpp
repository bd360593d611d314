#include "wearauth/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "wearauth/errors.hpp"
#include "wearauth/rng.hpp"

namespace wearauth {

MetricReport metrics(const ConfusionCounts& counts) {
  const long long total = counts.total();
  if (total <= 0) throw DataError("metrics: all counts are zero");
  if (counts.tp < 0 || counts.fn < 0 || counts.fp < 0 || counts.tn < 0)
    throw DataError("metrics: negative count");

  MetricReport report;
  report.acc = static_cast<double>(counts.tp + counts.tn) / total;
  report.rmse = std::sqrt(static_cast<double>(counts.fp + counts.fn) / total);
  report.far = counts.fp + counts.tn > 0
                   ? static_cast<double>(counts.fp) / (counts.fp + counts.tn)
                   : 0.0;
  report.frr = counts.tp + counts.fn > 0
                   ? static_cast<double>(counts.fn) / (counts.tp + counts.fn)
                   : 0.0;
  if (counts.tp == 0)
    report.f1 = counts.fp == 0 && counts.fn == 0 ? 1.0 : 0.0;
  else
    report.f1 = 2.0 * counts.tp / (2.0 * counts.tp + counts.fp + counts.fn);
  return report;
}

MetricReport metrics(const ConfusionCounts& counts, double auc) {
  MetricReport report = metrics(counts);
  report.auc = auc;
  return report;
}

double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size() || scores.empty())
    throw UsageError("roc_auc: scores and labels must align");
  long long n_pos = 0, n_neg = 0;
  for (int label : labels) (label == 0 ? n_pos : n_neg)++;
  if (n_pos == 0 || n_neg == 0)
    throw DataError("roc_auc needs both classes present");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });

  double area = 0.0;
  long long tp = 0, fp = 0, tp_prev = 0, fp_prev = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double s = scores[order[i]];
    while (i < order.size() && scores[order[i]] == s) {
      (labels[order[i]] == 0 ? tp : fp)++;
      ++i;
    }
    area += static_cast<double>(fp - fp_prev) *
            static_cast<double>(tp + tp_prev) / 2.0;
    tp_prev = tp;
    fp_prev = fp;
  }
  return area / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw UsageError("quantile of an empty set");
  std::sort(values.begin(), values.end());
  const double h = (values.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + (h - lo) * (values[lo + 1] - values[lo]);
}

std::vector<FoldPlan> plan_folds(const std::vector<int>& subject_of_row,
                                 const std::vector<int>& group_of_row,
                                 int n_subjects, int n_groups,
                                 std::uint64_t seed) {
  if (subject_of_row.size() != group_of_row.size())
    throw UsageError("plan_folds: subject and group arrays must align");
  if (n_subjects < 2) throw DataError("plan_folds needs at least 2 subjects");

  // Rows per (subject, group), kept in row order.
  std::vector<std::vector<std::vector<int>>> cell(
      static_cast<std::size_t>(n_subjects),
      std::vector<std::vector<int>>(static_cast<std::size_t>(n_groups)));
  for (std::size_t r = 0; r < subject_of_row.size(); ++r) {
    const int s = subject_of_row[r];
    const int g = group_of_row[r];
    if (s < 0 || s >= n_subjects || g < 0 || g >= n_groups)
      throw DataError("plan_folds: row " + std::to_string(r) +
                      " outside the subject/group structure");
    cell[static_cast<std::size_t>(s)][static_cast<std::size_t>(g)].push_back(
        static_cast<int>(r));
  }
  const std::size_t per_cell = cell[0][0].size();
  if (per_cell == 0) throw DataError("plan_folds: empty subject/group cell");
  for (int s = 0; s < n_subjects; ++s)
    for (int g = 0; g < n_groups; ++g)
      if (cell[static_cast<std::size_t>(s)][static_cast<std::size_t>(g)].size() !=
          per_cell)
        throw DataError("plan_folds: subject " + std::to_string(s) + " group " +
                        std::to_string(g) + " breaks the uniform group structure");

  const auto train_valid = static_cast<long long>(per_cell) * (n_groups - 1);
  const auto imp_train = static_cast<std::size_t>(train_valid / (n_subjects - 1));
  const auto imp_test = static_cast<std::size_t>(
      static_cast<long long>(per_cell) / (n_subjects - 1));

  std::vector<FoldPlan> plans;
  plans.reserve(static_cast<std::size_t>(n_subjects) * n_groups);
  for (int s = 0; s < n_subjects; ++s) {
    for (int g = 0; g < n_groups; ++g) {
      FoldPlan plan;
      plan.subject = s;
      plan.held_out_group = g;
      for (int og = 0; og < n_groups; ++og)
        if (og != g)
          for (int r : cell[static_cast<std::size_t>(s)][static_cast<std::size_t>(og)])
            plan.train_rows.push_back(r);
      plan.test_rows = cell[static_cast<std::size_t>(s)][static_cast<std::size_t>(g)];

      for (int t = 0; t < n_subjects; ++t) {
        if (t == s) continue;
        std::vector<int> train_pool, test_pool;
        for (int og = 0; og < n_groups; ++og) {
          const auto& rows =
              cell[static_cast<std::size_t>(t)][static_cast<std::size_t>(og)];
          auto& pool = og == g ? test_pool : train_pool;
          pool.insert(pool.end(), rows.begin(), rows.end());
        }
        Rng train_rng(mix_seed(
            seed, 0x7000000ull + (static_cast<std::uint64_t>(s) * 1000 + g) * 1000 +
                      static_cast<std::uint64_t>(t)));
        for (std::size_t idx :
             train_rng.sample_without_replacement(train_pool.size(), imp_train))
          plan.train_rows.push_back(train_pool[idx]);
        Rng test_rng(mix_seed(
            seed, 0x8000000ull + (static_cast<std::uint64_t>(s) * 1000 + g) * 1000 +
                      static_cast<std::uint64_t>(t)));
        for (std::size_t idx :
             test_rng.sample_without_replacement(test_pool.size(), imp_test))
          plan.test_rows.push_back(test_pool[idx]);
      }
      plans.push_back(std::move(plan));
    }
  }
  return plans;
}

std::vector<SweepPoint> threshold_sweep(const std::vector<double>& confidences,
                                        const std::vector<int>& labels) {
  if (confidences.size() != labels.size() || confidences.empty())
    throw UsageError("threshold_sweep: confidences and labels must align");
  long long n_pos = 0, n_neg = 0;
  for (int label : labels) (label == 0 ? n_pos : n_neg)++;
  if (n_pos == 0 || n_neg == 0)
    throw DataError("threshold_sweep needs both classes present");

  std::vector<SweepPoint> curve(101);
  for (int i = 0; i <= 100; ++i) {
    const double theta = i / 100.0;
    long long fp = 0, fn = 0;
    for (std::size_t r = 0; r < confidences.size(); ++r) {
      const bool accept = confidences[r] >= theta;
      if (labels[r] == 0) {
        if (!accept) ++fn;
      } else {
        if (accept) ++fp;
      }
    }
    curve[static_cast<std::size_t>(i)] = {
        theta, static_cast<double>(fp) / n_neg, static_cast<double>(fn) / n_pos};
  }
  return curve;
}

EerResult eer(const std::vector<SweepPoint>& curve) {
  if (curve.empty()) throw UsageError("eer of an empty curve");
  EerResult result;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const double d0 = curve[i].far - curve[i].frr;
    const double d1 = curve[i + 1].far - curve[i + 1].frr;
    if ((d0 >= 0.0 && d1 <= 0.0) || (d0 <= 0.0 && d1 >= 0.0)) {
      const double t = d0 == d1 ? 0.0 : d0 / (d0 - d1);
      result.theta = curve[i].theta + t * (curve[i + 1].theta - curve[i].theta);
      result.rate = curve[i].far + t * (curve[i + 1].far - curve[i].far);
      result.crossed = true;
      return result;
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (const SweepPoint& point : curve) {
    const double gap = std::abs(point.far - point.frr);
    if (gap < best) {
      best = gap;
      result.theta = point.theta;
      result.rate = (point.far + point.frr) / 2.0;
    }
  }
  result.crossed = false;
  return result;
}

namespace {

MetricSummary summarize(const std::vector<double>& values) {
  MetricSummary summary;
  const auto n = static_cast<double>(values.size());
  summary.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - summary.mean) * (v - summary.mean);
    summary.stdev = std::sqrt(ss / (n - 1.0));
  }
  summary.min = *std::min_element(values.begin(), values.end());
  summary.max = *std::max_element(values.begin(), values.end());
  summary.p25 = quantile(values, 0.25);
  summary.median = quantile(values, 0.5);
  summary.p75 = quantile(values, 0.75);
  for (double v : values) {
    auto bin = static_cast<int>(v / 0.05);
    bin = std::clamp(bin, 0, 19);
    summary.pdf[static_cast<std::size_t>(bin)]++;
  }
  return summary;
}

}  // namespace

AggregateReport aggregate(const std::vector<MetricReport>& reports) {
  if (reports.empty()) throw DataError("aggregate of zero reports");
  AggregateReport agg;
  agg.count = static_cast<int>(reports.size());
  std::vector<double> values(reports.size());
  const auto fill = [&](double MetricReport::* field) {
    for (std::size_t i = 0; i < reports.size(); ++i) values[i] = reports[i].*field;
    return summarize(values);
  };
  agg.acc = fill(&MetricReport::acc);
  agg.rmse = fill(&MetricReport::rmse);
  agg.far = fill(&MetricReport::far);
  agg.frr = fill(&MetricReport::frr);
  agg.f1 = fill(&MetricReport::f1);
  agg.auc = fill(&MetricReport::auc);
  return agg;
}

}  // namespace wearauth
