#include "wearauth/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <variant>

#include "wearauth/csv.hpp"
#include "wearauth/gridsearch.hpp"
#include "wearauth/kernel.hpp"
#include "wearauth/rng.hpp"
#include "wearauth/segment.hpp"

namespace wearauth {

namespace {

// Seed-stream keys; disjoint from the synthesis and fold-sampling keys.
constexpr uint64_t kFoldForestKey = 0x6000000;
constexpr uint64_t kDeployImposterKey = 0x9000000;
constexpr uint64_t kDeployForestKey = 0xB000000;
constexpr uint64_t kGridForestKey = 0xA000000;

std::vector<int> to_pm1(const std::vector<int>& labels) {
  std::vector<int> y(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) y[i] = labels[i] == 0 ? 1 : -1;
  return y;
}

using Payload =
    std::variant<SvmModel, OneClassSvmModel, KnnModel, NbModel, ForestModel>;

double payload_decision(const Payload& payload, const Eigen::VectorXd& x) {
  return std::visit([&](const auto& m) { return m.decision(x); }, payload);
}

struct FittedParts {
  Payload payload;
  SelectionResult selection;
  Scaler scaler;
  Calibration calibration;
};

// Selection, standardization, classifier fit, and calibration on one
// training matrix. For ocsvm the caller passes valid rows only.
FittedParts fit_parts(const Eigen::MatrixXd& xtr, const std::vector<int>& labels,
                      const ClassifierSpec& spec, int k_best, uint64_t forest_seed) {
  FittedParts parts;
  const bool unary = spec.name == "ocsvm";
  const int k = std::min<int>(k_best, static_cast<int>(xtr.cols()));
  parts.selection = unary ? select_k_unary(xtr, k) : select_k(xtr, labels, k);
  const Eigen::MatrixXd xsel = take_columns(xtr, parts.selection.kept);
  parts.scaler.fit(xsel);
  const Eigen::MatrixXd xs = parts.scaler.transform(xsel);

  if (spec.name == "svm-rbf") {
    parts.payload = smo_train(xs, to_pm1(labels), rbf_kernel(spec.gamma), spec.c);
  } else if (spec.name == "svm-poly") {
    const Kernel kernel = poly_kernel(spec.degree, 0.0, default_poly_scale(xs));
    parts.payload = smo_train(xs, to_pm1(labels), kernel, spec.c);
  } else if (spec.name == "ocsvm") {
    parts.payload = ocsvm_train(xs, spec.nu, spec.gamma);
  } else if (spec.name == "knn") {
    parts.payload = knn_train(xs, labels, spec.k);
  } else if (spec.name == "nb") {
    parts.payload = nb_train(xs, labels);
  } else if (spec.name == "rf") {
    parts.payload = rf_train(xs, labels, spec.trees, forest_seed);
  } else {
    throw UsageError("unknown classifier \"" + spec.name + "\"");
  }

  if (unary) {
    parts.calibration = unary_calibration();
  } else {
    std::vector<double> decisions(static_cast<std::size_t>(xs.rows()));
    for (Eigen::Index i = 0; i < xs.rows(); ++i)
      decisions[static_cast<std::size_t>(i)] =
          payload_decision(parts.payload, xs.row(i).transpose());
    parts.calibration = calibrate(decisions, labels);
  }
  return parts;
}

Eigen::MatrixXd gather_rows(const Eigen::MatrixXd& x, const std::vector<int>& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = x.row(rows[i]);
  return out;
}

int subject_ordinal(const InstanceSet& instances, const SubjectId& subject) {
  for (std::size_t s = 0; s < instances.ids.size(); ++s)
    if (instances.ids[s] == subject) return static_cast<int>(s);
  throw DataError("unknown subject \"" + subject.id + "\"");
}

// All of the subject's rows plus floor(n_valid/(S-1)) seeded rows per
// imposter; for unary training the imposters are skipped.
void deployment_rows(const InstanceSet& instances, int s, bool unary,
                     uint64_t seed, std::vector<int>& rows,
                     std::vector<int>& labels) {
  const int n_subjects = static_cast<int>(instances.ids.size());
  std::vector<std::vector<int>> pools(static_cast<std::size_t>(n_subjects));
  for (std::size_t r = 0; r < instances.subject.size(); ++r)
    pools[static_cast<std::size_t>(instances.subject[r])].push_back(
        static_cast<int>(r));

  rows = pools[static_cast<std::size_t>(s)];
  labels.assign(rows.size(), 0);
  if (unary) return;
  if (n_subjects < 2)
    throw DataError("binary training needs at least two subjects");

  const int per_imposter =
      static_cast<int>(rows.size()) / (n_subjects - 1);
  for (int t = 0; t < n_subjects; ++t) {
    if (t == s) continue;
    const auto& pool = pools[static_cast<std::size_t>(t)];
    const int take = std::min<int>(per_imposter, static_cast<int>(pool.size()));
    Rng rng(mix_seed(seed, kDeployImposterKey +
                               static_cast<uint64_t>(s) * 1000 +
                               static_cast<uint64_t>(t)));
    for (int idx : rng.sample_without_replacement(static_cast<int>(pool.size()), take)) {
      rows.push_back(pool[static_cast<std::size_t>(idx)]);
      labels.push_back(1);
    }
  }
}

void print_double(std::ofstream& out, double v) { out << format_double(v); }

}  // namespace

ClassifierSpec default_spec(ModelKind kind, const std::string& name) {
  ClassifierSpec spec;
  spec.name = name;
  if (name == "svm-rbf") {
    switch (kind) {
      case ModelKind::HR: spec.gamma = 0.03; spec.c = 3; break;
      case ModelKind::HRG: spec.gamma = 0.05; spec.c = 5; break;
      case ModelKind::HRB: spec.gamma = 0.08; spec.c = 4; break;
    }
  } else if (name == "svm-poly") {
    switch (kind) {
      case ModelKind::HR: spec.degree = 1; spec.c = 1; break;
      case ModelKind::HRG: spec.degree = 3; spec.c = 14; break;
      case ModelKind::HRB: spec.degree = 4; spec.c = 16; break;
    }
  } else if (name == "ocsvm") {
    spec.nu = 0.5;
    spec.gamma = 0.05;
  } else if (name == "knn") {
    switch (kind) {
      case ModelKind::HR: spec.k = 32; break;
      case ModelKind::HRG: spec.k = 24; break;
      case ModelKind::HRB: spec.k = 2; break;
    }
  } else if (name == "rf") {
    spec.trees = kind == ModelKind::HRB ? 600 : 450;
  } else if (name != "nb") {
    throw UsageError("unknown classifier \"" + name + "\"");
  }
  return spec;
}

ClassifierSpec tune_spec(const InstanceSet& instances, const SubjectId& subject,
                         const ClassifierSpec& spec, const Config& config) {
  ClassifierSpec tuned = spec;
  if (spec.name == "ocsvm" || spec.name == "nb") return tuned;

  const int s = subject_ordinal(instances, subject);
  std::vector<int> rows, labels;
  deployment_rows(instances, s, false, config.seed, rows, labels);
  const Eigen::MatrixXd xtr = gather_rows(instances.x, rows);

  const int k = std::min<int>(config.k_best, static_cast<int>(xtr.cols()));
  const SelectionResult selection = select_k(xtr, labels, k);
  Scaler scaler;
  const Eigen::MatrixXd xsel = take_columns(xtr, selection.kept);
  scaler.fit(xsel);
  const Eigen::MatrixXd xs = scaler.transform(xsel);

  if (spec.name == "svm-rbf") {
    const SvmCell cell = grid_search_svm_rbf(xs, labels, default_gamma_grid(),
                                             default_c_grid(), config.grid_folds);
    tuned.gamma = cell.gamma;
    tuned.c = cell.c;
  } else if (spec.name == "svm-poly") {
    const PolyCell cell = grid_search_svm_poly(xs, labels, {1, 2, 3, 4},
                                               default_c_grid(), config.grid_folds);
    tuned.degree = cell.degree;
    tuned.c = cell.c;
  } else if (spec.name == "knn") {
    tuned.k = grid_search_knn(xs, labels, default_k_grid(), config.grid_folds).value;
  } else if (spec.name == "rf") {
    tuned.trees = grid_search_rf(xs, labels, default_trees_grid(),
                                 mix_seed(config.seed, kGridForestKey),
                                 config.grid_folds)
                      .value;
  } else {
    throw UsageError("unknown classifier \"" + spec.name + "\"");
  }
  return tuned;
}

ProtocolResult evaluate_protocol(const InstanceSet& instances,
                                 const ClassifierSpec& spec,
                                 const Config& config) {
  const int n_subjects = static_cast<int>(instances.ids.size());
  const bool unary = spec.name == "ocsvm";
  const std::vector<FoldPlan> plans =
      plan_folds(instances.subject, instances.group, n_subjects,
                 instances.n_groups, config.seed);

  ProtocolResult result;
  result.kind = instances.kind;
  result.classifier = spec.name;
  result.subjects = instances.ids;

  std::vector<MetricReport> reports;
  std::vector<double> pooled_conf;
  std::vector<int> pooled_labels;

  for (const FoldPlan& plan : plans) {
    std::vector<int> train_rows;
    std::vector<int> train_labels;
    for (int r : plan.train_rows) {
      const int label = instances.subject[static_cast<std::size_t>(r)] == plan.subject
                            ? 0
                            : 1;
      if (unary && label != 0) continue;
      train_rows.push_back(r);
      train_labels.push_back(label);
    }

    const Eigen::MatrixXd xtr = gather_rows(instances.x, train_rows);
    const uint64_t forest_seed =
        mix_seed(config.seed, kFoldForestKey +
                                  static_cast<uint64_t>(plan.subject) * 1000 +
                                  static_cast<uint64_t>(plan.held_out_group));
    const FittedParts parts =
        fit_parts(xtr, train_labels, spec, config.k_best, forest_seed);

    ConfusionCounts counts;
    std::vector<double> confidences;
    std::vector<int> labels;
    confidences.reserve(plan.test_rows.size());
    labels.reserve(plan.test_rows.size());
    for (int r : plan.test_rows) {
      const int label = instances.subject[static_cast<std::size_t>(r)] == plan.subject
                            ? 0
                            : 1;
      const Eigen::VectorXd v = parts.scaler.transform(
          take_elements(instances.x.row(r).transpose(), parts.selection.kept));
      const double decision = payload_decision(parts.payload, v);
      const bool accepted = decision >= 0.0;
      if (label == 0)
        (accepted ? counts.tp : counts.fn) += 1;
      else
        (accepted ? counts.fp : counts.tn) += 1;
      confidences.push_back(parts.calibration.confidence(decision));
      labels.push_back(label);
    }

    const MetricReport report = metrics(counts, roc_auc(confidences, labels));
    reports.push_back(report);
    result.folds.push_back({plan.subject, plan.held_out_group, report});
    pooled_conf.insert(pooled_conf.end(), confidences.begin(), confidences.end());
    pooled_labels.insert(pooled_labels.end(), labels.begin(), labels.end());
  }

  result.summary = aggregate(reports);
  result.curve = threshold_sweep(pooled_conf, pooled_labels);
  result.crossover = eer(result.curve);
  return result;
}

TrainedModel train_single(const InstanceSet& instances, const SubjectId& subject,
                          const ClassifierSpec& spec, const Config& config) {
  const int s = subject_ordinal(instances, subject);
  const bool unary = spec.name == "ocsvm";
  std::vector<int> rows, labels;
  deployment_rows(instances, s, unary, config.seed, rows, labels);

  const Eigen::MatrixXd xtr = gather_rows(instances.x, rows);
  const FittedParts parts =
      fit_parts(xtr, labels, spec, config.k_best,
                mix_seed(config.seed, kDeployForestKey + static_cast<uint64_t>(s)));

  TrainedModel model;
  model.kind = instances.kind;
  model.classifier = spec.name;
  model.payload = parts.payload;
  model.selection = parts.selection;
  model.scaler = parts.scaler;
  model.feature_names = instances.names;
  model.calibration = parts.calibration;
  return model;
}

SimulationResult simulate(const SubjectRecord& record, const ModelSet& models,
                          const Config& config) {
  SimulationResult result;
  const std::vector<SampleWindow> hr_windows =
      windowize(record.heart_rate, config.window_len, config.window_step);
  if (hr_windows.empty())
    throw DataError("heart rate stream shorter than one window");
  const std::vector<SampleWindow> gait_windows =
      windowize(record.gait, config.window_len, config.window_step);
  const std::vector<BreathingEvent> events = extract_events(record.breathing);

  const std::vector<double>& ts = record.heart_rate.timestamps;
  const double x_seconds = ts.size() >= 2 ? ts[1] - ts[0] : 60.0;

  for (std::size_t i = 0; i < hr_windows.size(); ++i) {
    AuthContext ctx;
    ctx.hr = hr_windows[i];
    if (!gait_windows.empty()) {
      const SampleWindow& gw = gait_windows[i % gait_windows.size()];
      ctx.movement = detect_movement(gw, config.tau_move);
      if (ctx.movement == Movement::NonSedentary) ctx.gait = gw;
    }
    if (ctx.movement == Movement::Sedentary && !events.empty())
      ctx.breathing = events[i % events.size()];

    const AuthDecision decision =
        authenticate(ctx, models, config.theta, x_seconds);
    (decision.outcome == Outcome::Accept ? result.accepts : result.revokes) += 1;
    result.by_route[static_cast<int>(decision.route)] += 1;

    const std::size_t last =
        i * static_cast<std::size_t>(config.window_step) +
        static_cast<std::size_t>(config.window_len) - 1;
    result.log_lines.push_back(decision_log_line(decision, ts[last]));
  }
  return result;
}

void write_report_csv(const ProtocolResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << "subject,fold,model,classifier,acc,rmse,far,frr,f1,auc\n";
  for (const FoldReport& fold : result.folds) {
    out << result.subjects[static_cast<std::size_t>(fold.subject)].id << ','
        << fold.held_out_group << ',' << to_string(result.kind) << ','
        << result.classifier;
    const MetricReport& m = fold.metrics;
    for (double v : {m.acc, m.rmse, m.far, m.frr, m.f1, m.auc}) {
      out << ',';
      print_double(out, v);
    }
    out << '\n';
  }
}

void write_aggregate_csv(const ProtocolResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << "metric,mean,std,min,p25,median,p75,max";
  for (int b = 0; b < 20; ++b) {
    char name[8];
    std::snprintf(name, sizeof name, "bin%02d", b);
    out << ',' << name;
  }
  out << '\n';
  const AggregateReport& agg = result.summary;
  const std::pair<const char*, const MetricSummary*> rows[] = {
      {"acc", &agg.acc}, {"rmse", &agg.rmse}, {"far", &agg.far},
      {"frr", &agg.frr}, {"f1", &agg.f1},     {"auc", &agg.auc}};
  for (const auto& [name, s] : rows) {
    out << name;
    for (double v : {s->mean, s->stdev, s->min, s->p25, s->median, s->p75, s->max}) {
      out << ',';
      print_double(out, v);
    }
    for (int count : s->pdf) out << ',' << count;
    out << '\n';
  }
}

void write_curve_csv(const std::vector<SweepPoint>& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << "theta,far,frr\n";
  for (const SweepPoint& p : curve) {
    print_double(out, p.theta);
    out << ',';
    print_double(out, p.far);
    out << ',';
    print_double(out, p.frr);
    out << '\n';
  }
}

namespace {

double svg_x(double theta) { return 60.0 + theta * 520.0; }
double svg_y(double rate) { return 420.0 - rate * 380.0; }

std::string polyline(const std::vector<SweepPoint>& curve, bool far) {
  std::string points;
  char buf[64];
  for (const SweepPoint& p : curve) {
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", svg_x(p.theta),
                  svg_y(far ? p.far : p.frr));
    points += buf;
  }
  if (!points.empty()) points.pop_back();
  return points;
}

}  // namespace

void write_curve_svg(const std::vector<SweepPoint>& curve, const EerResult& crossover,
                     const std::string& title, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  char buf[160];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n"
      << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n"
      << "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" << title << "</text>\n";
  for (int i = 0; i <= 4; ++i) {
    const double t = i / 4.0;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"420\" x2=\"%.1f\" y2=\"40\" "
                  "stroke=\"#dddddd\"/>\n",
                  svg_x(t), svg_x(t));
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"60\" y1=\"%.1f\" x2=\"580\" y2=\"%.1f\" "
                  "stroke=\"#dddddd\"/>\n",
                  svg_y(t), svg_y(t));
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"438\" text-anchor=\"middle\" "
                  "font-family=\"sans-serif\" font-size=\"12\">%.2f</text>\n",
                  svg_x(t), t);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"52\" y=\"%.1f\" text-anchor=\"end\" "
                  "font-family=\"sans-serif\" font-size=\"12\">%.2f</text>\n",
                  svg_y(t) + 4.0, t);
    out << buf;
  }
  out << "<line x1=\"60\" y1=\"420\" x2=\"580\" y2=\"420\" stroke=\"black\"/>\n"
      << "<line x1=\"60\" y1=\"420\" x2=\"60\" y2=\"40\" stroke=\"black\"/>\n"
      << "<text x=\"320\" y=\"466\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">confidence threshold</text>\n"
      << "<text x=\"18\" y=\"230\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 230)\">error rate</text>\n";
  out << "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\" points=\""
      << polyline(curve, true) << "\"/>\n";
  out << "<polyline fill=\"none\" stroke=\"#2980b9\" stroke-width=\"1.5\" points=\""
      << polyline(curve, false) << "\"/>\n";
  out << "<text x=\"470\" y=\"60\" font-family=\"sans-serif\" font-size=\"12\" "
         "fill=\"#c0392b\">FAR</text>\n"
      << "<text x=\"470\" y=\"76\" font-family=\"sans-serif\" font-size=\"12\" "
         "fill=\"#2980b9\">FRR</text>\n";
  std::snprintf(buf, sizeof buf,
                "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"4\" fill=\"black\"/>\n",
                svg_x(crossover.theta), svg_y(crossover.rate));
  out << buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.2f\" y=\"%.2f\" font-family=\"sans-serif\" "
                "font-size=\"12\">%s = %.4f at %.2f</text>\n",
                svg_x(crossover.theta) + 8.0, svg_y(crossover.rate) - 8.0,
                crossover.crossed ? "EER" : "min gap", crossover.rate,
                crossover.theta);
  out << buf;
  out << "</svg>\n";
}

}  // namespace wearauth
