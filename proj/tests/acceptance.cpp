// Acceptance gate: ten buffered checks, one pass/fail line each, nonzero
// exit when any line fails. Budgets are wall-clock seconds.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wearauth/augment.hpp"
#include "wearauth/authd.hpp"
#include "wearauth/calibration.hpp"
#include "wearauth/dataset.hpp"
#include "wearauth/eval.hpp"
#include "wearauth/features.hpp"
#include "wearauth/ingest.hpp"
#include "wearauth/model.hpp"
#include "wearauth/pipeline.hpp"
#include "wearauth/rng.hpp"
#include "wearauth/svm.hpp"

namespace fs = std::filesystem;
using namespace wearauth;

namespace {

struct Check {
  bool ok = true;
  std::string why;
  void expect(bool condition, const std::string& message) {
    if (!condition) {
      ok = false;
      if (why.empty()) why = message;
    }
  }
};

struct Row {
  std::string label;
  bool ok = false;
  std::string why;
  double seconds = 0.0;
};

std::string fmt(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.4f", v);
  return buffer;
}

// ---------------------------------------------------------------- 1 ----

void metric_identities(Check& chk) {
  Rng rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    ConfusionCounts counts;
    counts.tp = static_cast<long long>(rng.below(200));
    counts.fn = static_cast<long long>(rng.below(200));
    counts.fp = static_cast<long long>(rng.below(200));
    counts.tn = static_cast<long long>(rng.below(200));
    if (counts.total() == 0) counts.tp = 1;
    const MetricReport r = metrics(counts);
    chk.expect(std::abs(r.acc - (1.0 - r.rmse * r.rmse)) <= 1e-12,
               "acc and rmse disagree on a random confusion matrix");
  }
  const MetricReport r = metrics({47, 3, 5, 45});
  chk.expect(std::abs(r.acc - 0.92) <= 1e-12, "worked example acc");
  chk.expect(std::abs(r.far - 0.10) <= 1e-12, "worked example far");
  chk.expect(std::abs(r.frr - 0.06) <= 1e-12, "worked example frr");
  chk.expect(std::abs(r.f1 - 94.0 / 102.0) <= 1e-12, "worked example f1");
  chk.expect(std::abs(r.rmse - std::sqrt(0.08)) <= 1e-12, "worked example rmse");
}

// ---------------------------------------------------------------- 2 ----

void augmentation_accounting(Check& chk) {
  // Quiet tones keep every noise mix below full scale, so the added noise
  // is recoverable by subtraction and the achieved SNR is measurable from
  // the power definition alone.
  std::vector<BreathingEvent> events;
  for (int i = 0; i < 6; ++i) {
    BreathingEvent e;
    e.subject = {"s0"};
    e.sample_rate = 22050;
    e.origin.clip_ordinal = i;
    const int n = 22050 * (4 + i) / 10;
    e.pcm = Eigen::VectorXd(n);
    for (int t = 0; t < n; ++t)
      e.pcm[t] = 0.002 * std::sin(2.0 * M_PI * (300.0 + 40.0 * i) * t / 22050.0);
    events.push_back(std::move(e));
  }
  std::vector<AudioClip> bank;
  Rng noise_rng(7);
  for (int k = 0; k < 10; ++k) {
    AudioClip clip;
    clip.subject = {"n" + std::to_string(k)};
    clip.sample_rate = 22050;
    clip.pcm = Eigen::VectorXd(22050 + 321 * k);
    for (Eigen::Index t = 0; t < clip.pcm.size(); ++t)
      clip.pcm[t] = 0.3 * (2.0 * noise_rng.uniform() - 1.0);
    bank.push_back(std::move(clip));
  }

  const auto& specs = enumerate_specs();
  chk.expect(specs.size() == 102, "spec catalogue is not 102 entries");
  std::set<std::string> distinct;
  int pitch = 0, speed = 0, noise = 0;
  for (const auto& spec : specs) {
    distinct.insert(describe(spec));
    if (std::holds_alternative<PitchShift>(spec.kind)) ++pitch;
    if (std::holds_alternative<SpeedChange>(spec.kind)) ++speed;
    if (std::holds_alternative<NoiseMix>(spec.kind)) ++noise;
  }
  chk.expect(distinct.size() == 102, "spec descriptions collide");
  chk.expect(pitch == 15 && speed == 7 && noise == 80,
             "catalogue split is not 15+7+80");

  const auto variants = augment_all(events, bank);
  chk.expect(variants.size() == 612, "6 events did not expand to 612");
  for (std::size_t i = 0; i < variants.size(); ++i) {
    chk.expect(variants[i].origin.augmented, "variant not marked augmented");
    chk.expect(variants[i].origin.clip_ordinal ==
                   events[i / 102].origin.clip_ordinal,
               "variant lost its parent's ordinal");
  }

  const BreathingEvent& probe = events[0];
  const double p_signal = probe.pcm.squaredNorm() / probe.pcm.size();
  for (const auto& spec : specs) {
    const auto* mix = std::get_if<NoiseMix>(&spec.kind);
    if (!mix) continue;
    const BreathingEvent variant = apply(probe, spec, bank);
    chk.expect(variant.pcm.size() == probe.pcm.size(), "noise mix resized");
    chk.expect(variant.pcm.cwiseAbs().maxCoeff() <= 1.0 + 1e-12,
               "noise mix clipped");
    const Eigen::VectorXd added = variant.pcm - probe.pcm;
    const double p_noise = added.squaredNorm() / added.size();
    const double achieved = p_signal / p_noise;
    chk.expect(std::abs(achieved - mix->snr) <= 1e-6 * mix->snr,
               "achieved snr off for " + describe(spec));
  }
}

// ---------------------------------------------------------------- 3 ----

double dual_objective(const Eigen::MatrixXd& k, const Eigen::VectorXd& y,
                      const Eigen::VectorXd& alpha) {
  double quad = 0;
  for (Eigen::Index i = 0; i < alpha.size(); ++i)
    for (Eigen::Index j = 0; j < alpha.size(); ++j)
      quad += alpha[i] * alpha[j] * y[i] * y[j] * k(i, j);
  return 0.5 * quad - alpha.sum();
}

void smo_against_reference(Check& chk) {
  Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(5));
    const int d = 1 + static_cast<int>(rng.below(3));
    Eigen::MatrixXd x(n, d);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) x(i, j) = 2.0 * rng.normal();
    std::vector<int> y(n);
    for (int i = 0; i < n; ++i) y[i] = i % 2 == 0 ? 1 : -1;
    const Kernel kernel = trial % 2 == 0
                              ? rbf_kernel(0.2 + rng.uniform())
                              : poly_kernel(1 + (trial / 2) % 2, 1.0, 0.3);
    const double cap = std::pow(10.0, rng.uniform() < 0.5 ? -1.0 : 1.0);
    // Tight stopping rule: the probe-agreement contract below is 1e-4, so
    // the bias must be pinned well below that.
    const double tol = 1e-7;
    const SvmModel model = smo_train(x, y, kernel, cap, tol);

    // Reference solution of the same dual by projected gradient.
    const Eigen::MatrixXd k = gram_matrix(x, kernel);
    Eigen::VectorXd yv(n);
    for (int i = 0; i < n; ++i) yv[i] = y[i];
    Eigen::MatrixXd q(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) q(i, j) = yv[i] * yv[j] * k(i, j);
    const Eigen::VectorXd ref_alpha = oracle::qp_minimize(
        q, Eigen::VectorXd::Constant(n, -1.0), yv, 0.0,
        Eigen::VectorXd::Constant(n, cap));
    const double ref_bias = oracle::svm_bias(ref_alpha, yv, k, cap);

    // Recover the dense alpha vector from the stored support vectors.
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
    std::vector<bool> used(static_cast<std::size_t>(model.coef.size()), false);
    for (int i = 0; i < n; ++i) {
      for (Eigen::Index s = 0; s < model.support_vectors.rows(); ++s) {
        if (used[static_cast<std::size_t>(s)]) continue;
        if ((model.support_vectors.row(s).transpose() - x.row(i).transpose())
                .norm() == 0.0) {
          alpha[i] = model.coef[s] * y[i];
          used[static_cast<std::size_t>(s)] = true;
          break;
        }
      }
    }

    // Dual objective no worse than the reference (up to tolerance).
    const double got = dual_objective(k, yv, alpha);
    const double best = oracle::qp_objective(
        q, Eigen::VectorXd::Constant(n, -1.0), ref_alpha);
    chk.expect(got <= best + 1e-6 + 1e-9 * std::abs(best),
               "dual objective worse than the reference");

    // Decision agreement at probe points.
    for (int probe = 0; probe < 5; ++probe) {
      Eigen::VectorXd z(d);
      for (int j = 0; j < d; ++j) z[j] = 2.0 * rng.normal();
      double ref_f = ref_bias;
      for (int i = 0; i < n; ++i)
        ref_f += ref_alpha[i] * yv[i] * kernel(x.row(i).transpose(), z);
      chk.expect(std::abs(model.decision(z) - ref_f) <= 1e-4,
                 "probe decision differs from the reference");
    }

    // Box, equality, and KKT margin conditions on the trained model.
    double balance = 0;
    for (int i = 0; i < n; ++i) {
      chk.expect(alpha[i] >= -1e-12 && alpha[i] <= cap + 1e-12,
                 "alpha outside its box");
      balance += alpha[i] * y[i];
      const double margin = y[i] * model.decision(x.row(i).transpose());
      if (alpha[i] <= 1e-9)
        chk.expect(margin >= 1.0 - 1e-3, "zero-alpha point inside the margin");
      else if (alpha[i] >= cap - 1e-9)
        chk.expect(margin <= 1.0 + 1e-3, "capped point outside the margin");
      else
        chk.expect(std::abs(margin - 1.0) <= 1e-3, "free point off the margin");
    }
    chk.expect(std::abs(balance) <= 1e-8, "alpha-label balance broken");
  }
}

// ---------------------------------------------------------------- 4 ----

void one_class_nu_property(Check& chk) {
  Rng rng(5);
  const int n = 100;
  Eigen::MatrixXd x(n, 2);
  for (int i = 0; i < n; ++i) {
    x(i, 0) = rng.normal();
    x(i, 1) = rng.normal();
  }
  for (double nu : {0.1, 0.5, 0.9}) {
    // Margin points satisfy f = 0 only at the exact optimum, so the solver
    // runs tight and the error cutoff sits an order above it.
    const OneClassSvmModel model = ocsvm_train(x, nu, 0.5, 1e-6);
    int errors = 0;
    for (int i = 0; i < n; ++i)
      if (model.decision(x.row(i).transpose()) < -1e-5) ++errors;
    const double sv_frac =
        static_cast<double>(model.support_vectors.rows()) / n;
    const double slack = 1.0 / n;
    chk.expect(errors / static_cast<double>(n) <= nu + slack,
               "margin-error fraction exceeds nu at nu=" + fmt(nu));
    chk.expect(sv_frac >= nu - slack,
               "support-vector fraction below nu at nu=" + fmt(nu));
  }
}

// ---------------------------------------------------------------- 5 ----

void protocol_accounting(Check& chk) {
  std::vector<int> subject, group;
  for (int s = 0; s < 10; ++s)
    for (int g = 0; g < 6; ++g)
      for (int i = 0; i < 102; ++i) {
        subject.push_back(s);
        group.push_back(g);
      }
  const auto plans = plan_folds(subject, group, 10, 6, 42);
  chk.expect(plans.size() == 60, "fold count is not 60");
  for (const auto& plan : plans) {
    chk.expect(plan.train_rows.size() == 1014, "train row count is not 510+504");
    chk.expect(plan.test_rows.size() == 201, "test row count is not 102+99");
    std::set<int> train(plan.train_rows.begin(), plan.train_rows.end());
    chk.expect(train.size() == plan.train_rows.size(), "duplicate train row");
    for (int r : plan.test_rows)
      chk.expect(train.count(r) == 0, "train and test share a row");
    // Augmented variants inherit their parent's group, so excluding the
    // held-out group from training excludes every descendant too.
    for (int r : plan.train_rows)
      chk.expect(group[static_cast<std::size_t>(r)] != plan.held_out_group,
                 "held-out group leaked into training");
    for (std::size_t i = 0; i < 510; ++i)
      chk.expect(subject[static_cast<std::size_t>(plan.train_rows[i])] ==
                     plan.subject,
                 "first train block is not the fold subject");
  }
}

// ---------------------------------------------------------------- 6 ----

void eer_machinery(Check& chk,
                   const std::vector<std::vector<SweepPoint>>& model_curves) {
  Rng rng(2024);
  Calibration cal{-1.0, 0.0};
  std::vector<double> conf;
  std::vector<int> labels;
  for (int i = 0; i < 10000; ++i) {
    conf.push_back(cal.confidence(1.0 + rng.normal()));
    labels.push_back(0);
    conf.push_back(cal.confidence(-1.0 + rng.normal()));
    labels.push_back(1);
  }
  const auto curve = threshold_sweep(conf, labels);
  const EerResult r = eer(curve);
  const double phi_minus_1 = 0.15865525393145707;
  chk.expect(r.crossed, "error curves did not cross");
  chk.expect(std::abs(r.rate - phi_minus_1) <= 0.02,
             "eer " + fmt(r.rate) + " not within 0.02 of " + fmt(phi_minus_1));

  std::vector<std::vector<SweepPoint>> all = model_curves;
  all.push_back(curve);
  chk.expect(!model_curves.empty(), "no evaluated model curves to scan");
  for (const auto& c : all)
    for (std::size_t i = 1; i < c.size(); ++i) {
      chk.expect(c[i].far <= c[i - 1].far, "far increased along the grid");
      chk.expect(c[i].frr >= c[i - 1].frr, "frr decreased along the grid");
    }
}

// ---------------------------------------------------------------- 7 ----

struct EndToEnd {
  std::vector<std::vector<SweepPoint>> curves;
  std::string numbers;
};

void pipeline_end_to_end(Check& chk, EndToEnd& out) {
  Config config;
  config.seed = 1;
  const Dataset dataset = synth_dataset(1, 10, 3.0);
  const InstanceSet hrb = build_instances(dataset, ModelKind::HRB, config);
  const InstanceSet hr = build_instances(dataset, ModelKind::HR, config);

  const ProtocolResult r_hrb =
      evaluate_protocol(hrb, default_spec(ModelKind::HRB, "svm-rbf"), config);
  const ProtocolResult r_hr =
      evaluate_protocol(hr, default_spec(ModelKind::HR, "svm-rbf"), config);
  const ProtocolResult r_unary =
      evaluate_protocol(hrb, default_spec(ModelKind::HRB, "ocsvm"), config);
  out.curves = {r_hrb.curve, r_hr.curve, r_unary.curve};
  out.numbers = "hrb acc " + fmt(r_hrb.summary.acc.mean) + " f1 " +
                fmt(r_hrb.summary.f1.mean) + ", hr acc " +
                fmt(r_hr.summary.acc.mean) + ", unary acc " +
                fmt(r_unary.summary.acc.mean);

  chk.expect(r_hrb.summary.count == 60, "hrb protocol is not 60 folds");
  chk.expect(r_hr.summary.count == 60, "hr protocol is not 60 folds");
  chk.expect(r_hrb.summary.acc.mean >= 0.90,
             "hrb mean acc " + fmt(r_hrb.summary.acc.mean) + " below 0.90");
  chk.expect(r_hrb.summary.f1.mean >= 0.90,
             "hrb mean f1 " + fmt(r_hrb.summary.f1.mean) + " below 0.90");
  chk.expect(r_hrb.summary.acc.mean > r_hr.summary.acc.mean,
             "hrb acc does not improve on hr acc");
  chk.expect(r_unary.summary.acc.mean >= 0.65,
             "unary acc " + fmt(r_unary.summary.acc.mean) + " below 0.65");
}

// ---------------------------------------------------------------- 8 ----

void feature_oracle(Check& chk) {
  Rng rng(8);
  for (int trial = 0; trial < 1000; ++trial) {
    Eigen::VectorXd window(10);
    for (int j = 0; j < 10; ++j) window[j] = 60.0 + 10.0 * rng.normal();
    const Eigen::VectorXd got = stat_features(window);
    const Eigen::VectorXd want = oracle::window_stats(window);
    chk.expect((got - want).cwiseAbs().maxCoeff() <= 1e-9,
               "statistics diverge from their definitions");
  }

  const Eigen::MatrixXd full = dct_matrix(64, 64);
  const Eigen::MatrixXd kept = dct_matrix(40, 64);
  chk.expect((full * full.transpose() - Eigen::MatrixXd::Identity(64, 64))
                     .cwiseAbs()
                     .maxCoeff() <= 1e-9,
             "full transform is not orthonormal");
  chk.expect((kept * kept.transpose() - Eigen::MatrixXd::Identity(40, 40))
                     .cwiseAbs()
                     .maxCoeff() <= 1e-9,
             "truncated transform rows are not orthonormal");

  // A 5-second capture covers exactly 212 hop-aligned frames; samples past
  // the last frame cannot influence the result, the last in-frame sample
  // must.
  BreathingEvent zero;
  zero.subject = {"s0"};
  zero.sample_rate = 22050;
  zero.pcm = Eigen::VectorXd::Zero(110250);
  const Eigen::VectorXd base = mfcc(zero);

  BreathingEvent tail = zero;
  for (Eigen::Index t = 110080; t < 110250; ++t) tail.pcm[t] = 0.9;
  chk.expect((mfcc(tail).array() == base.array()).all(),
             "samples beyond the final frame changed the features");
  // 0.9 rather than a small value: the window end tapers near zero, so a
  // faint impulse here sinks below the log floor and becomes invisible.
  BreathingEvent last = zero;
  last.pcm[110079] = 0.9;
  chk.expect((mfcc(last) - base).cwiseAbs().maxCoeff() > 1e-6,
             "the final in-frame sample had no effect");

  // Silence: every mel energy is the log floor, so only the DC row of the
  // transform survives.
  const double c0 = 8.0 * std::log(1e-10);
  chk.expect(std::abs(base[0] - c0) <= 1e-9, "silent-input first coefficient");
  for (int k = 1; k < 40; ++k)
    chk.expect(std::abs(base[k]) <= 1e-9, "silent-input higher coefficient");
}

// ---------------------------------------------------------------- 9 ----

TrainedModel rigged_model(ModelKind kind, double target_confidence) {
  TrainedModel m;
  m.kind = kind;
  m.classifier = "svm-rbf";
  SvmModel svm;
  svm.support_vectors = Eigen::MatrixXd(0, 1);
  svm.coef = Eigen::VectorXd(0);
  svm.bias = std::log(target_confidence / (1.0 - target_confidence));
  m.payload = svm;
  m.feature_names = feature_names(kind);
  m.selection.scores =
      Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m.feature_names.size()));
  m.selection.kept = {0};
  m.scaler.mean = Eigen::VectorXd::Zero(1);
  m.scaler.std = Eigen::VectorXd::Ones(1);
  m.calibration = Calibration{-1.0, 0.0};
  return m;
}

void router_and_latency(Check& chk) {
  chk.expect(estimate_latency(60.0, Route::HR) == 600.0, "hr latency at 60 s");
  chk.expect(estimate_latency(1.0, Route::HRG) == 20.0, "hrg latency at 1 s");
  chk.expect(estimate_latency(0.1, Route::HRB) == 2.4, "hrb latency at 0.1 s");
  const double above = estimate_latency(0.14, Route::HRB);
  chk.expect(std::abs(above - 2.8) <= 1e-12, "hrb latency at the switch point");

  AuthContext ctx;
  ctx.hr.subject = {"s0"};
  ctx.hr.kind = WindowKind::HeartRate;
  ctx.hr.channels = Eigen::MatrixXd(1, 10);
  for (int j = 0; j < 10; ++j) ctx.hr.channels(0, j) = 60.0 + j;
  SampleWindow gait;
  gait.subject = {"s0"};
  gait.kind = WindowKind::Gait;
  gait.channels = Eigen::MatrixXd(6, 10);
  for (int c = 0; c < 6; ++c)
    for (int j = 0; j < 10; ++j) gait.channels(c, j) = std::sin(0.3 * j + c);
  ctx.gait = gait;
  BreathingEvent breathing;
  breathing.subject = {"s0"};
  breathing.sample_rate = 22050;
  breathing.pcm = Eigen::VectorXd(400);
  for (int t = 0; t < 400; ++t) breathing.pcm[t] = 0.2 * std::sin(0.05 * t);
  ctx.breathing = breathing;

  ModelSet confident;
  confident.hr = rigged_model(ModelKind::HR, 0.9);
  confident.hrg = rigged_model(ModelKind::HRG, 0.1);
  confident.hrb = rigged_model(ModelKind::HRB, 0.1);
  ctx.movement = Movement::Sedentary;
  const AuthDecision first = authenticate(ctx, confident, 0.5);
  chk.expect(first.outcome == Outcome::Accept && first.route == Route::HR &&
                 first.reason == Reason::Passed,
             "confident heart rate did not accept on the first stage");

  ModelSet uncertain;
  uncertain.hr = rigged_model(ModelKind::HR, 0.3);
  uncertain.hrg = rigged_model(ModelKind::HRG, 0.8);
  uncertain.hrb = rigged_model(ModelKind::HRB, 0.4);
  ctx.movement = Movement::NonSedentary;
  const AuthDecision moving = authenticate(ctx, uncertain, 0.5);
  chk.expect(moving.outcome == Outcome::Accept && moving.route == Route::HRG &&
                 moving.reason == Reason::Passed,
             "moving context did not escalate to the gait route");
  ctx.movement = Movement::Sedentary;
  const AuthDecision still = authenticate(ctx, uncertain, 0.5);
  chk.expect(still.outcome == Outcome::Revoke && still.route == Route::HRB &&
                 still.reason == Reason::BelowThreshold,
             "sedentary context did not revoke on the breathing route");
}

// --------------------------------------------------------------- 10 ----

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int shell(const std::string& args, const fs::path& log) {
  const std::string cmd =
      std::string(WEARAUTH_BIN) + " " + args + " >" + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void repeatable_reports(Check& chk) {
  const fs::path base = "/tmp/wearauth_acceptance";
  fs::remove_all(base);
  fs::create_directories(base);
  const fs::path log = base / "cli.log";

  chk.expect(shell("synth --out " + (base / "data").string() +
                       " --subjects 2 --seed 5 --separation 3",
                   log) == 0,
             "synth failed");
  chk.expect(shell("featurize --data " + (base / "data").string() +
                       " --model hr --out-file " + (base / "hr.csv").string(),
                   log) == 0,
             "featurize failed");
  const std::string eval_args = "evaluate --features " +
                                (base / "hr.csv").string() +
                                " --classifier nb --seed 5 --out-dir ";
  chk.expect(shell(eval_args + (base / "out1").string(), log) == 0,
             "first evaluate failed");
  chk.expect(shell(eval_args + (base / "out2").string(), log) == 0,
             "second evaluate failed");

  const std::string report1 = slurp(base / "out1" / "report_hr_nb.csv");
  const std::string report2 = slurp(base / "out2" / "report_hr_nb.csv");
  chk.expect(!report1.empty(), "first report is empty");
  chk.expect(report1 == report2, "reports differ between identical runs");
  const std::string agg1 = slurp(base / "out1" / "aggregate_hr_nb.csv");
  const std::string agg2 = slurp(base / "out2" / "aggregate_hr_nb.csv");
  chk.expect(!agg1.empty(), "first aggregate is empty");
  chk.expect(agg1 == agg2, "aggregates differ between identical runs");
}

}  // namespace

int main() {
  Row rows[10];
  const auto timed = [&](int index, std::string label, double budget,
                         auto&& body) {
    Check chk;
    const auto start = std::chrono::steady_clock::now();
    try {
      body(chk);
    } catch (const std::exception& e) {
      chk.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (budget > 0.0 && seconds >= budget)
      chk.expect(false, "ran " + fmt(seconds) + " s against a budget of " +
                            fmt(budget) + " s");
    rows[index] = {std::move(label), chk.ok, chk.why, seconds};
  };

  timed(0, "metric identities and the worked confusion example", 1.0,
        metric_identities);
  timed(1, "augmentation catalogue accounting and achieved snr", 30.0,
        augmentation_accounting);
  timed(2, "small-problem svm training agrees with a qp reference", 60.0,
        smo_against_reference);
  timed(3, "one-class nu bounds margin errors and support vectors", 30.0,
        one_class_nu_property);
  timed(4, "group-held-out plans are balanced and leak-free", 10.0,
        protocol_accounting);

  EndToEnd end_to_end;
  timed(6, "synthetic cohort end-to-end accuracy ordering", 600.0,
        [&](Check& chk) { pipeline_end_to_end(chk, end_to_end); });
  if (!end_to_end.numbers.empty()) rows[6].label += " (" + end_to_end.numbers + ")";
  timed(5, "equal error rate recovery and error-curve monotonicity", 30.0,
        [&](Check& chk) { eer_machinery(chk, end_to_end.curves); });
  timed(7, "statistics and cepstra match their direct definitions", 30.0,
        feature_oracle);
  timed(8, "hierarchical routing and latency arithmetic", 1.0,
        router_and_latency);
  timed(9, "repeated evaluation writes byte-identical reports", 0.0,
        repeatable_reports);

  int failures = 0;
  for (int i = 0; i < 10; ++i) {
    const Row& row = rows[i];
    std::printf("criterion %2d %s %8.2fs  %s%s%s\n", i + 1,
                row.ok ? "PASS" : "FAIL", row.seconds, row.label.c_str(),
                row.ok || row.why.empty() ? "" : ": ",
                row.ok ? "" : row.why.c_str());
    if (!row.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
