#include "wearauth/authd.hpp"

#include <cmath>

#include <json.hpp>

#include "wearauth/features.hpp"

namespace wearauth {

const char* to_string(Movement movement) {
  return movement == Movement::Sedentary ? "sedentary" : "non-sedentary";
}
const char* to_string(Route route) {
  switch (route) {
    case Route::HR: return "hr";
    case Route::HRG: return "hrg";
    case Route::HRB: return "hrb";
  }
  return "?";
}
const char* to_string(Outcome outcome) {
  return outcome == Outcome::Accept ? "accept" : "revoke";
}
const char* to_string(Reason reason) {
  switch (reason) {
    case Reason::Passed: return "passed";
    case Reason::BelowThreshold: return "below-threshold";
    case Reason::MissingModality: return "missing-modality";
  }
  return "?";
}

Movement detect_movement(const SampleWindow& gait_window, double tau_move) {
  if (gait_window.channels.rows() != 6)
    throw DataError("detect_movement expects a six-channel window");
  const Eigen::Index n = gait_window.channels.cols();
  Eigen::VectorXd magnitude(n);
  for (Eigen::Index i = 0; i < n; ++i)
    magnitude[i] = gait_window.channels.col(i).head(3).norm();
  const double mean = magnitude.mean();
  const double stdev = std::sqrt((magnitude.array() - mean).square().mean());
  return stdev > tau_move ? Movement::NonSedentary : Movement::Sedentary;
}

double estimate_latency(double x, Route route) {
  if (!(x > 0.0)) throw UsageError("latency needs a positive sampling period");
  switch (route) {
    case Route::HR: return 10.0 * x;
    case Route::HRG: return 20.0 * x;
    case Route::HRB: return x >= 0.14 ? 20.0 * x : 10.0 * x + 1.4;
  }
  throw UsageError("unknown route");
}

namespace {

double route_confidence(const TrainedModel& model, const AuthContext& ctx) {
  BiometricFeatures parts;
  parts.hr = ChannelFeatures{ctx.hr.subject, hr_stat_features(ctx.hr)};
  if (model.kind == ModelKind::HRG)
    parts.gait = ChannelFeatures{ctx.gait->subject, gait_stat_features(*ctx.gait)};
  if (model.kind == ModelKind::HRB) {
    MfccParams params;
    params.sample_rate = ctx.breathing->sample_rate;
    parts.breathing = ChannelFeatures{ctx.breathing->subject, mfcc(*ctx.breathing, params)};
  }
  const FeatureVector fused = fuse(model.kind, parts, 0);
  return confidence(model, fused.values);
}

}  // namespace

AuthDecision authenticate(const AuthContext& ctx, const ModelSet& models,
                          double theta, double x_seconds) {
  if (!(theta > 0.0 && theta < 1.0))
    throw UsageError("threshold must lie in (0, 1)");
  if (models.hr.kind != ModelKind::HR)
    throw UsageError("the first-stage model must be a heart rate model");

  AuthDecision decision;
  decision.threshold = theta;

  const double hr_conf = route_confidence(models.hr, ctx);
  if (hr_conf >= theta) {
    decision.outcome = Outcome::Accept;
    decision.route = Route::HR;
    decision.confidence = hr_conf;
    decision.reason = Reason::Passed;
    decision.latency_s = estimate_latency(x_seconds, Route::HR);
    return decision;
  }

  const Route route =
      ctx.movement == Movement::NonSedentary ? Route::HRG : Route::HRB;
  decision.route = route;
  decision.latency_s = estimate_latency(x_seconds, route);

  const bool present = route == Route::HRG ? ctx.gait.has_value()
                                           : ctx.breathing.has_value();
  if (!present) {
    decision.outcome = Outcome::Revoke;
    decision.confidence = hr_conf;
    decision.reason = Reason::MissingModality;
    return decision;
  }

  const std::optional<TrainedModel>& second =
      route == Route::HRG ? models.hrg : models.hrb;
  if (!second)
    throw UsageError(std::string("no model available for the ") +
                     to_string(route) + " route");

  const double conf = route_confidence(*second, ctx);
  decision.confidence = conf;
  if (conf >= theta) {
    decision.outcome = Outcome::Accept;
    decision.reason = Reason::Passed;
  } else {
    decision.outcome = Outcome::Revoke;
    decision.reason = Reason::BelowThreshold;
  }
  return decision;
}

std::string decision_log_line(const AuthDecision& decision, double timestamp) {
  nlohmann::json j;
  j["timestamp"] = timestamp;
  j["route"] = to_string(decision.route);
  j["confidence"] = decision.confidence;
  j["threshold"] = decision.threshold;
  j["outcome"] = to_string(decision.outcome);
  j["reason"] = to_string(decision.reason);
  j["estimated_latency_s"] = decision.latency_s;
  return j.dump();
}

}  // namespace wearauth
