#pragma once

#include <optional>
#include <string>

#include "wearauth/model.hpp"
#include "wearauth/types.hpp"

namespace wearauth {

enum class Movement { Sedentary, NonSedentary };
enum class Route { HR, HRG, HRB };
enum class Outcome { Accept, Revoke };
enum class Reason { Passed, BelowThreshold, MissingModality };

const char* to_string(Movement movement);
const char* to_string(Route route);
const char* to_string(Outcome outcome);
const char* to_string(Reason reason);

struct AuthContext {
  SampleWindow hr;
  std::optional<SampleWindow> gait;
  std::optional<BreathingEvent> breathing;
  Movement movement = Movement::Sedentary;
};

struct AuthDecision {
  Outcome outcome = Outcome::Revoke;
  Route route = Route::HR;
  double confidence = 0.0;
  double threshold = 0.0;
  Reason reason = Reason::BelowThreshold;
  double latency_s = 0.0;
};

struct ModelSet {
  TrainedModel hr;
  std::optional<TrainedModel> hrg;
  std::optional<TrainedModel> hrb;
};

// NonSedentary iff the standard deviation of the acceleration magnitude
// sqrt(ax^2+ay^2+az^2) over the window strictly exceeds tau_move.
Movement detect_movement(const SampleWindow& gait_window, double tau_move = 0.5);

// Seconds until a decision, given x seconds between heart rate samples.
// HR needs one 10-sample window; HRG a second 10-sample gait capture in
// parallel streams totaling 20x; HRB waits for a 1.4 s breathing event,
// which is absorbed into the window time once x >= 0.14.
double estimate_latency(double x, Route route);

// Hierarchical decision: HR first; below threshold the movement context
// routes to exactly one of HRG (moving) or HRB (sedentary). A missing
// modality on the terminal route revokes; a missing model is an error.
AuthDecision authenticate(const AuthContext& ctx, const ModelSet& models,
                          double theta, double x_seconds = 60.0);

// One JSON line per decision for the session log.
std::string decision_log_line(const AuthDecision& decision, double timestamp);

}  // namespace wearauth
