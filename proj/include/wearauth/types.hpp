#pragma once

#include <Eigen/Dense>
#include <string>
#include <variant>
#include <vector>

#include "wearauth/errors.hpp"

namespace wearauth {

struct SubjectId {
  std::string id;
  bool operator==(const SubjectId&) const = default;
  bool operator<(const SubjectId& other) const { return id < other.id; }
};

// Heart rate stream, one bpm sample per timestamp (seconds since epoch).
struct HeartRateSeries {
  SubjectId subject;
  std::vector<double> timestamps;
  Eigen::VectorXd bpm;

  Eigen::Index size() const { return bpm.size(); }
};

// Six-channel inertial stream: ax, ay, az in m/s^2 then gx, gy, gz in rad/s.
// Channel-major storage, shape 6 x N.
struct GaitSeries {
  SubjectId subject;
  std::vector<double> timestamps;
  Eigen::MatrixXd channels;

  Eigen::Index size() const { return channels.cols(); }
};

struct AudioClip {
  SubjectId subject;
  Eigen::VectorXd pcm;  // mono, [-1, 1]
  int sample_rate = 0;

  double duration() const {
    return static_cast<double>(pcm.size()) / sample_rate;
  }
};

enum class WindowKind { HeartRate, Gait };

// Fixed-length slice of one stream. HeartRate windows have 1 channel,
// Gait windows 6; shape is channel_count x window_len.
struct SampleWindow {
  SubjectId subject;
  WindowKind kind = WindowKind::HeartRate;
  Eigen::MatrixXd channels;
  int index = 0;  // ordinal within the source stream

  Eigen::Index window_len() const { return channels.cols(); }
};

struct PitchShift {
  double semitones = 0.0;
  bool operator==(const PitchShift&) const = default;
};
struct SpeedChange {
  double factor = 1.0;
  bool operator==(const SpeedChange&) const = default;
};
struct NoiseMix {
  int noise_id = 0;     // index into the noise bank, 0..9
  double snr = 1.0;     // linear power ratio
  bool operator==(const NoiseMix&) const = default;
};

struct AugmentationSpec {
  std::variant<PitchShift, SpeedChange, NoiseMix> kind;
  bool operator==(const AugmentationSpec&) const = default;
};

std::string describe(const AugmentationSpec& spec);

// Provenance of a breathing event: either cut straight from a clip or
// produced by augmenting an original event.
struct EventOrigin {
  bool augmented = false;
  int clip_ordinal = 0;   // ordinal of the original event within its clip
  AugmentationSpec spec;  // meaningful only when augmented
};

struct BreathingEvent {
  SubjectId subject;
  Eigen::VectorXd pcm;
  int sample_rate = 0;
  EventOrigin origin;

  double duration() const {
    return static_cast<double>(pcm.size()) / sample_rate;
  }
};

enum class ModelKind { HR, HRG, HRB };

inline const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::HR: return "hr";
    case ModelKind::HRG: return "hrg";
    case ModelKind::HRB: return "hrb";
  }
  return "?";
}

}  // namespace wearauth
