#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wearauth/types.hpp"

namespace wearauth {

inline constexpr int kStatFeatureCount = 21;
inline constexpr int kMfccCount = 40;

// Ordered names of the per-channel statistics computed by stat_features.
const std::array<std::string, kStatFeatureCount>& stat_feature_names();

// 21 statistics of one channel window (length >= 2): mean, median,
// population std/variance, coefficient of variation, range and its
// coefficient, quartiles, IQR and its coefficient, mean/median absolute
// deviation, energy, power, rms, rss, mean/std ratio, skewness, excess
// kurtosis. Any ratio with a zero denominator yields 0.
Eigen::VectorXd stat_features(const Eigen::VectorXd& channel);

struct MfccParams {
  int sample_rate = 22050;
  int frame = 2048;
  int hop = 512;
  int n_mels = 64;
  int n_coeffs = 40;
  double preemphasis = 0.97;
  double log_floor = 1e-10;
};

// Orthonormal DCT-II matrix, n_coeffs x n_mels (rows satisfy M*M^T = I).
Eigen::MatrixXd dct_matrix(int n_coeffs, int n_mels);

// Triangular mel filterbank, n_mels x (fft_size/2 + 1), filters equally
// spaced on the mel scale mel(f) = 2595*log10(1 + f/700) from 0 to Nyquist.
Eigen::MatrixXd mel_filterbank(int n_mels, int fft_size, double sample_rate);

// Frame-averaged cepstra of one event: pre-emphasis, Hann-windowed frames,
// power spectrum, mel filterbank, floored natural log, orthonormal DCT-II.
// Events shorter than one frame are zero-padded to a single frame.
Eigen::VectorXd mfcc(const BreathingEvent& event, const MfccParams& params = {});

struct ChannelFeatures {
  SubjectId subject;
  Eigen::VectorXd values;
};

struct BiometricFeatures {
  std::optional<ChannelFeatures> hr;         // 21 stats
  std::optional<ChannelFeatures> gait;       // 126 stats, axis-major
  std::optional<ChannelFeatures> breathing;  // 40 MFCCs
};

struct FeatureVector {
  SubjectId subject;
  int group = 0;
  std::vector<std::string> names;
  Eigen::VectorXd values;
};

// 21 stats of a heart rate window / 126 stats of a gait window
// (ax, ay, az, gx, gy, gz blocks of 21 each).
Eigen::VectorXd hr_stat_features(const SampleWindow& window);
Eigen::VectorXd gait_stat_features(const SampleWindow& window);

// Model-specific feature names, in fusion order.
std::vector<std::string> feature_names(ModelKind kind);

// HR -> 21 values, HRG -> 21 + 126, HRB -> 21 + 40. All required parts
// must be present and agree on the subject.
FeatureVector fuse(ModelKind kind, const BiometricFeatures& parts, int group);

}  // namespace wearauth
