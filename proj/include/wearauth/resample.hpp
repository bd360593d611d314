#pragma once

#include <Eigen/Dense>

namespace wearauth {

// Windowed-sinc resampling. Output sample i is taken at input position
// i * factor, so factor > 1 shortens the signal (faster playback) and
// factor < 1 lengthens it. Output length is round(n / factor).
// When factor > 1 the kernel cutoff drops to 1/factor to suppress aliasing.
Eigen::VectorXd resample(const Eigen::VectorXd& x, double factor);

// Overlap-add time stretch to an exact output length, preserving pitch.
// Hann-windowed frames of 1024 samples, synthesis hop 256.
Eigen::VectorXd stretch_ola(const Eigen::VectorXd& x, Eigen::Index target_len);

// Second-order IIR bandpass (constant 0 dB peak gain) applied in one
// forward pass. center_hz is the peak frequency, q its sharpness.
Eigen::VectorXd biquad_bandpass(const Eigen::VectorXd& x, double sample_rate,
                                double center_hz, double q);

}  // namespace wearauth
