#pragma once

#include <Eigen/Dense>
#include <string>

namespace wearauth {

struct WavData {
  Eigen::VectorXd samples;  // mono, scaled to [-1, 1]
  int sample_rate = 0;
};

// Reads a RIFF WAV file, PCM 16-bit little-endian, mono or stereo.
// Stereo is averaged to mono. Samples are scaled by 1/32768.
WavData read_wav(const std::string& path);

// Writes mono PCM 16-bit; samples outside [-1, 1] are clamped.
void write_wav(const std::string& path, const Eigen::VectorXd& samples,
               int sample_rate);

}  // namespace wearauth
