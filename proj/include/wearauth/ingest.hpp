#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wearauth/types.hpp"

namespace wearauth {

// CSV with header "timestamp,bpm". Timestamps must be strictly increasing
// and bpm must lie in (20, 250); violations raise DataError naming the row.
HeartRateSeries load_heart_rate(const std::string& path, const SubjectId& subject);
void write_heart_rate(const HeartRateSeries& series, const std::string& path);

// CSV with header "timestamp,ax,ay,az,gx,gy,gz", strictly increasing
// timestamps. Accelerometer in m/s^2, gyroscope in rad/s.
GaitSeries load_gait(const std::string& path, const SubjectId& subject);
void write_gait(const GaitSeries& series, const std::string& path);

// 16-bit PCM WAV, mixed down to mono and resampled to target_rate.
AudioClip load_audio(const std::string& path, const SubjectId& subject,
                     int target_rate = 22050);
void write_audio(const AudioClip& clip, const std::string& path);

struct SubjectRecord {
  SubjectId id;
  HeartRateSeries heart_rate;
  GaitSeries gait;
  AudioClip breathing;
};

struct Dataset {
  std::vector<SubjectRecord> subjects;
  std::vector<AudioClip> noise_bank;
};

// Deterministic synthetic cohort. Each subject gets a heart rate stream
// (hour-scale, one sample per minute), a six-channel gait stream at 50 Hz,
// and a breathing clip at 22.05 kHz containing six exhalation bursts.
// separation scales how far apart subject parameters sit; at 0 every
// subject draws from the same distribution. Also produces a bank of ten
// band-limited noise clips for augmentation.
Dataset synth_dataset(std::uint64_t seed, int n_subjects, double separation);

// Directory layout: subjects.csv + noise.csv registries at the root,
// per-subject folders with heart_rate.csv / gait.csv / breathing.wav,
// and noise/noiseNN.wav for the bank.
void write_dataset(const Dataset& dataset, const std::string& dir);
Dataset load_dataset(const std::string& dir, int target_rate = 22050);

}  // namespace wearauth
