#include "wearauth/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "wearauth/csv.hpp"
#include "wearauth/resample.hpp"
#include "wearauth/rng.hpp"
#include "wearauth/wav.hpp"

namespace fs = std::filesystem;

namespace wearauth {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_header(const CsvTable& table, const std::vector<std::string>& expected,
                    const std::string& path) {
  if (table.header != expected) {
    std::string want;
    for (const auto& col : expected) {
      if (!want.empty()) want += ",";
      want += col;
    }
    throw DataError(path + ": expected header \"" + want + "\"");
  }
}

}  // namespace

HeartRateSeries load_heart_rate(const std::string& path, const SubjectId& subject) {
  CsvTable table = read_csv(path);
  require_header(table, {"timestamp", "bpm"}, path);

  HeartRateSeries series;
  series.subject = subject;
  series.timestamps.reserve(table.rows.size());
  series.bpm.resize(static_cast<Eigen::Index>(table.rows.size()));
  double prev = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const std::string where = path + " row " + std::to_string(i + 2);
    if (row.size() != 2) throw DataError(where + ": expected 2 fields");
    const double t = parse_double(row[0], where + " timestamp");
    const double bpm = parse_double(row[1], where + " bpm");
    if (!(t > prev)) throw DataError(where + ": timestamps must be strictly increasing");
    if (!(bpm > 20.0 && bpm < 250.0))
      throw DataError(where + ": bpm " + format_double(bpm) + " outside (20, 250)");
    prev = t;
    series.timestamps.push_back(t);
    series.bpm[static_cast<Eigen::Index>(i)] = bpm;
  }
  return series;
}

void write_heart_rate(const HeartRateSeries& series, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << "timestamp,bpm\n";
  for (Eigen::Index i = 0; i < series.size(); ++i)
    out << format_double(series.timestamps[static_cast<std::size_t>(i)]) << ","
        << format_double(series.bpm[i]) << "\n";
}

GaitSeries load_gait(const std::string& path, const SubjectId& subject) {
  CsvTable table = read_csv(path);
  const std::vector<std::string> cols = {"timestamp", "ax", "ay", "az",
                                         "gx", "gy", "gz"};
  require_header(table, cols, path);

  GaitSeries series;
  series.subject = subject;
  series.timestamps.reserve(table.rows.size());
  series.channels.resize(6, static_cast<Eigen::Index>(table.rows.size()));
  double prev = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const std::string where = path + " row " + std::to_string(i + 2);
    if (row.size() != 7) throw DataError(where + ": expected 7 fields");
    const double t = parse_double(row[0], where + " timestamp");
    if (!(t > prev)) throw DataError(where + ": timestamps must be strictly increasing");
    prev = t;
    series.timestamps.push_back(t);
    for (int c = 0; c < 6; ++c)
      series.channels(c, static_cast<Eigen::Index>(i)) =
          parse_double(row[static_cast<std::size_t>(c + 1)],
                       where + " " + cols[static_cast<std::size_t>(c + 1)]);
  }
  return series;
}

void write_gait(const GaitSeries& series, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << "timestamp,ax,ay,az,gx,gy,gz\n";
  for (Eigen::Index i = 0; i < series.size(); ++i) {
    out << format_double(series.timestamps[static_cast<std::size_t>(i)]);
    for (int c = 0; c < 6; ++c) out << "," << format_double(series.channels(c, i));
    out << "\n";
  }
}

AudioClip load_audio(const std::string& path, const SubjectId& subject,
                     int target_rate) {
  WavData wav = read_wav(path);
  AudioClip clip;
  clip.subject = subject;
  clip.sample_rate = target_rate;
  if (wav.sample_rate == target_rate) {
    clip.pcm = std::move(wav.samples);
  } else {
    clip.pcm = resample(wav.samples,
                        static_cast<double>(wav.sample_rate) / target_rate);
  }
  return clip;
}

void write_audio(const AudioClip& clip, const std::string& path) {
  write_wav(path, clip.pcm, clip.sample_rate);
}

namespace {

// Centered rank plus a jitter term, both scaled by separation so that
// separation 0 collapses every subject onto identical parameters.
double spread(int index, int count, double separation, Rng& rng) {
  const double rank = index - (count - 1) / 2.0;
  const double jitter = rng.uniform(-0.15, 0.15);
  return (rank + jitter) * separation;
}

HeartRateSeries synth_heart_rate(const SubjectId& subject, double sep_units,
                                 std::uint64_t seed) {
  Rng rng(seed);
  const int n = 4005;
  const double baseline = 72.0 + sep_units;  // one separation unit = 1 bpm
  const double phi = 0.8;
  const double sigma = 2.0;

  HeartRateSeries series;
  series.subject = subject;
  series.timestamps.resize(n);
  series.bpm.resize(n);
  double a = rng.normal(0.0, sigma / std::sqrt(1.0 - phi * phi));
  for (int i = 0; i < n; ++i) {
    series.timestamps[static_cast<std::size_t>(i)] = 60.0 * i;
    series.bpm[i] = std::clamp(baseline + a, 30.0, 240.0);
    a = phi * a + rng.normal(0.0, sigma);
  }
  return series;
}

GaitSeries synth_gait(const SubjectId& subject, double sep_units,
                      std::uint64_t seed) {
  Rng rng(seed);
  const int n = 3605;
  const double rate = 50.0;
  const double stride_hz = 1.8 + 0.04 * sep_units;
  // Amplitude spread is geometric so it stays positive and monotone in rank.
  const double accel_amp = 3.0 * std::pow(2.0, 0.06 * sep_units);
  const double gyro_amp = 1.2 * std::pow(2.0, 0.06 * sep_units);
  // Fixed per-channel phase offsets; x/y/z are a quarter cycle apart.
  const double phase[6] = {0.0, kPi / 2, kPi, kPi / 4, 3 * kPi / 4, 5 * kPi / 4};

  GaitSeries series;
  series.subject = subject;
  series.timestamps.resize(n);
  series.channels.resize(6, n);
  for (int i = 0; i < n; ++i) {
    const double t = i / rate;
    series.timestamps[static_cast<std::size_t>(i)] = t;
    for (int c = 0; c < 6; ++c) {
      const double amp = c < 3 ? accel_amp : gyro_amp;
      double v = amp * std::sin(2.0 * kPi * stride_hz * t + phase[c]);
      if (c == 2) v += 9.81;  // gravity on the vertical accelerometer axis
      series.channels(c, i) = v + rng.normal(0.0, 0.15 * amp);
    }
  }
  return series;
}

AudioClip synth_breathing(const SubjectId& subject, double sep_units,
                          std::uint64_t seed) {
  Rng rng(seed);
  const int rate = 22050;
  const double burst_s = 1.4;
  const double gap_s = 0.5;
  const int bursts = 6;
  const int burst_n = static_cast<int>(std::llround(burst_s * rate));
  const int gap_n = static_cast<int>(std::llround(gap_s * rate));
  const int total = gap_n + bursts * (burst_n + gap_n);

  // Exhalation timbre: band-limited noise whose center frequency moves
  // geometrically with the separation unit, clamped away from DC/Nyquist.
  const double center =
      std::clamp(500.0 * std::pow(2.0, 0.12 * sep_units), 120.0, 4000.0);

  AudioClip clip;
  clip.subject = subject;
  clip.sample_rate = rate;
  clip.pcm = Eigen::VectorXd::Zero(total);
  for (int b = 0; b < bursts; ++b) {
    Eigen::VectorXd noise(burst_n);
    for (int i = 0; i < burst_n; ++i) noise[i] = rng.normal();
    Eigen::VectorXd shaped = biquad_bandpass(noise, rate, center, 4.0);
    for (int i = 0; i < burst_n; ++i) {
      const double env = 0.5 - 0.5 * std::cos(2.0 * kPi * i / (burst_n - 1));
      shaped[i] *= env;
    }
    const double rms = std::sqrt(shaped.squaredNorm() / burst_n);
    if (rms > 0.0) shaped *= 0.15 / rms;
    const int start = gap_n + b * (burst_n + gap_n);
    clip.pcm.segment(start, burst_n) = shaped;
  }
  // Band-passed noise at a fixed rms can still spike past full scale;
  // keep the clip inside the 16-bit wav range.
  const double peak = clip.pcm.cwiseAbs().maxCoeff();
  if (peak > 0.95) clip.pcm *= 0.95 / peak;
  return clip;
}

AudioClip synth_noise_clip(int noise_id, std::uint64_t seed) {
  Rng rng(seed);
  const int rate = 22050;
  const int n = 3 * rate;
  Eigen::VectorXd white(n);
  for (int i = 0; i < n; ++i) white[i] = rng.normal();
  // Each bank entry occupies its own band so mixes are spectrally distinct.
  const double center = 200.0 * (noise_id + 1);
  Eigen::VectorXd shaped = biquad_bandpass(white, rate, center, 1.0);
  const double peak = shaped.cwiseAbs().maxCoeff();
  if (peak > 0.0) shaped *= 0.5 / peak;

  AudioClip clip;
  char name[16];
  std::snprintf(name, sizeof name, "noise%02d", noise_id);
  clip.subject = SubjectId{name};
  clip.sample_rate = rate;
  clip.pcm = std::move(shaped);
  return clip;
}

}  // namespace

Dataset synth_dataset(std::uint64_t seed, int n_subjects, double separation) {
  if (n_subjects < 2) throw UsageError("synth_dataset needs at least 2 subjects");
  if (separation < 0.0) throw UsageError("separation must be non-negative");

  Dataset dataset;
  dataset.subjects.reserve(static_cast<std::size_t>(n_subjects));
  for (int s = 0; s < n_subjects; ++s) {
    char name[8];
    std::snprintf(name, sizeof name, "s%02d", s + 1);
    SubjectId id{name};

    Rng param_rng(mix_seed(seed, 0x5000u + static_cast<std::uint64_t>(s)));
    const double sep_units = spread(s, n_subjects, separation, param_rng);

    SubjectRecord record;
    record.id = id;
    record.heart_rate = synth_heart_rate(
        id, sep_units, mix_seed(seed, 0x1000u + static_cast<std::uint64_t>(s)));
    record.gait = synth_gait(
        id, sep_units, mix_seed(seed, 0x2000u + static_cast<std::uint64_t>(s)));
    record.breathing = synth_breathing(
        id, sep_units, mix_seed(seed, 0x3000u + static_cast<std::uint64_t>(s)));
    dataset.subjects.push_back(std::move(record));
  }
  for (int k = 0; k < 10; ++k)
    dataset.noise_bank.push_back(
        synth_noise_clip(k, mix_seed(seed, 0x4000u + static_cast<std::uint64_t>(k))));
  return dataset;
}

void write_dataset(const Dataset& dataset, const std::string& dir) {
  fs::create_directories(dir);
  std::ofstream reg(fs::path(dir) / "subjects.csv", std::ios::binary);
  if (!reg) throw DataError("cannot write " + dir + "/subjects.csv");
  reg << "subject,heart_rate,gait,breathing\n";
  for (const auto& record : dataset.subjects) {
    const fs::path sub = fs::path(dir) / record.id.id;
    fs::create_directories(sub);
    write_heart_rate(record.heart_rate, (sub / "heart_rate.csv").string());
    write_gait(record.gait, (sub / "gait.csv").string());
    write_audio(record.breathing, (sub / "breathing.wav").string());
    reg << record.id.id << "," << record.id.id << "/heart_rate.csv,"
        << record.id.id << "/gait.csv," << record.id.id << "/breathing.wav\n";
  }

  fs::create_directories(fs::path(dir) / "noise");
  std::ofstream nreg(fs::path(dir) / "noise.csv", std::ios::binary);
  if (!nreg) throw DataError("cannot write " + dir + "/noise.csv");
  nreg << "noise_id,path\n";
  for (std::size_t k = 0; k < dataset.noise_bank.size(); ++k) {
    char rel[32];
    std::snprintf(rel, sizeof rel, "noise/noise%02zu.wav", k);
    write_audio(dataset.noise_bank[k], (fs::path(dir) / rel).string());
    nreg << k << "," << rel << "\n";
  }
}

Dataset load_dataset(const std::string& dir, int target_rate) {
  const fs::path root(dir);
  CsvTable reg = read_csv((root / "subjects.csv").string());
  require_header(reg, {"subject", "heart_rate", "gait", "breathing"},
                 (root / "subjects.csv").string());

  Dataset dataset;
  for (std::size_t i = 0; i < reg.rows.size(); ++i) {
    const auto& row = reg.rows[i];
    if (row.size() != 4)
      throw DataError(dir + "/subjects.csv row " + std::to_string(i + 2) +
                      ": expected 4 fields");
    SubjectId id{row[0]};
    SubjectRecord record;
    record.id = id;
    record.heart_rate = load_heart_rate((root / row[1]).string(), id);
    record.gait = load_gait((root / row[2]).string(), id);
    record.breathing = load_audio((root / row[3]).string(), id, target_rate);
    dataset.subjects.push_back(std::move(record));
  }

  const fs::path noise_csv = root / "noise.csv";
  if (fs::exists(noise_csv)) {
    CsvTable nreg = read_csv(noise_csv.string());
    require_header(nreg, {"noise_id", "path"}, noise_csv.string());
    for (std::size_t i = 0; i < nreg.rows.size(); ++i) {
      const auto& row = nreg.rows[i];
      if (row.size() != 2)
        throw DataError(dir + "/noise.csv row " + std::to_string(i + 2) +
                        ": expected 2 fields");
      dataset.noise_bank.push_back(
          load_audio((root / row[1]).string(), SubjectId{"noise" + row[0]},
                     target_rate));
    }
  }
  return dataset;
}

}  // namespace wearauth
