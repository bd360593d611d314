#include "wearauth/features.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "wearauth/errors.hpp"

namespace wearauth {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Inclusive linear-interpolation quantile of sorted data: index (n-1)*p,
// fractional part interpolated between neighbors.
double quantile_sorted(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  const double h = (n - 1) * p;
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= n) return sorted[n - 1];
  return sorted[lo] + (h - lo) * (sorted[lo + 1] - sorted[lo]);
}

double ratio_or_zero(double num, double den) {
  return den != 0.0 ? num / den : 0.0;
}

}  // namespace

const std::array<std::string, kStatFeatureCount>& stat_feature_names() {
  static const std::array<std::string, kStatFeatureCount> names = {
      "mu",     "Mdn",  "sigma",  "sigma2", "cov", "ran", "coran",
      "p25",    "p75",  "max",    "iqr",    "coi", "mad_mu", "mad_Mdn",
      "E",      "P",    "rms",    "rss",    "snr", "gamma",  "kappa"};
  return names;
}

Eigen::VectorXd stat_features(const Eigen::VectorXd& channel) {
  const Eigen::Index n = channel.size();
  if (n < 2) throw DataError("stat_features needs at least 2 samples");

  std::vector<double> sorted(channel.data(), channel.data() + n);
  std::sort(sorted.begin(), sorted.end());

  const double mu = channel.mean();
  const double mdn = quantile_sorted(sorted, 0.5);
  const double p25 = quantile_sorted(sorted, 0.25);
  const double p75 = quantile_sorted(sorted, 0.75);
  const double mn = sorted.front();
  const double mx = sorted.back();

  double m2 = 0, m3 = 0, m4 = 0, mad_mu = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = channel[i] - mu;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
    mad_mu += std::abs(d);
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  mad_mu /= n;
  const double sigma = std::sqrt(m2);

  std::vector<double> dev(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    dev[static_cast<std::size_t>(i)] = std::abs(channel[i] - mdn);
  std::sort(dev.begin(), dev.end());
  const double mad_mdn = quantile_sorted(dev, 0.5);

  const double energy = channel.squaredNorm();
  const double power = energy / n;

  Eigen::VectorXd out(kStatFeatureCount);
  out[0] = mu;
  out[1] = mdn;
  out[2] = sigma;
  out[3] = m2;
  out[4] = ratio_or_zero(sigma, mu);
  out[5] = mx - mn;
  out[6] = ratio_or_zero(mx - mn, mx + mn);
  out[7] = p25;
  out[8] = p75;
  out[9] = mx;
  out[10] = p75 - p25;
  out[11] = ratio_or_zero(p75 - p25, p75 + p25);
  out[12] = mad_mu;
  out[13] = mad_mdn;
  out[14] = energy;
  out[15] = power;
  out[16] = std::sqrt(power);
  out[17] = std::sqrt(energy);
  out[18] = ratio_or_zero(mu, sigma);
  out[19] = ratio_or_zero(m3, m2 * sigma);
  out[20] = m2 != 0.0 ? m4 / (m2 * m2) - 3.0 : 0.0;
  return out;
}

namespace {

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Iterative radix-2 FFT, in place. Size must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * kPi / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

}  // namespace

Eigen::MatrixXd dct_matrix(int n_coeffs, int n_mels) {
  Eigen::MatrixXd m(n_coeffs, n_mels);
  for (int k = 0; k < n_coeffs; ++k) {
    const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / n_mels);
    for (int j = 0; j < n_mels; ++j)
      m(k, j) = scale * std::cos(kPi * (j + 0.5) * k / n_mels);
  }
  return m;
}

Eigen::MatrixXd mel_filterbank(int n_mels, int fft_size, double sample_rate) {
  const int n_bins = fft_size / 2 + 1;
  const double mel_max = hz_to_mel(sample_rate / 2.0);
  std::vector<double> edges(static_cast<std::size_t>(n_mels) + 2);
  for (int i = 0; i < n_mels + 2; ++i)
    edges[static_cast<std::size_t>(i)] = mel_to_hz(mel_max * i / (n_mels + 1));

  Eigen::MatrixXd fb = Eigen::MatrixXd::Zero(n_mels, n_bins);
  for (int j = 0; j < n_mels; ++j) {
    const double lo = edges[static_cast<std::size_t>(j)];
    const double c = edges[static_cast<std::size_t>(j) + 1];
    const double hi = edges[static_cast<std::size_t>(j) + 2];
    for (int k = 0; k < n_bins; ++k) {
      const double f = k * sample_rate / fft_size;
      double w = 0.0;
      if (f > lo && f < hi)
        w = f <= c ? (f - lo) / (c - lo) : (hi - f) / (hi - c);
      fb(j, k) = w;
    }
  }
  return fb;
}

Eigen::VectorXd mfcc(const BreathingEvent& event, const MfccParams& params) {
  if (params.n_coeffs > params.n_mels)
    throw UsageError("n_coeffs cannot exceed n_mels");
  if (event.sample_rate != params.sample_rate)
    throw DataError("event sample rate " + std::to_string(event.sample_rate) +
                    " does not match analysis rate " +
                    std::to_string(params.sample_rate));

  Eigen::VectorXd x = event.pcm;
  if (x.size() < params.frame) {
    Eigen::VectorXd padded = Eigen::VectorXd::Zero(params.frame);
    padded.head(x.size()) = x;
    x = std::move(padded);
  }
  // Pre-emphasis, first sample kept as is.
  for (Eigen::Index i = x.size() - 1; i > 0; --i)
    x[i] -= params.preemphasis * x[i - 1];

  const int fft_size = next_pow2(params.frame);
  const int n_bins = fft_size / 2 + 1;
  const Eigen::Index n_frames = (x.size() - params.frame) / params.hop + 1;

  Eigen::VectorXd window(params.frame);
  for (int i = 0; i < params.frame; ++i)
    window[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * i / params.frame);

  const Eigen::MatrixXd fb =
      mel_filterbank(params.n_mels, fft_size, params.sample_rate);
  const Eigen::MatrixXd dct = dct_matrix(params.n_coeffs, params.n_mels);

  Eigen::VectorXd acc = Eigen::VectorXd::Zero(params.n_coeffs);
  std::vector<std::complex<double>> buf(static_cast<std::size_t>(fft_size));
  Eigen::VectorXd power(n_bins);
  for (Eigen::Index f = 0; f < n_frames; ++f) {
    const Eigen::Index start = f * params.hop;
    for (int i = 0; i < fft_size; ++i)
      buf[static_cast<std::size_t>(i)] =
          i < params.frame ? window[i] * x[start + i] : 0.0;
    fft_radix2(buf);
    for (int k = 0; k < n_bins; ++k)
      power[k] = std::norm(buf[static_cast<std::size_t>(k)]);
    Eigen::VectorXd mel = fb * power;
    for (int j = 0; j < params.n_mels; ++j)
      mel[j] = std::log(std::max(mel[j], params.log_floor));
    acc += dct * mel;
  }
  return acc / static_cast<double>(n_frames);
}

Eigen::VectorXd hr_stat_features(const SampleWindow& window) {
  if (window.kind != WindowKind::HeartRate || window.channels.rows() != 1)
    throw DataError("expected a single-channel heart rate window");
  return stat_features(window.channels.row(0).transpose());
}

Eigen::VectorXd gait_stat_features(const SampleWindow& window) {
  if (window.kind != WindowKind::Gait || window.channels.rows() != 6)
    throw DataError("expected a six-channel gait window");
  Eigen::VectorXd out(6 * kStatFeatureCount);
  for (int c = 0; c < 6; ++c)
    out.segment(c * kStatFeatureCount, kStatFeatureCount) =
        stat_features(window.channels.row(c).transpose());
  return out;
}

std::vector<std::string> feature_names(ModelKind kind) {
  static const char* gait_prefix[6] = {"X-acc ", "Y-acc ", "Z-acc ",
                                       "X-gy ",  "Y-gy ",  "Z-gy "};
  std::vector<std::string> names;
  for (const auto& stat : stat_feature_names()) names.push_back("HR " + stat);
  if (kind == ModelKind::HRG) {
    for (const char* prefix : gait_prefix)
      for (const auto& stat : stat_feature_names())
        names.push_back(prefix + stat);
  } else if (kind == ModelKind::HRB) {
    for (int i = 1; i <= kMfccCount; ++i)
      names.push_back("MFCC" + std::to_string(i));
  }
  return names;
}

FeatureVector fuse(ModelKind kind, const BiometricFeatures& parts, int group) {
  if (!parts.hr) throw DataError("fuse: heart rate part missing");
  if (parts.hr->values.size() != kStatFeatureCount)
    throw DataError("fuse: heart rate part has wrong length");

  FeatureVector out;
  out.subject = parts.hr->subject;
  out.group = group;
  out.names = feature_names(kind);

  const auto check_subject = [&](const ChannelFeatures& part) {
    if (!(part.subject == out.subject))
      throw DataError("fuse: parts belong to different subjects (" +
                      out.subject.id + " vs " + part.subject.id + ")");
  };

  if (kind == ModelKind::HR) {
    out.values = parts.hr->values;
  } else if (kind == ModelKind::HRG) {
    if (!parts.gait) throw DataError("fuse: gait part missing");
    check_subject(*parts.gait);
    if (parts.gait->values.size() != 6 * kStatFeatureCount)
      throw DataError("fuse: gait part has wrong length");
    out.values.resize(7 * kStatFeatureCount);
    out.values << parts.hr->values, parts.gait->values;
  } else {
    if (!parts.breathing) throw DataError("fuse: breathing part missing");
    check_subject(*parts.breathing);
    if (parts.breathing->values.size() != kMfccCount)
      throw DataError("fuse: breathing part has wrong length");
    out.values.resize(kStatFeatureCount + kMfccCount);
    out.values << parts.hr->values, parts.breathing->values;
  }
  return out;
}

}  // namespace wearauth
