#include "wearauth/resample.hpp"

#include <algorithm>
#include <cmath>

#include "wearauth/errors.hpp"

namespace wearauth {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kSincHalfWidth = 16;  // taps per side at unit cutoff

double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  return std::sin(kPi * x) / (kPi * x);
}

// Blackman window over [-half, half], zero outside.
double blackman(double x, double half) {
  if (std::abs(x) > half) return 0.0;
  double t = (x / half + 1.0) / 2.0;  // map to [0, 1]
  return 0.42 - 0.5 * std::cos(2.0 * kPi * t) + 0.08 * std::cos(4.0 * kPi * t);
}

}  // namespace

Eigen::VectorXd resample(const Eigen::VectorXd& x, double factor) {
  if (!(factor > 0.0)) throw DataError("resample factor must be positive");
  const Eigen::Index n = x.size();
  if (n == 0) return Eigen::VectorXd(0);
  if (factor == 1.0) return x;

  const Eigen::Index out_len =
      std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::llround(n / factor)));
  // Decimation needs a lower cutoff and a proportionally wider kernel.
  const double cutoff = factor > 1.0 ? 1.0 / factor : 1.0;
  const double half = kSincHalfWidth / cutoff;

  Eigen::VectorXd out(out_len);
  for (Eigen::Index i = 0; i < out_len; ++i) {
    const double pos = i * factor;
    const Eigen::Index lo =
        std::max<Eigen::Index>(0, static_cast<Eigen::Index>(std::ceil(pos - half)));
    const Eigen::Index hi =
        std::min<Eigen::Index>(n - 1, static_cast<Eigen::Index>(std::floor(pos + half)));
    double acc = 0.0;
    double wsum = 0.0;
    for (Eigen::Index j = lo; j <= hi; ++j) {
      const double d = j - pos;
      const double w = sinc(d * cutoff) * blackman(d, half);
      acc += w * x[j];
      wsum += w;
    }
    out[i] = wsum != 0.0 ? acc / wsum : 0.0;
  }
  return out;
}

Eigen::VectorXd stretch_ola(const Eigen::VectorXd& x, Eigen::Index target_len) {
  if (target_len <= 0) return Eigen::VectorXd(0);
  const Eigen::Index n = x.size();
  if (n == 0) return Eigen::VectorXd::Zero(target_len);
  if (target_len == n) return x;

  const Eigen::Index frame = std::min<Eigen::Index>(1024, n);
  const Eigen::Index hop_out = std::max<Eigen::Index>(1, frame / 4);
  const Eigen::Index n_frames =
      std::max<Eigen::Index>(1, (target_len - frame + hop_out - 1) / hop_out + 1);
  // Analysis hop chosen so the last frame starts at the end of the input.
  const double hop_in =
      n_frames > 1 ? static_cast<double>(n - frame) / (n_frames - 1) : 0.0;

  Eigen::VectorXd window(frame);
  for (Eigen::Index i = 0; i < frame; ++i)
    window[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * i / frame);

  Eigen::VectorXd out = Eigen::VectorXd::Zero(target_len);
  Eigen::VectorXd wsum = Eigen::VectorXd::Zero(target_len);
  for (Eigen::Index f = 0; f < n_frames; ++f) {
    const Eigen::Index src = static_cast<Eigen::Index>(std::llround(f * hop_in));
    const Eigen::Index dst = f * hop_out;
    for (Eigen::Index i = 0; i < frame; ++i) {
      const Eigen::Index o = dst + i;
      if (o >= target_len) break;
      const Eigen::Index s = std::min(src + i, n - 1);
      out[o] += window[i] * x[s];
      wsum[o] += window[i];
    }
  }
  for (Eigen::Index i = 0; i < target_len; ++i)
    if (wsum[i] > 1e-12) out[i] /= wsum[i];
  return out;
}

Eigen::VectorXd biquad_bandpass(const Eigen::VectorXd& x, double sample_rate,
                                double center_hz, double q) {
  const double w0 = 2.0 * kPi * center_hz / sample_rate;
  const double alpha = std::sin(w0) / (2.0 * q);
  const double cw = std::cos(w0);
  // Bandpass, peak gain 0 dB.
  const double b0 = alpha, b1 = 0.0, b2 = -alpha;
  const double a0 = 1.0 + alpha, a1 = -2.0 * cw, a2 = 1.0 - alpha;

  Eigen::VectorXd y(x.size());
  double x1 = 0, x2 = 0, y1 = 0, y2 = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double v =
        (b0 * x[i] + b1 * x1 + b2 * x2 - a1 * y1 - a2 * y2) / a0;
    x2 = x1;
    x1 = x[i];
    y2 = y1;
    y1 = v;
    y[i] = v;
  }
  return y;
}

}  // namespace wearauth
