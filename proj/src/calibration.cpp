#include "wearauth/calibration.hpp"

#include <cmath>

#include "wearauth/errors.hpp"

namespace wearauth {

double Calibration::confidence(double decision_value) const {
  const double t = a * decision_value + b;
  // Evaluate the stable branch to avoid overflow either way.
  if (t >= 0.0) {
    const double e = std::exp(-t);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(t));
}

namespace {

double negative_log_likelihood(const std::vector<double>& f,
                               const std::vector<double>& t, double a, double b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double z = a * f[i] + b;
    // log(1+exp(z)) computed on the stable side.
    const double softplus = z >= 0.0 ? z + std::log1p(std::exp(-z))
                                     : std::log1p(std::exp(z));
    sum += t[i] * softplus + (1.0 - t[i]) * (softplus - z);
  }
  return sum;
}

}  // namespace

Calibration calibrate(const std::vector<double>& decision_values,
                      const std::vector<int>& labels) {
  if (decision_values.size() != labels.size() || decision_values.empty())
    throw UsageError("calibrate: decision values and labels must align");

  std::size_t n_pos = 0, n_neg = 0;
  for (int label : labels) (label == 0 ? n_pos : n_neg)++;
  if (n_pos == 0 || n_neg == 0)
    throw DataError("calibrate needs both classes among the fit values");

  const Calibration fallback;
  const double lo = *std::min_element(decision_values.begin(), decision_values.end());
  const double hi = *std::max_element(decision_values.begin(), decision_values.end());
  if (lo == hi) return fallback;

  // Smoothed targets: t = P(valid); valid rows pull toward 1.
  const double t_pos = (n_pos + 1.0) / (n_pos + 2.0);
  const double t_neg = 1.0 / (n_neg + 2.0);
  std::vector<double> target(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    target[i] = labels[i] == 0 ? t_pos : t_neg;

  double a = 0.0;
  double b = std::log((n_neg + 1.0) / (n_pos + 1.0));
  double value = negative_log_likelihood(decision_values, target, a, b);
  constexpr double kLambda = 1e-12;
  constexpr double kMinStep = 1e-10;

  for (int iter = 0; iter < 100; ++iter) {
    double h11 = kLambda, h22 = kLambda, h21 = 0.0, g1 = 0.0, g2 = 0.0;
    for (std::size_t i = 0; i < decision_values.size(); ++i) {
      const double z = a * decision_values[i] + b;
      double p, q;  // p = P(valid), q = 1-p, stable on both sides
      if (z >= 0.0) {
        const double e = std::exp(-z);
        p = e / (1.0 + e);
        q = 1.0 / (1.0 + e);
      } else {
        const double e = std::exp(z);
        p = 1.0 / (1.0 + e);
        q = e / (1.0 + e);
      }
      const double w = p * q;
      h11 += decision_values[i] * decision_values[i] * w;
      h22 += w;
      h21 += decision_values[i] * w;
      const double d = target[i] - p;
      g1 += decision_values[i] * d;
      g2 += d;
    }
    if (std::abs(g1) < 1e-5 && std::abs(g2) < 1e-5) break;

    const double det = h11 * h22 - h21 * h21;
    const double da = -(h22 * g1 - h21 * g2) / det;
    const double db = -(-h21 * g1 + h11 * g2) / det;
    const double slope = g1 * da + g2 * db;

    double step = 1.0;
    bool moved = false;
    while (step >= kMinStep) {
      const double na = a + step * da;
      const double nb = b + step * db;
      const double nv = negative_log_likelihood(decision_values, target, na, nb);
      if (nv < value + 1e-4 * step * slope) {
        a = na;
        b = nb;
        value = nv;
        moved = true;
        break;
      }
      step /= 2.0;
    }
    if (!moved) return fallback;
  }

  if (!(a < 0.0) || !std::isfinite(a) || !std::isfinite(b)) return fallback;
  Calibration cal;
  cal.a = a;
  cal.b = b;
  return cal;
}

Calibration unary_calibration() {
  Calibration cal;
  cal.a = -2.0;
  cal.b = 0.0;
  return cal;
}

}  // namespace wearauth
