#pragma once

#include <Eigen/Dense>
#include <vector>

namespace wearauth {

// Sigmoid map from decision value to P(valid): 1/(1 + exp(A*f + B)).
// A < 0 always, so confidence is strictly increasing in the decision value.
struct Calibration {
  double a = -1.0;
  double b = 0.0;

  double confidence(double decision_value) const;
};

// Regularized maximum-likelihood fit (Newton with backtracking) using
// smoothed targets (N+1)/(N+2) per class; labels use 0 = valid. Degenerate
// fits (identical decision values, non-negative fitted slope, or a failed
// line search) fall back to A=-1, B=0.
Calibration calibrate(const std::vector<double>& decision_values,
                      const std::vector<int>& labels);

// Fixed mapping for one-class models, which have no imposter data to fit.
Calibration unary_calibration();

}  // namespace wearauth
