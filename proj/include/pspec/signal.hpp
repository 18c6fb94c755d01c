// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

namespace pspec {

/// Raw univariate series; NaN entries mark missing observations.
struct TimeSeries {
  Eigen::VectorXd values;
  Eigen::Index size() const { return values.size(); }
};

/// Mean-centered, unit-variance series plus the factors needed to undo it.
struct PreprocessedSeries {
  Eigen::VectorXd values;
  double original_mean = 0.0;
  double original_sd = 1.0;
  bool sqrt_transformed = false;
};

/// Periodogram ordinates at the positive Fourier frequencies
/// lambda_l = 2*pi*l/n for l = 1..nu, nu = floor((n-1)/2).
/// The l = 0 ordinate is excluded (the series is centered) and even-n
/// input never reaches the Nyquist index l = n/2.
struct Periodogram {
  Eigen::VectorXd frequencies;  // strictly increasing, in (0, pi]
  Eigen::VectorXd ordinates;    // I_n(lambda_l) >= 0
  Eigen::Index size() const { return ordinates.size(); }
};

/// Impute missing values by the mean (after the optional square-root
/// transform), then center and scale to unit sample standard deviation.
/// Throws std::invalid_argument on short/all-missing input, a negative
/// value under apply_sqrt, or a constant (zero-variance) series.
PreprocessedSeries preprocess(const TimeSeries& raw, bool apply_sqrt,
                              Eigen::Index min_length = 8);

/// I_n(lambda_l) = |sum_t Y_t exp(-i t lambda_l)|^2 / (2 pi n), l = 1..nu.
Periodogram periodogram(const Eigen::VectorXd& values);
Periodogram periodogram(const PreprocessedSeries& series);

}  // namespace pspec
