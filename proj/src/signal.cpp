// SPDX-License-Identifier: Apache-2.0
#include "pspec/signal.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace pspec {

PreprocessedSeries preprocess(const TimeSeries& raw, bool apply_sqrt,
                              Eigen::Index min_length) {
  const Eigen::Index n = raw.size();
  if (n < min_length)
    throw std::invalid_argument("preprocess: series shorter than minimum length");

  Eigen::VectorXd x = raw.values;
  Eigen::Index n_obs = 0;
  for (Eigen::Index t = 0; t < n; ++t) {
    if (std::isnan(x[t])) continue;
    if (apply_sqrt) {
      if (x[t] < 0.0)
        throw std::invalid_argument("preprocess: negative value under sqrt transform");
      x[t] = std::sqrt(x[t]);
    }
    ++n_obs;
  }
  if (n_obs < 2)
    throw std::invalid_argument("preprocess: fewer than 2 non-missing values");

  double obs_sum = 0.0;
  for (Eigen::Index t = 0; t < n; ++t)
    if (!std::isnan(x[t])) obs_sum += x[t];
  const double obs_mean = obs_sum / static_cast<double>(n_obs);
  for (Eigen::Index t = 0; t < n; ++t)
    if (std::isnan(x[t])) x[t] = obs_mean;

  PreprocessedSeries out;
  out.sqrt_transformed = apply_sqrt;
  out.original_mean = x.mean();
  x.array() -= out.original_mean;
  const double var = x.squaredNorm() / static_cast<double>(n - 1);
  if (var <= 0.0)
    throw std::invalid_argument("preprocess: zero variance (constant series)");
  out.original_sd = std::sqrt(var);
  out.values = x / out.original_sd;
  return out;
}

Periodogram periodogram(const Eigen::VectorXd& values) {
  const Eigen::Index n = values.size();
  const Eigen::Index nu = (n - 1) / 2;
  Periodogram p;
  p.frequencies.resize(nu);
  p.ordinates.resize(nu);
  const double two_pi = 2.0 * M_PI;
  for (Eigen::Index l = 1; l <= nu; ++l) {
    const double lambda = two_pi * static_cast<double>(l) / static_cast<double>(n);
    const std::complex<double> e = std::polar(1.0, -lambda);
    // Horner evaluation of sum_t Y_t e^{-i t lambda}
    std::complex<double> s(0.0, 0.0);
    for (Eigen::Index t = n; t >= 1; --t) s = (s + values[t - 1]) * e;
    p.frequencies[l - 1] = lambda;
    p.ordinates[l - 1] = std::norm(s) / (two_pi * static_cast<double>(n));
  }
  return p;
}

Periodogram periodogram(const PreprocessedSeries& series) {
  return periodogram(series.values);
}

}  // namespace pspec
