// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <functional>

#include "pspec/sampler.hpp"

namespace pspec {

/// Pointwise posterior median with a uniform credible band
/// median +- zeta * mad.
struct PsdEstimate {
  Eigen::VectorXd frequencies;
  Eigen::VectorXd median;
  Eigen::VectorXd mad;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  double zeta = 0.0;
  double alpha = 0.1;
};

/// Per-frequency sample median over the draws (rows).
Eigen::VectorXd pointwise_median(const Eigen::MatrixXd& samples);

/// Band construction: mad is the raw median absolute deviation about the
/// pointwise median; zeta is the empirical (1-alpha)-quantile (inverse
/// ECDF) of the per-draw maximum standardized deviations.
PsdEstimate uniform_band(const Eigen::MatrixXd& psd_samples,
                         const Eigen::VectorXd& frequencies, double alpha);
PsdEstimate uniform_band(const PosteriorSamples& samples, double alpha = 0.1);

/// Multiply all curves by original_sd^2 to recover original units.
PsdEstimate rescale_to_original(const PsdEstimate& estimate, double scale_factor);

/// Integrated absolute error between the median curve and the true psd,
/// trapezoidal on a uniform 512-point grid over [0, pi]; the median is
/// linearly interpolated between Fourier frequencies and extended flat
/// to the endpoints.
double iae(const PsdEstimate& estimate,
           const std::function<double(double)>& true_psd);

/// (band contains the true psd at every Fourier frequency,
///  fraction of Fourier frequencies covered).
std::pair<bool, double> coverage_flags(
    const PsdEstimate& estimate, const std::function<double(double)>& true_psd);

}  // namespace pspec
