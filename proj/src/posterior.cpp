// SPDX-License-Identifier: Apache-2.0
#include "pspec/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <vector>

namespace pspec {

namespace {

double median_of(std::vector<double>& buf) {
  const std::size_t m = buf.size();
  const std::size_t half = m / 2;
  std::nth_element(buf.begin(), buf.begin() + half, buf.end());
  double hi = buf[half];
  if (m % 2 == 1) return hi;
  const double lo = *std::max_element(buf.begin(), buf.begin() + half);
  return 0.5 * (lo + hi);
}

}  // namespace

Eigen::VectorXd pointwise_median(const Eigen::MatrixXd& samples) {
  if (samples.rows() < 1)
    throw std::invalid_argument("pointwise_median: no draws");
  const Eigen::Index nu = samples.cols();
  Eigen::VectorXd med(nu);
  std::vector<double> buf(samples.rows());
  for (Eigen::Index l = 0; l < nu; ++l) {
    Eigen::VectorXd::Map(buf.data(), samples.rows()) = samples.col(l);
    med[l] = median_of(buf);
  }
  return med;
}

PsdEstimate uniform_band(const Eigen::MatrixXd& psd_samples,
                         const Eigen::VectorXd& frequencies, double alpha) {
  const Eigen::Index M = psd_samples.rows();
  const Eigen::Index nu = psd_samples.cols();
  if (M < 2) throw std::invalid_argument("uniform_band: too few draws");

  PsdEstimate est;
  est.alpha = alpha;
  est.frequencies = frequencies;
  est.median = pointwise_median(psd_samples);

  const Eigen::MatrixXd dev =
      (psd_samples.rowwise() - est.median.transpose()).cwiseAbs();
  est.mad = pointwise_median(dev);

  if ((est.mad.array() <= 0.0).any()) {
    double smallest = std::numeric_limits<double>::infinity();
    for (Eigen::Index l = 0; l < nu; ++l)
      if (est.mad[l] > 0.0) smallest = std::min(smallest, est.mad[l]);
    if (!std::isfinite(smallest))
      throw std::runtime_error("uniform_band: all deviations degenerate");
    std::cerr << "uniform_band: zero mad at some frequency, substituting "
              << smallest << "\n";
    est.mad = est.mad.cwiseMax(smallest);
  }

  // Per-draw maximum standardized deviation; zeta is its type-1 empirical
  // (1-alpha)-quantile.
  std::vector<double> max_stat(M);
  for (Eigen::Index i = 0; i < M; ++i)
    max_stat[i] = (dev.row(i).transpose().array() / est.mad.array()).maxCoeff();
  std::sort(max_stat.begin(), max_stat.end());
  const double pos = (1.0 - alpha) * static_cast<double>(M);
  std::size_t idx =
      (pos <= 0.0) ? 0 : static_cast<std::size_t>(std::ceil(pos)) - 1;
  idx = std::min(idx, static_cast<std::size_t>(M - 1));
  est.zeta = max_stat[idx];

  est.lower = est.median - est.zeta * est.mad;
  est.upper = est.median + est.zeta * est.mad;
  return est;
}

PsdEstimate uniform_band(const PosteriorSamples& samples, double alpha) {
  return uniform_band(samples.psd_samples, samples.frequencies, alpha);
}

PsdEstimate rescale_to_original(const PsdEstimate& estimate, double scale_factor) {
  if (scale_factor <= 0.0)
    throw std::invalid_argument("rescale_to_original: nonpositive scale");
  PsdEstimate out = estimate;
  out.median *= scale_factor;
  out.mad *= scale_factor;
  out.lower *= scale_factor;
  out.upper *= scale_factor;
  return out;
}

namespace {

// Piecewise-linear interpolation of a curve given at the Fourier
// frequencies, flat beyond the first/last frequency.
double interp_curve(double lambda, const Eigen::VectorXd& freqs,
                    const Eigen::VectorXd& values) {
  const Eigen::Index nu = freqs.size();
  if (lambda <= freqs[0]) return values[0];
  if (lambda >= freqs[nu - 1]) return values[nu - 1];
  const double* begin = freqs.data();
  const Eigen::Index j = std::upper_bound(begin, begin + nu, lambda) - begin;
  const double t = (lambda - freqs[j - 1]) / (freqs[j] - freqs[j - 1]);
  return values[j - 1] + t * (values[j] - values[j - 1]);
}

}  // namespace

double iae(const PsdEstimate& estimate,
           const std::function<double(double)>& true_psd) {
  constexpr int grid_size = 512;
  const double h = M_PI / (grid_size - 1);
  double sum = 0.0;
  for (int i = 0; i < grid_size; ++i) {
    const double lambda = h * i;
    const double diff = std::abs(
        interp_curve(lambda, estimate.frequencies, estimate.median) -
        true_psd(lambda));
    sum += (i == 0 || i == grid_size - 1) ? 0.5 * diff : diff;
  }
  return sum * h;
}

std::pair<bool, double> coverage_flags(
    const PsdEstimate& estimate, const std::function<double(double)>& true_psd) {
  const Eigen::Index nu = estimate.frequencies.size();
  Eigen::Index covered = 0;
  for (Eigen::Index l = 0; l < nu; ++l) {
    const double f = true_psd(estimate.frequencies[l]);
    if (estimate.lower[l] <= f && f <= estimate.upper[l]) ++covered;
  }
  return {covered == nu,
          static_cast<double>(covered) / static_cast<double>(nu)};
}

}  // namespace pspec
