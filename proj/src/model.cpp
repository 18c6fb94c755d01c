// SPDX-License-Identifier: Apache-2.0
#include "pspec/model.hpp"

#include <cmath>
#include <stdexcept>

namespace pspec {

Eigen::VectorXd v_to_w(const Eigen::VectorXd& v) {
  const Eigen::Index m = v.size();
  const double shift = std::max(0.0, v.maxCoeff());
  Eigen::VectorXd e = (v.array() - shift).exp();
  const double denom = std::exp(-shift) + e.sum();
  Eigen::VectorXd w(m + 1);
  w.head(m) = e / denom;
  w[m] = std::exp(-shift) / denom;
  return w;
}

Eigen::VectorXd w_to_v(const Eigen::VectorXd& w) {
  if ((w.array() <= 0.0).any())
    throw std::invalid_argument("w_to_v: weights must be positive");
  const Eigen::Index K = w.size();
  return (w.head(K - 1).array() / w[K - 1]).log();
}

double mixture_density(double omega, const Eigen::VectorXd& w, const KnotVector& kv) {
  double s = 0.0;
  for (int k = 0; k < kv.K; ++k) s += w[k] * bspline_density(omega, k, kv);
  return s;
}

double psd_at(double lambda, const SpectralModel& model) {
  const Eigen::VectorXd w = v_to_w(model.v);
  return model.tau * mixture_density(lambda / M_PI, w, model.kv);
}

double whittle_log_likelihood(const Eigen::VectorXd& ordinates,
                              const Eigen::VectorXd& psd) {
  if ((psd.array() <= 0.0).any())
    throw std::invalid_argument("whittle_log_likelihood: nonpositive psd value");
  return -(psd.array().log() + ordinates.array() / psd.array()).sum();
}

double whittle_log_likelihood(const Periodogram& pgram, const SpectralModel& model) {
  const Eigen::VectorXd w = v_to_w(model.v);
  const Eigen::VectorXd psd = model.tau * mixture_at(model.bm, w);
  return whittle_log_likelihood(pgram.ordinates, psd);
}

double log_gamma_density(double x, double shape, double rate) {
  if (x <= 0.0) throw std::invalid_argument("log_gamma_density: x must be positive");
  return shape * std::log(rate) - std::lgamma(shape) + (shape - 1.0) * std::log(x) -
         rate * x;
}

double log_inverse_gamma_density(double x, double shape, double scale) {
  if (x <= 0.0)
    throw std::invalid_argument("log_inverse_gamma_density: x must be positive");
  return shape * std::log(scale) - std::lgamma(shape) -
         (shape + 1.0) * std::log(x) - scale / x;
}

double log_prior(const Eigen::VectorXd& v, double phi, double delta, double tau,
                 const PenaltyMatrix& P, const PriorConfig& cfg) {
  if (phi <= 0.0 || delta <= 0.0 || tau <= 0.0)
    throw std::invalid_argument("log_prior: phi, delta, tau must be positive");
  const Eigen::Index m = v.size();
  const Eigen::LLT<Eigen::MatrixXd> llt(P.entries);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("log_prior: penalty matrix not positive definite");
  const double logdet_P =
      2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  const double quad = v.dot(P.entries * v);
  const double log_v = -0.5 * m * std::log(2.0 * M_PI) +
                       0.5 * m * std::log(phi) + 0.5 * logdet_P -
                       0.5 * phi * quad;
  return log_v + log_gamma_density(phi, cfg.alpha_phi, delta * cfg.beta_phi) +
         log_gamma_density(delta, cfg.alpha_delta, cfg.beta_delta) +
         log_inverse_gamma_density(tau, cfg.alpha_tau, cfg.beta_tau);
}

}  // namespace pspec
