// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "pspec/penalty.hpp"
#include "pspec/signal.hpp"
#include "pspec/splines.hpp"

namespace pspec {

/// Hyperparameters of the prior hierarchy on (v, phi, delta, tau).
/// Gamma(a, b) is parametrized by shape/rate (mean a/b).
struct PriorConfig {
  double alpha_phi = 1.0;
  double beta_phi = 1.0;
  double alpha_delta = 1e-4;
  double beta_delta = 1e-4;
  double alpha_tau = 0.001;
  double beta_tau = 0.001;
  int diff_order = 1;     // penalty order d
  double epsilon = 1e-6;  // penalty ridge
};

/// psd model f(pi*omega) = tau * s_r(omega) with s_r the weight mixture
/// of B-spline densities.
struct SpectralModel {
  double tau = 1.0;
  Eigen::VectorXd v;  // length K-1
  KnotVector kv;
  BasisMatrix bm;
};

/// Log-ratio coordinates to simplex weights,
/// w_k = e^{v_k} / (1 + sum_j e^{v_j}), w_K the remainder.
/// Overflow-safe for arbitrarily large |v|.
Eigen::VectorXd v_to_w(const Eigen::VectorXd& v);

/// Inverse map v_k = log(w_k / w_K); requires all weights positive.
Eigen::VectorXd w_to_v(const Eigen::VectorXd& w);

/// s_r(omega) = sum_k w_k b_k(omega).
double mixture_density(double omega, const Eigen::VectorXd& w, const KnotVector& kv);

/// Mixture values at all grid points of a precomputed basis matrix.
inline Eigen::VectorXd mixture_at(const BasisMatrix& bm, const Eigen::VectorXd& w) {
  return bm.values * w;
}

/// f(lambda) = tau * s_r(lambda / pi).
double psd_at(double lambda, const SpectralModel& model);

/// -sum_l [ log f(lambda_l) + I_n(lambda_l) / f(lambda_l) ]; the additive
/// constant of the Whittle likelihood is fixed at zero.
double whittle_log_likelihood(const Eigen::VectorXd& ordinates,
                              const Eigen::VectorXd& psd);
double whittle_log_likelihood(const Periodogram& pgram, const SpectralModel& model);

double log_gamma_density(double x, double shape, double rate);
double log_inverse_gamma_density(double x, double shape, double scale);

/// Joint log prior: N(0, (phi P)^{-1}) on v, Gamma(alpha_phi, delta*beta_phi)
/// on phi, Gamma(alpha_delta, beta_delta) on delta, IG(alpha_tau, beta_tau)
/// on tau.
double log_prior(const Eigen::VectorXd& v, double phi, double delta, double tau,
                 const PenaltyMatrix& P, const PriorConfig& cfg);

}  // namespace pspec
