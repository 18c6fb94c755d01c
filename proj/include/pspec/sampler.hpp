// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <random>

#include "pspec/model.hpp"

namespace pspec {

using Rng = std::mt19937_64;

struct ChainConfig {
  int iterations = 20000;
  int burnin = 1250;
  int thin = 10;
  int pilot_iterations = 5000;
  int pilot_burnin = 1250;
  int pilot_thin = 10;
  std::uint64_t seed = 0;
  double target_accept_low = 0.3;
  double target_accept_high = 0.5;
  int adapt_window = 50;  // sweeps per adaptation window
};

struct SamplerState {
  Eigen::VectorXd v;     // length K-1
  Eigen::VectorXd beta;  // reparametrized coordinates, v = S_half * beta + v_bar
  double phi = 1.0;
  double delta = 1.0;
  double tau = 1.0;
  double sigma = 1.0;  // proposal step scale
};

/// Mean and covariance of the pilot v draws; S_half is the symmetric
/// matrix square root after eigenvalue flooring.
struct PilotSummary {
  Eigen::VectorXd v_bar;
  Eigen::MatrixXd S;
  Eigen::MatrixXd S_half;
};

/// Retained post-burn-in draws. psd curves are in standardized units;
/// multiply by scale_factor to recover the original scale.
struct PosteriorSamples {
  Eigen::MatrixXd psd_samples;  // M x nu
  Eigen::MatrixXd param_trace;  // M x 4: phi, delta, tau, log posterior
  Eigen::VectorXd frequencies;
  double scale_factor = 1.0;  // original_sd^2
  double accept_rate = 0.0;   // final chain, post burn-in
};

/// Identity reparametrization (S = I, v_bar = 0).
PilotSummary identity_pilot(int dim);

/// Initial state: weights proportional to the mean periodogram ordinate
/// over each density's support, tau at the mean ordinate.
SamplerState init_state(const Periodogram& pgram, const KnotVector& kv,
                        const BasisMatrix& bm);

double update_phi(const SamplerState& state, const PenaltyMatrix& P,
                  const PriorConfig& cfg, Rng& rng);
double update_delta(const SamplerState& state, const PriorConfig& cfg, Rng& rng);
double update_tau(const SamplerState& state, const Periodogram& pgram,
                  const BasisMatrix& bm, const PriorConfig& cfg, Rng& rng);

/// One sweep of coordinatewise random-walk Metropolis on beta; each move
/// is mapped to v through the pilot reparametrization before evaluating
/// log_target. log_post must hold log_target(v) on entry and is kept
/// current. Returns the number of accepted coordinates.
int metropolis_sweep(Eigen::VectorXd& beta, Eigen::VectorXd& v, double& log_post,
                     const PilotSummary& pilot, double sigma,
                     const std::function<double(const Eigen::VectorXd&)>& log_target,
                     Rng& rng);

/// Metropolis update of v targeting the Whittle likelihood plus the
/// Gaussian v-prior term (phi, tau fixed within the step).
int update_v(SamplerState& state, const PilotSummary& pilot,
             const Periodogram& pgram, const BasisMatrix& bm,
             const PenaltyMatrix& P, Rng& rng);

/// Multiplicative +-10% step-scale rule keeping acceptance in the band.
double adapt_sigma(double sigma, double accept_rate, const ChainConfig& cfg);

/// Pilot chain with identity reparametrization; leaves state at the last
/// pilot iterate and returns (v_bar, S, S_half) of the retained v draws.
PilotSummary pilot_run(SamplerState& state, const Periodogram& pgram,
                       const BasisMatrix& bm, const PenaltyMatrix& P,
                       const PriorConfig& prior, const ChainConfig& cfg, Rng& rng);

/// Full two-stage run: pilot, then the final chain started at the last
/// pilot state. Deterministic under cfg.seed.
PosteriorSamples run_chain(const PreprocessedSeries& data, const KnotVector& kv,
                           const PenaltyMatrix& P, const ChainConfig& cfg,
                           const PriorConfig& prior);

}  // namespace pspec
