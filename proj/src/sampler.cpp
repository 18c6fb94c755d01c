// SPDX-License-Identifier: Apache-2.0
#include "pspec/sampler.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>
#include <vector>

namespace pspec {

namespace {

double draw_gamma(double shape, double rate, Rng& rng) {
  std::gamma_distribution<double> g(shape, 1.0 / rate);
  return g(rng);
}

// log of the v-step target: Whittle likelihood plus the Gaussian prior
// quadratic; everything else is constant within the step.
double v_step_target(const Eigen::VectorXd& v, double tau, double phi,
                     const Eigen::VectorXd& ordinates, const BasisMatrix& bm,
                     const PenaltyMatrix& P) {
  const Eigen::VectorXd w = v_to_w(v);
  const Eigen::VectorXd psd = tau * (bm.values * w);
  if ((psd.array() <= 0.0).any()) return -std::numeric_limits<double>::infinity();
  const double ll = -(psd.array().log() + ordinates.array() / psd.array()).sum();
  return ll - 0.5 * phi * v.dot(P.entries * v);
}

}  // namespace

PilotSummary identity_pilot(int dim) {
  PilotSummary p;
  p.v_bar = Eigen::VectorXd::Zero(dim);
  p.S = Eigen::MatrixXd::Identity(dim, dim);
  p.S_half = Eigen::MatrixXd::Identity(dim, dim);
  return p;
}

SamplerState init_state(const Periodogram& pgram, const KnotVector& kv,
                        const BasisMatrix& bm) {
  const int K = kv.K;
  const int r = kv.degree;
  const Eigen::Index nu = pgram.size();
  const double eta = 1e-10;

  Eigen::VectorXd w(K);
  for (int k = 0; k < K; ++k) {
    const double lo = kv.xi[k], hi = kv.xi[k + r + 1];
    double sum = 0.0;
    int count = 0;
    for (Eigen::Index l = 0; l < nu; ++l) {
      const double omega = bm.grid[l];
      if (omega >= lo && omega <= hi) {
        sum += pgram.ordinates[l];
        ++count;
      }
    }
    w[k] = std::max(count > 0 ? sum / count : 0.0, eta);
  }
  w /= w.sum();

  SamplerState state;
  state.v = w_to_v(w);
  state.beta = Eigen::VectorXd::Zero(K - 1);
  state.phi = 1.0;
  state.delta = 1.0;
  state.tau = std::max(pgram.ordinates.mean(), eta);
  state.sigma = 1.0;
  return state;
}

double update_phi(const SamplerState& state, const PenaltyMatrix& P,
                  const PriorConfig& cfg, Rng& rng) {
  const double shape = 0.5 * state.v.size() + cfg.alpha_phi;
  const double rate = 0.5 * state.v.dot(P.entries * state.v) +
                      state.delta * cfg.beta_phi;
  return draw_gamma(shape, rate, rng);
}

double update_delta(const SamplerState& state, const PriorConfig& cfg, Rng& rng) {
  return draw_gamma(cfg.alpha_phi + cfg.alpha_delta,
                    cfg.beta_phi * state.phi + cfg.beta_delta, rng);
}

double update_tau(const SamplerState& state, const Periodogram& pgram,
                  const BasisMatrix& bm, const PriorConfig& cfg, Rng& rng) {
  const Eigen::VectorXd s = bm.values * v_to_w(state.v);
  if ((s.array() <= 0.0).any())
    throw std::runtime_error("update_tau: zero mixture value at a Fourier frequency");
  const double scale = (pgram.ordinates.array() / s.array()).sum() + cfg.beta_tau;
  const double shape = cfg.alpha_tau + static_cast<double>(pgram.size());
  return 1.0 / draw_gamma(shape, scale, rng);
}

int metropolis_sweep(Eigen::VectorXd& beta, Eigen::VectorXd& v, double& log_post,
                     const PilotSummary& pilot, double sigma,
                     const std::function<double(const Eigen::VectorXd&)>& log_target,
                     Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int accepted = 0;
  Eigen::VectorXd v_prop(v.size());
  for (Eigen::Index k = 0; k < beta.size(); ++k) {
    const double step = sigma * normal(rng);
    const double u = unif(rng);
    v_prop = v + step * pilot.S_half.col(k);
    const double lp = log_target(v_prop);
    if (std::log(u) < lp - log_post) {
      beta[k] += step;
      v = v_prop;
      log_post = lp;
      ++accepted;
    }
  }
  return accepted;
}

int update_v(SamplerState& state, const PilotSummary& pilot,
             const Periodogram& pgram, const BasisMatrix& bm,
             const PenaltyMatrix& P, Rng& rng) {
  const auto target = [&](const Eigen::VectorXd& v) {
    return v_step_target(v, state.tau, state.phi, pgram.ordinates, bm, P);
  };
  double log_post = target(state.v);
  return metropolis_sweep(state.beta, state.v, log_post, pilot, state.sigma,
                          target, rng);
}

double adapt_sigma(double sigma, double accept_rate, const ChainConfig& cfg) {
  if (accept_rate < cfg.target_accept_low) return sigma * 0.9;
  if (accept_rate > cfg.target_accept_high) return sigma * 1.1;
  return sigma;
}

namespace {

// Shared sweep driver for the pilot and final chains. Adaptation runs
// over non-overlapping windows while adapting() is true; retained sweeps
// are reported through retain().
void run_sweeps(SamplerState& state, const PilotSummary& pilot,
                const Periodogram& pgram, const BasisMatrix& bm,
                const PenaltyMatrix& P, const PriorConfig& prior,
                const ChainConfig& cfg, int iterations, Rng& rng,
                const std::function<bool(int)>& adapting,
                const std::function<void(int)>& retain, long* accepted_out,
                long* proposed_out) {
  const Eigen::Index dim = state.v.size();
  int window_accepted = 0, window_sweeps = 0;
  for (int m = 1; m <= iterations; ++m) {
    const int acc = update_v(state, pilot, pgram, bm, P, rng);
    state.phi = update_phi(state, P, prior, rng);
    state.delta = update_delta(state, prior, rng);
    state.tau = update_tau(state, pgram, bm, prior, rng);

    if (adapting(m)) {
      window_accepted += acc;
      ++window_sweeps;
      if (window_sweeps == cfg.adapt_window) {
        const double rate = static_cast<double>(window_accepted) /
                            (static_cast<double>(window_sweeps) * dim);
        state.sigma = adapt_sigma(state.sigma, rate, cfg);
        window_accepted = 0;
        window_sweeps = 0;
      }
    } else if (accepted_out) {
      *accepted_out += acc;
      *proposed_out += dim;
    }
    retain(m);
  }
}

}  // namespace

PilotSummary pilot_run(SamplerState& state, const Periodogram& pgram,
                       const BasisMatrix& bm, const PenaltyMatrix& P,
                       const PriorConfig& prior, const ChainConfig& cfg, Rng& rng) {
  const int dim = static_cast<int>(state.v.size());
  const PilotSummary identity = identity_pilot(dim);
  state.beta = state.v;  // identity reparametrization

  std::vector<Eigen::VectorXd> draws;
  run_sweeps(
      state, identity, pgram, bm, P, prior, cfg, cfg.pilot_iterations, rng,
      [](int) { return true; },
      [&](int m) {
        if (m > cfg.pilot_burnin && (m - cfg.pilot_burnin) % cfg.pilot_thin == 0)
          draws.push_back(state.v);
      },
      nullptr, nullptr);

  const Eigen::Index M = static_cast<Eigen::Index>(draws.size());
  double floor = 1e-10;
  if (M < dim + 1) {
    std::cerr << "pilot_run: only " << M
              << " retained draws, covariance rank-deficient; enlarging "
                 "eigenvalue floor\n";
    floor = 1e-4;
  }

  PilotSummary summary;
  summary.v_bar = Eigen::VectorXd::Zero(dim);
  for (const auto& d : draws) summary.v_bar += d;
  if (M > 0) summary.v_bar /= static_cast<double>(M);

  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& d : draws) {
    const Eigen::VectorXd c = d - summary.v_bar;
    cov.selfadjointView<Eigen::Lower>().rankUpdate(c);
  }
  cov = cov.selfadjointView<Eigen::Lower>();
  if (M > 1) cov /= static_cast<double>(M - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const Eigen::VectorXd lam = eig.eigenvalues().cwiseMax(floor);
  summary.S = eig.eigenvectors() * lam.asDiagonal() *
              eig.eigenvectors().transpose();
  summary.S_half = eig.eigenvectors() * lam.cwiseSqrt().asDiagonal() *
                   eig.eigenvectors().transpose();
  return summary;
}

PosteriorSamples run_chain(const PreprocessedSeries& data, const KnotVector& kv,
                           const PenaltyMatrix& P, const ChainConfig& cfg,
                           const PriorConfig& prior) {
  if (cfg.burnin >= cfg.iterations || cfg.thin < 1)
    throw std::invalid_argument("run_chain: invalid chain configuration");
  const Periodogram pgram = periodogram(data);
  const BasisMatrix bm = basis_matrix(kv, pgram);
  Rng rng(cfg.seed);

  SamplerState state = init_state(pgram, kv, bm);
  const PilotSummary pilot = pilot_run(state, pgram, bm, P, prior, cfg, rng);

  // Start the final chain at the last pilot state. The reparametrization
  // standardizes the posterior scale, so the step size restarts at 1 and
  // is re-tuned during the final burn-in; the pilot sigma was calibrated
  // for identity-scale moves and would be far too small here.
  state.beta = pilot.S_half.ldlt().solve(state.v - pilot.v_bar);
  state.sigma = 1.0;

  const Eigen::Index nu = pgram.size();
  const int retained = (cfg.iterations - cfg.burnin) / cfg.thin;
  PosteriorSamples out;
  out.frequencies = pgram.frequencies;
  out.scale_factor = data.original_sd * data.original_sd;
  out.psd_samples.resize(retained, nu);
  out.param_trace.resize(retained, 4);

  long accepted = 0, proposed = 0;
  Eigen::Index row = 0;
  run_sweeps(
      state, pilot, pgram, bm, P, prior, cfg, cfg.iterations, rng,
      [&](int m) { return m <= cfg.burnin; },
      [&](int m) {
        if (m > cfg.burnin && (m - cfg.burnin) % cfg.thin == 0 && row < retained) {
          const Eigen::VectorXd w = v_to_w(state.v);
          out.psd_samples.row(row) = (state.tau * (bm.values * w)).transpose();
          const double ll = whittle_log_likelihood(
              pgram.ordinates, out.psd_samples.row(row).transpose());
          out.param_trace(row, 0) = state.phi;
          out.param_trace(row, 1) = state.delta;
          out.param_trace(row, 2) = state.tau;
          out.param_trace(row, 3) =
              ll + log_prior(state.v, state.phi, state.delta, state.tau, P, prior);
          ++row;
        }
      },
      &accepted, &proposed);

  out.accept_rate =
      proposed > 0 ? static_cast<double>(accepted) / static_cast<double>(proposed)
                   : 0.0;
  return out;
}

}  // namespace pspec
