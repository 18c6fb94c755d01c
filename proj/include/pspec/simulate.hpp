// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pspec/posterior.hpp"

namespace pspec {

/// AR(p) model Y_t = sum_j rho_j Y_{t-j} + e_t, e_t ~ N(0, sigma2).
struct ARModel {
  Eigen::VectorXd rho;
  double sigma2 = 1.0;
  int order() const { return static_cast<int>(rho.size()); }
};

/// All roots of 1 - sum rho_j z^j outside the unit circle.
bool is_stationary(const ARModel& model);

/// Simulate n observations after a discarded warm-up of 10*p + 100 steps
/// from zero initial conditions. Deterministic under seed.
TimeSeries simulate_ar(const ARModel& model, int n, std::uint64_t seed);

/// f(lambda) = sigma2 / (2 pi |1 - sum_j rho_j e^{-i j lambda}|^2).
double ar_psd(const ARModel& model, double lambda);

/// Rule of thumb K = min(floor(n/4), 40), clamped to at least degree+1.
int choose_K(int n, int degree = 3);

enum class KnotScheme { equidistant, qspaced };

struct BenchmarkConfig {
  std::vector<ARModel> models;
  std::vector<std::string> model_names;  // parallel to models
  std::vector<int> lengths;
  int replications = 50;
  std::vector<KnotScheme> schemes{KnotScheme::equidistant, KnotScheme::qspaced};
  std::vector<int> penalty_orders{1, 2};
  ChainConfig chain;
  PriorConfig prior;
  double alpha = 0.1;
  std::uint64_t base_seed = 1;
};

struct BenchmarkRow {
  std::string model;
  int n = 0;
  KnotScheme scheme = KnotScheme::equidistant;
  int d = 1;
  double median_iae = 0.0;
  double uniform_coverage = 0.0;
  double median_pointwise_coverage = 0.0;
  double median_runtime_seconds = 0.0;
  int replications = 0;
};

/// One pipeline run on a simulated series: simulate, preprocess,
/// periodogram, knots, penalty (difference for equidistant knots,
/// derivative for Q-spaced), sample, band, IAE and coverage against
/// the theoretical AR psd.
struct ReplicationResult {
  double iae = 0.0;
  bool uniform_covered = false;
  double pointwise_fraction = 0.0;
  double runtime_seconds = 0.0;
  bool ok = false;
};

ReplicationResult run_replication(const ARModel& model, int n, KnotScheme scheme,
                                  int d, const ChainConfig& chain,
                                  const PriorConfig& prior, double alpha,
                                  std::uint64_t seed);

/// Full benchmark grid; replications run in parallel over `jobs` workers
/// with per-replication seeds, merged deterministically. Failed
/// replications are reported on `progress` and excluded.
std::vector<BenchmarkRow> run_benchmark(const BenchmarkConfig& cfg, int jobs,
                                        std::ostream* progress = nullptr);

std::string to_string(KnotScheme scheme);

}  // namespace pspec
