// SPDX-License-Identifier: Apache-2.0
#include "pspec/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <iostream>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

namespace pspec {

bool is_stationary(const ARModel& model) {
  const int p = model.order();
  if (p == 0) return true;
  // Companion matrix of the AR recursion; stationarity iff all its
  // eigenvalues lie strictly inside the unit circle.
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(p, p);
  C.row(0) = model.rho.transpose();
  for (int i = 1; i < p; ++i) C(i, i - 1) = 1.0;
  const Eigen::VectorXcd eig = C.eigenvalues();
  return (eig.array().abs() < 1.0 - 1e-12).all();
}

TimeSeries simulate_ar(const ARModel& model, int n, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("simulate_ar: n must be positive");
  if (!is_stationary(model))
    throw std::invalid_argument("simulate_ar: nonstationary coefficients");
  const int p = model.order();
  const int warmup = 10 * p + 100;
  Rng rng(seed);
  std::normal_distribution<double> noise(0.0, std::sqrt(model.sigma2));

  Eigen::VectorXd y = Eigen::VectorXd::Zero(warmup + n);
  for (int t = 0; t < warmup + n; ++t) {
    double val = noise(rng);
    for (int j = 0; j < p && t - j - 1 >= 0; ++j)
      val += model.rho[j] * y[t - j - 1];
    y[t] = val;
  }
  TimeSeries out;
  out.values = y.tail(n);
  return out;
}

double ar_psd(const ARModel& model, double lambda) {
  std::complex<double> denom(1.0, 0.0);
  for (int j = 0; j < model.order(); ++j)
    denom -= model.rho[j] * std::polar(1.0, -lambda * (j + 1));
  return model.sigma2 / (2.0 * M_PI * std::norm(denom));
}

int choose_K(int n, int degree) {
  return std::max(std::min(n / 4, 40), degree + 1);
}

std::string to_string(KnotScheme scheme) {
  return scheme == KnotScheme::equidistant ? "equidistant" : "qspaced";
}

ReplicationResult run_replication(const ARModel& model, int n, KnotScheme scheme,
                                  int d, const ChainConfig& chain,
                                  const PriorConfig& prior, double alpha,
                                  std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  ReplicationResult res;

  const TimeSeries raw = simulate_ar(model, n, seed);
  const PreprocessedSeries data = preprocess(raw, /*apply_sqrt=*/false);
  const Periodogram pgram = periodogram(data);
  const int K = choose_K(n);

  const KnotVector kv = scheme == KnotScheme::equidistant
                            ? equidistant_knots(K)
                            : qspaced_knots(pgram, K);
  const PenaltyMatrix P = scheme == KnotScheme::equidistant
                              ? difference_penalty(K, d, prior.epsilon)
                              : derivative_penalty(kv, d, prior.epsilon);

  ChainConfig cc = chain;
  cc.seed = seed;
  const PosteriorSamples samples = run_chain(data, kv, P, cc, prior);
  const PsdEstimate est =
      rescale_to_original(uniform_band(samples, alpha), samples.scale_factor);

  const auto truth = [&](double lambda) { return ar_psd(model, lambda); };
  res.iae = iae(est, truth);
  std::tie(res.uniform_covered, res.pointwise_fraction) =
      coverage_flags(est, truth);
  res.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  res.ok = true;
  return res;
}

namespace {

double median_value(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t half = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + half, v.end());
  double hi = v[half];
  if (v.size() % 2 == 1) return hi;
  return 0.5 * (hi + *std::max_element(v.begin(), v.begin() + half));
}

}  // namespace

std::vector<BenchmarkRow> run_benchmark(const BenchmarkConfig& cfg, int jobs,
                                        std::ostream* progress) {
  struct Task {
    std::size_t model_idx;
    int n;
    KnotScheme scheme;
    int d;
    int rep;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  std::uint64_t counter = 0;
  for (std::size_t mi = 0; mi < cfg.models.size(); ++mi)
    for (int n : cfg.lengths)
      for (KnotScheme scheme : cfg.schemes)
        for (int d : cfg.penalty_orders)
          for (int rep = 0; rep < cfg.replications; ++rep)
            tasks.push_back({mi, n, scheme, d, rep, cfg.base_seed + counter++});

  std::vector<ReplicationResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex log_mutex;

  const int workers = std::max(1, jobs);
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& t = tasks[i];
      try {
        results[i] = run_replication(cfg.models[t.model_idx], t.n, t.scheme,
                                     t.d, cfg.chain, cfg.prior, cfg.alpha,
                                     t.seed);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(log_mutex);
        std::cerr << "run_benchmark: replication failed ("
                  << cfg.model_names[t.model_idx] << ", n=" << t.n << ", "
                  << to_string(t.scheme) << ", d=" << t.d << ", rep=" << t.rep
                  << "): " << e.what() << "\n";
      }
      const std::size_t d = done.fetch_add(1) + 1;
      if (progress && d % 10 == 0) {
        std::lock_guard<std::mutex> lock(log_mutex);
        *progress << "bench: " << d << "/" << tasks.size()
                  << " replications done\n";
      }
    }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::vector<BenchmarkRow> rows;
  for (std::size_t mi = 0; mi < cfg.models.size(); ++mi)
    for (int n : cfg.lengths)
      for (KnotScheme scheme : cfg.schemes)
        for (int d : cfg.penalty_orders) {
          BenchmarkRow row;
          row.model = cfg.model_names[mi];
          row.n = n;
          row.scheme = scheme;
          row.d = d;
          std::vector<double> iaes, fracs, times;
          int covered = 0, ok = 0;
          for (std::size_t i = 0; i < tasks.size(); ++i) {
            const Task& t = tasks[i];
            if (t.model_idx != mi || t.n != n || t.scheme != scheme || t.d != d)
              continue;
            if (!results[i].ok) continue;
            ++ok;
            iaes.push_back(results[i].iae);
            fracs.push_back(results[i].pointwise_fraction);
            times.push_back(results[i].runtime_seconds);
            if (results[i].uniform_covered) ++covered;
          }
          row.replications = ok;
          row.median_iae = median_value(iaes);
          row.uniform_coverage =
              ok > 0 ? static_cast<double>(covered) / ok : 0.0;
          row.median_pointwise_coverage = median_value(fracs);
          row.median_runtime_seconds = median_value(times);
          rows.push_back(row);
        }
  return rows;
}

}  // namespace pspec
