// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pspec/simulate.hpp"

using namespace pspec;

namespace {

ARModel ar1(double rho, double sigma2 = 1.0) {
  ARModel m;
  m.rho.resize(1);
  m.rho << rho;
  m.sigma2 = sigma2;
  return m;
}

ARModel ar4_benchmark() {
  ARModel m;
  m.rho.resize(4);
  m.rho << 0.9, -0.9, 0.9, -0.9;
  return m;
}

// trapezoid over [0, pi] on a fine grid
double integrate_psd(const ARModel& m, int grid = 200001) {
  const double h = M_PI / (grid - 1);
  double sum = 0.5 * (ar_psd(m, 0.0) + ar_psd(m, M_PI));
  for (int i = 1; i < grid - 1; ++i) sum += ar_psd(m, i * h);
  return sum * h;
}

}  // namespace

TEST_CASE("stationarity checks") {
  CHECK(is_stationary(ar1(0.9)));
  CHECK(is_stationary(ar1(-0.95)));
  CHECK_FALSE(is_stationary(ar1(1.0)));
  CHECK_FALSE(is_stationary(ar1(1.05)));
  CHECK(is_stationary(ar4_benchmark()));

  ARModel explosive;
  explosive.rho.resize(2);
  explosive.rho << 1.1, 0.2;
  CHECK_FALSE(is_stationary(explosive));

  ARModel white;
  white.rho.resize(0);
  CHECK(is_stationary(white));
}

TEST_CASE("ar psd closed-form values") {
  // white noise: flat at sigma2 / (2 pi)
  ARModel white;
  white.rho.resize(0);
  white.sigma2 = 9.0;
  for (double lambda : {0.0, 1.0, 2.0, M_PI})
    CHECK(ar_psd(white, lambda) == doctest::Approx(9.0 / (2 * M_PI)).epsilon(1e-14));

  // AR(1), rho = 0.9: f(0) = 1/(2 pi (1-0.9)^2) = 50/pi
  const ARModel m = ar1(0.9);
  CHECK(ar_psd(m, 0.0) == doctest::Approx(50.0 / M_PI).epsilon(1e-12));
  // f(pi) = 1/(2 pi (1.9)^2)
  CHECK(ar_psd(m, M_PI) ==
        doctest::Approx(1.0 / (2 * M_PI * 1.9 * 1.9)).epsilon(1e-12));
  // general lambda: |1 - rho e^{-i lambda}|^2 = 1 - 2 rho cos(lambda) + rho^2
  for (double lambda : {0.3, 1.2, 2.5})
    CHECK(ar_psd(m, lambda) ==
          doctest::Approx(1.0 / (2 * M_PI *
                                 (1 - 1.8 * std::cos(lambda) + 0.81)))
              .epsilon(1e-12));
}

TEST_CASE("twice the psd integral over [0, pi] equals the process variance") {
  // AR(1): var = sigma2 / (1 - rho^2) = 1 / 0.19
  CHECK(2.0 * integrate_psd(ar1(0.9)) ==
        doctest::Approx(1.0 / 0.19).epsilon(1e-6));

  // AR(4): variance from the Yule-Walker equations
  const ARModel m = ar4_benchmark();
  // solve for autocovariances gamma_0..gamma_4
  const int p = 4;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(p + 1, p + 1);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(p + 1);
  // gamma_0 - sum_j rho_j gamma_j = sigma2
  A(0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) A(0, j) = -m.rho[j - 1];
  b[0] = m.sigma2;
  // gamma_k - sum_j rho_j gamma_{|k-j|} = 0, k = 1..p
  for (int k = 1; k <= p; ++k) {
    A(k, k) += 1.0;
    for (int j = 1; j <= p; ++j) A(k, std::abs(k - j)) -= m.rho[j - 1];
    b[k] = 0.0;
  }
  const double gamma0 = A.fullPivLu().solve(b)[0];
  CHECK(2.0 * integrate_psd(m) == doctest::Approx(gamma0).epsilon(1e-6));
}

TEST_CASE("simulate_ar: determinism, length, moments") {
  const ARModel m = ar1(0.9);
  const TimeSeries a = simulate_ar(m, 500, 42);
  const TimeSeries b = simulate_ar(m, 500, 42);
  const TimeSeries c = simulate_ar(m, 500, 43);
  REQUIRE(a.values.size() == 500);
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK((a.values - c.values).cwiseAbs().maxCoeff() > 0.0);

  CHECK_THROWS(simulate_ar(ar1(1.01), 100, 1));
  CHECK_THROWS(simulate_ar(m, 0, 1));
}

TEST_CASE("simulated AR(1) matches theoretical lag-1 autocorrelation") {
  const double rho = 0.9;
  const int n = 10000;
  const TimeSeries ts = simulate_ar(ar1(rho), n, 7);
  const Eigen::VectorXd y = ts.values.array() - ts.values.mean();
  const double g0 = y.squaredNorm() / n;
  double g1 = 0.0;
  for (int t = 0; t + 1 < n; ++t) g1 += y[t] * y[t + 1];
  g1 /= n;
  const double r1 = g1 / g0;
  // asymptotic se of r1 for AR(1) is about sqrt((1-rho^2)/n)
  const double se = std::sqrt((1 - rho * rho) / n);
  CHECK(std::abs(r1 - rho) < 3.0 * se);

  // variance within 10% of sigma2 / (1 - rho^2)
  CHECK(g0 == doctest::Approx(1.0 / 0.19).epsilon(0.10));
}

TEST_CASE("white-noise simulation has near-zero lag-1 correlation") {
  ARModel white;
  white.rho.resize(0);
  white.sigma2 = 4.0;
  const int n = 10000;
  const TimeSeries ts = simulate_ar(white, n, 11);
  const Eigen::VectorXd y = ts.values.array() - ts.values.mean();
  const double g0 = y.squaredNorm() / n;
  double g1 = 0.0;
  for (int t = 0; t + 1 < n; ++t) g1 += y[t] * y[t + 1];
  g1 /= n;
  CHECK(std::abs(g1 / g0) < 3.0 / std::sqrt(n));
  CHECK(g0 == doctest::Approx(4.0).epsilon(0.10));
}

TEST_CASE("choose_K rule") {
  CHECK(choose_K(128) == 32);
  CHECK(choose_K(160) == 40);
  CHECK(choose_K(256) == 40);
  CHECK(choose_K(512) == 40);
  CHECK(choose_K(12) == 4);   // clamp to degree + 1
  CHECK(choose_K(8) == 4);
  CHECK(choose_K(100, 2) == 25);
}

TEST_CASE("run_replication produces a sane result on a short chain") {
  ChainConfig chain;
  chain.iterations = 600;
  chain.burnin = 200;
  chain.thin = 2;
  chain.pilot_iterations = 300;
  chain.pilot_burnin = 100;
  chain.pilot_thin = 2;
  PriorConfig prior;
  const ReplicationResult r = run_replication(
      ar1(0.5), 128, KnotScheme::equidistant, 1, chain, prior, 0.1, 99);
  CHECK(r.ok);
  CHECK(r.iae > 0.0);
  CHECK(std::isfinite(r.iae));
  CHECK(r.pointwise_fraction >= 0.0);
  CHECK(r.pointwise_fraction <= 1.0);
  CHECK(r.runtime_seconds > 0.0);

  const ReplicationResult r2 = run_replication(
      ar1(0.5), 128, KnotScheme::equidistant, 1, chain, prior, 0.1, 99);
  CHECK(r2.iae == doctest::Approx(r.iae));
  CHECK(r2.uniform_covered == r.uniform_covered);
}

TEST_CASE("run_benchmark: grid shape, determinism, parallel merge") {
  BenchmarkConfig cfg;
  cfg.models = {ar1(0.5)};
  cfg.model_names = {"ar1_05"};
  cfg.lengths = {64};
  cfg.replications = 4;
  cfg.schemes = {KnotScheme::equidistant, KnotScheme::qspaced};
  cfg.penalty_orders = {1};
  cfg.chain.iterations = 400;
  cfg.chain.burnin = 150;
  cfg.chain.thin = 2;
  cfg.chain.pilot_iterations = 200;
  cfg.chain.pilot_burnin = 80;
  cfg.chain.pilot_thin = 2;
  cfg.base_seed = 5;

  std::ostringstream log1, log2;
  const auto rows1 = run_benchmark(cfg, 2, &log1);
  REQUIRE(rows1.size() == 2);
  for (const auto& row : rows1) {
    CHECK(row.model == "ar1_05");
    CHECK(row.n == 64);
    CHECK(row.replications == 4);
    CHECK(row.median_iae > 0.0);
    CHECK(std::isfinite(row.median_iae));
    CHECK(row.uniform_coverage >= 0.0);
    CHECK(row.uniform_coverage <= 1.0);
    CHECK(row.median_pointwise_coverage >= 0.0);
    CHECK(row.median_pointwise_coverage <= 1.0);
  }

  // single worker gives the same aggregates as two workers
  const auto rows2 = run_benchmark(cfg, 1, &log2);
  REQUIRE(rows2.size() == rows1.size());
  for (size_t i = 0; i < rows1.size(); ++i) {
    CHECK(rows1[i].median_iae == doctest::Approx(rows2[i].median_iae));
    CHECK(rows1[i].uniform_coverage ==
          doctest::Approx(rows2[i].uniform_coverage));
    CHECK(rows1[i].median_pointwise_coverage ==
          doctest::Approx(rows2[i].median_pointwise_coverage));
  }
}

TEST_CASE("knot scheme names") {
  CHECK(to_string(KnotScheme::equidistant) == "equidistant");
  CHECK(to_string(KnotScheme::qspaced) == "qspaced");
}
