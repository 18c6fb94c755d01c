// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pspec/model.hpp"

using namespace pspec;

namespace {

Periodogram toy_pgram(const Eigen::VectorXd& ordinates) {
  Periodogram p;
  const Eigen::Index nu = ordinates.size();
  p.frequencies.resize(nu);
  for (Eigen::Index l = 1; l <= nu; ++l)
    p.frequencies[l - 1] = 2.0 * M_PI * l / (2 * nu + 1);
  p.ordinates = ordinates;
  return p;
}

Eigen::VectorXd random_simplex(int K, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  Eigen::VectorXd w(K);
  for (int k = 0; k < K; ++k) w[k] = expo(rng);
  return w / w.sum();
}

}  // namespace

TEST_CASE("v_to_w: symmetry, hand value, simplex") {
  const Eigen::VectorXd w5 = v_to_w(Eigen::VectorXd::Zero(4));
  for (int k = 0; k < 5; ++k) CHECK(w5[k] == doctest::Approx(0.2).epsilon(1e-14));

  Eigen::VectorXd v1(1);
  v1 << std::log(3.0);
  const Eigen::VectorXd w2 = v_to_w(v1);
  CHECK(w2[0] == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(w2[1] == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("v_to_w is overflow safe") {
  Eigen::VectorXd v(3);
  v << 900.0, -900.0, 850.0;
  const Eigen::VectorXd w = v_to_w(v);
  CHECK(std::isfinite(w.sum()));
  CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w.minCoeff() >= 0.0);
}

TEST_CASE("v <-> w round trips") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> noise;
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::VectorXd w = random_simplex(8, rng);
    const Eigen::VectorXd w2 = v_to_w(w_to_v(w));
    CHECK((w - w2).cwiseAbs().maxCoeff() < 1e-12);

    Eigen::VectorXd v(6);
    for (int i = 0; i < 6; ++i) v[i] = 3.0 * noise(rng);
    const Eigen::VectorXd v2 = w_to_v(v_to_w(v));
    CHECK((v - v2).cwiseAbs().maxCoeff() < 1e-12);
  }
  Eigen::VectorXd bad(3);
  bad << 0.5, 0.5, 0.0;
  CHECK_THROWS(w_to_v(bad));
}

TEST_CASE("mixture density: degenerate and convexity bounds") {
  const KnotVector kv = equidistant_knots(6);
  std::mt19937_64 rng(23);
  const Eigen::VectorXd w = random_simplex(6, rng);
  for (double omega : {0.0, 0.2, 0.5, 0.77, 1.0}) {
    const double s = mixture_density(omega, w, kv);
    CHECK(s >= 0.0);
    double max_b = 0.0;
    for (int k = 0; k < 6; ++k)
      max_b = std::max(max_b, bspline_density(omega, k, kv));
    CHECK(s <= max_b + 1e-14);
  }
  // unit mass on one component
  Eigen::VectorXd e2 = Eigen::VectorXd::Zero(6);
  e2[2] = 1.0;
  for (double omega : {0.1, 0.4, 0.9})
    CHECK(mixture_density(omega, e2, kv) ==
          doctest::Approx(bspline_density(omega, 2, kv)).epsilon(1e-14));
}

TEST_CASE("uniform Bernstein mixture is flat, psd scales with tau") {
  // K = 4, no interior knots: sum of Beta(k, 5-k)/4 is identically 1
  SpectralModel m;
  m.kv = equidistant_knots(4);
  m.tau = 1.0;
  m.v = Eigen::VectorXd::Zero(3);
  for (double lambda : {0.3, 1.0, 2.0, 3.0})
    CHECK(psd_at(lambda, m) == doctest::Approx(1.0).epsilon(1e-12));
  m.tau = 2.0;
  for (double lambda : {0.3, 1.0, 2.0})
    CHECK(psd_at(lambda, m) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("whittle equals the exponential log-density sum") {
  std::mt19937_64 rng(31);
  std::exponential_distribution<double> expo(1.0);
  Eigen::VectorXd I(40), f(40);
  for (int l = 0; l < 40; ++l) {
    I[l] = expo(rng);
    f[l] = 0.5 + expo(rng);
  }
  const double ll = whittle_log_likelihood(I, f);
  double expected = 0.0;
  for (int l = 0; l < 40; ++l)
    expected += std::log((1.0 / f[l]) * std::exp(-I[l] / f[l]));
  CHECK(ll == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("constant psd profile is maximized at the mean ordinate") {
  std::mt19937_64 rng(37);
  std::exponential_distribution<double> expo(1.0);
  Eigen::VectorXd I(60);
  for (int l = 0; l < 60; ++l) I[l] = expo(rng);
  const double nu = 60.0;
  const double c_star = I.sum() / nu;
  const auto profile = [&](double c) {
    return -nu * std::log(c) - I.sum() / c;
  };
  CHECK(whittle_log_likelihood(I, Eigen::VectorXd::Constant(60, c_star)) ==
        doctest::Approx(profile(c_star)).epsilon(1e-12));
  CHECK(profile(c_star) > profile(0.7 * c_star));
  CHECK(profile(c_star) > profile(1.3 * c_star));
}

TEST_CASE("raising f above I at one frequency lowers the likelihood") {
  Eigen::VectorXd I = Eigen::VectorXd::Constant(10, 1.0);
  Eigen::VectorXd f = I;
  const double base = whittle_log_likelihood(I, f);
  f[4] = 1.5;
  CHECK(whittle_log_likelihood(I, f) < base);
  f[4] = -1.0;
  CHECK_THROWS(whittle_log_likelihood(I, f));
}

TEST_CASE("whittle via psd_at agrees with the cached basis matrix route") {
  std::mt19937_64 rng(41);
  std::exponential_distribution<double> expo(1.0);
  Eigen::VectorXd ords(30);
  for (int l = 0; l < 30; ++l) ords[l] = expo(rng);
  const Periodogram p = toy_pgram(ords);

  SpectralModel m;
  m.kv = equidistant_knots(8);
  m.bm = basis_matrix(m.kv, p);
  m.tau = 1.7;
  std::normal_distribution<double> noise;
  m.v.resize(7);
  for (int i = 0; i < 7; ++i) m.v[i] = noise(rng);

  const double fast = whittle_log_likelihood(p, m);
  Eigen::VectorXd psd(30);
  for (int l = 0; l < 30; ++l) psd[l] = psd_at(p.frequencies[l], m);
  const double slow = whittle_log_likelihood(p.ordinates, psd);
  CHECK(fast == doctest::Approx(slow).epsilon(1e-12));
}

TEST_CASE("tau profile maximum matches the per-term scale MLE") {
  std::mt19937_64 rng(43);
  std::exponential_distribution<double> expo(1.0);
  Eigen::VectorXd ords(50);
  for (int l = 0; l < 50; ++l) ords[l] = expo(rng);
  const Periodogram p = toy_pgram(ords);

  SpectralModel m;
  m.kv = equidistant_knots(6);
  m.bm = basis_matrix(m.kv, p);
  std::normal_distribution<double> noise;
  m.v.resize(5);
  for (int i = 0; i < 5; ++i) m.v[i] = 0.5 * noise(rng);

  const Eigen::VectorXd s = mixture_at(m.bm, v_to_w(m.v));
  const double tau_star = (p.ordinates.array() / s.array()).sum() / p.size();

  // golden-section search around the analytic optimum
  const auto nll = [&](double tau) {
    m.tau = tau;
    return -whittle_log_likelihood(p, m);
  };
  double a = 0.1 * tau_star, b = 10.0 * tau_star;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  for (int it = 0; it < 200; ++it) {
    if (nll(c) < nll(d))
      b = d;
    else
      a = c;
    c = b - gr * (b - a);
    d = a + gr * (b - a);
  }
  CHECK(0.5 * (a + b) == doctest::Approx(tau_star).epsilon(1e-6));
}

TEST_CASE("gamma log density special case and log prior assembly") {
  // Gamma(1, delta) at phi is log(delta) - delta*phi
  for (double delta : {0.3, 1.0, 2.5})
    for (double phi : {0.1, 1.0, 4.0})
      CHECK(log_gamma_density(phi, 1.0, delta) ==
            doctest::Approx(std::log(delta) - delta * phi).epsilon(1e-14));

  // independent term-by-term oracle at (v=0, phi=1, delta=1, tau=1)
  PriorConfig cfg;
  const int K = 6;
  const PenaltyMatrix P = difference_penalty(K, 1, 1e-6);
  const Eigen::VectorXd v0 = Eigen::VectorXd::Zero(K - 1);
  const double lp = log_prior(v0, 1.0, 1.0, 1.0, P, cfg);

  const double logdet =
      std::log(P.entries.determinant());  // small matrix, direct determinant
  const double m = K - 1;
  const double term_v = -0.5 * m * std::log(2 * M_PI) + 0.5 * logdet;
  const double term_phi = std::log(1.0) - 1.0;  // Gamma(1, 1*1) at 1
  const double term_delta = cfg.alpha_delta * std::log(cfg.beta_delta) -
                            std::lgamma(cfg.alpha_delta) +
                            (cfg.alpha_delta - 1.0) * std::log(1.0) -
                            cfg.beta_delta;
  const double term_tau = cfg.alpha_tau * std::log(cfg.beta_tau) -
                          std::lgamma(cfg.alpha_tau) - cfg.beta_tau;
  CHECK(lp == doctest::Approx(term_v + term_phi + term_delta + term_tau)
                  .epsilon(1e-10));

  // quadratic form term for nonzero v
  std::mt19937_64 rng(47);
  std::normal_distribution<double> noise;
  Eigen::VectorXd v(K - 1);
  for (int i = 0; i < K - 1; ++i) v[i] = noise(rng);
  const double phi = 2.3;
  const double diff = log_prior(v, phi, 1.0, 1.0, P, cfg) -
                      log_prior(v0, phi, 1.0, 1.0, P, cfg);
  CHECK(diff == doctest::Approx(-0.5 * phi * v.dot(P.entries * v)).epsilon(1e-12));

  CHECK_THROWS(log_prior(v, -1.0, 1.0, 1.0, P, cfg));
}
