// SPDX-License-Identifier: Apache-2.0
#include "pspec/splines.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <vector>

namespace pspec {

namespace {

KnotVector from_internal(const Eigen::VectorXd& internal, int K, int r) {
  KnotVector kv;
  kv.K = K;
  kv.degree = r;
  kv.xi.resize(K + r + 1);
  kv.xi.head(r).setZero();
  kv.xi.segment(r, internal.size()) = internal;
  kv.xi.tail(r).setOnes();
  return kv;
}

// Index s in [degree, K-1] with xi[s] <= omega < xi[s+1]; omega = 1 maps
// to the last nonempty span.
int find_span(double omega, const KnotVector& kv) {
  const int r = kv.degree;
  const int hi = kv.K - 1;
  if (omega >= 1.0) return hi;
  int lo = r;
  int high = hi + 1;
  while (high - lo > 1) {
    const int mid = (lo + high) / 2;
    if (omega < kv.xi[mid])
      high = mid;
    else
      lo = mid;
  }
  return lo;
}

// Values of the degree+1 basis functions that are nonzero on span s
// (Cox-de Boor triangular scheme; sums to 1 by construction).
Eigen::VectorXd basis_funs(int s, double omega, const KnotVector& kv) {
  const int r = kv.degree;
  Eigen::VectorXd N = Eigen::VectorXd::Zero(r + 1);
  Eigen::VectorXd left(r + 1), right(r + 1);
  N[0] = 1.0;
  for (int j = 1; j <= r; ++j) {
    left[j] = omega - kv.xi[s + 1 - j];
    right[j] = kv.xi[s + j] - omega;
    double saved = 0.0;
    for (int k = 0; k < j; ++k) {
      const double temp = N[k] / (right[k + 1] + left[j - k]);
      N[k] = saved + right[k + 1] * temp;
      saved = left[j - k] * temp;
    }
    N[j] = saved;
  }
  return N;
}

// Derivatives 0..d of the nonzero basis functions on span s
// (standard derivative algorithm for B-spline bases).
Eigen::MatrixXd ders_basis_funs(int s, double omega, int d, const KnotVector& kv) {
  const int r = kv.degree;
  const int du = std::min(d, r);
  Eigen::MatrixXd ders = Eigen::MatrixXd::Zero(d + 1, r + 1);
  Eigen::MatrixXd ndu(r + 1, r + 1);
  Eigen::VectorXd left(r + 1), right(r + 1);
  ndu(0, 0) = 1.0;
  for (int j = 1; j <= r; ++j) {
    left[j] = omega - kv.xi[s + 1 - j];
    right[j] = kv.xi[s + j] - omega;
    double saved = 0.0;
    for (int k = 0; k < j; ++k) {
      ndu(j, k) = right[k + 1] + left[j - k];
      const double temp = ndu(k, j - 1) / ndu(j, k);
      ndu(k, j) = saved + right[k + 1] * temp;
      saved = left[j - k] * temp;
    }
    ndu(j, j) = saved;
  }
  for (int j = 0; j <= r; ++j) ders(0, j) = ndu(j, r);

  Eigen::MatrixXd a(2, r + 1);
  for (int i = 0; i <= r; ++i) {
    int s1 = 0, s2 = 1;
    a(0, 0) = 1.0;
    for (int k = 1; k <= du; ++k) {
      double dval = 0.0;
      const int rk = i - k, pk = r - k;
      if (i >= k) {
        a(s2, 0) = a(s1, 0) / ndu(pk + 1, rk);
        dval = a(s2, 0) * ndu(rk, pk);
      }
      const int j1 = (rk >= -1) ? 1 : -rk;
      const int j2 = (i - 1 <= pk) ? k - 1 : r - i;
      for (int j = j1; j <= j2; ++j) {
        a(s2, j) = (a(s1, j) - a(s1, j - 1)) / ndu(pk + 1, rk + j);
        dval += a(s2, j) * ndu(rk + j, pk);
      }
      if (i <= pk) {
        a(s2, k) = -a(s1, k - 1) / ndu(pk + 1, i);
        dval += a(s2, k) * ndu(i, pk);
      }
      ders(k, i) = dval;
      std::swap(s1, s2);
    }
  }
  double fac = static_cast<double>(r);
  for (int k = 1; k <= du; ++k) {
    ders.row(k) *= fac;
    fac *= static_cast<double>(r - k);
  }
  return ders;
}

// Enforce a minimum gap between consecutive internal knots, keeping the
// endpoints at 0 and 1.
void collapse_ties(Eigen::VectorXd& internal, double min_gap) {
  const Eigen::Index m = internal.size();
  internal[0] = 0.0;
  internal[m - 1] = 1.0;
  for (Eigen::Index j = 1; j < m; ++j)
    if (internal[j] < internal[j - 1] + min_gap)
      internal[j] = internal[j - 1] + min_gap;
  if (internal[m - 1] > 1.0) {
    internal[m - 1] = 1.0;
    for (Eigen::Index j = m - 2; j >= 1; --j)
      if (internal[j] > internal[j + 1] - min_gap)
        internal[j] = internal[j + 1] - min_gap;
  }
}

}  // namespace

KnotVector equidistant_knots(int K, int degree) {
  if (K < degree + 1)
    throw std::invalid_argument("equidistant_knots: K must be at least degree+1");
  const int n_int = K - degree + 1;
  Eigen::VectorXd internal(n_int);
  for (int j = 0; j < n_int; ++j)
    internal[j] = static_cast<double>(j) / static_cast<double>(n_int - 1);
  return from_internal(internal, K, degree);
}

KnotVector qspaced_knots(const Periodogram& pgram, int K, int degree) {
  if (K < degree + 1)
    throw std::invalid_argument("qspaced_knots: K must be at least degree+1");
  const Eigen::Index nu = pgram.size();
  if (nu < 2) throw std::invalid_argument("qspaced_knots: need at least 2 ordinates");
  if ((pgram.ordinates.array() < 0.0).any())
    throw std::invalid_argument("qspaced_knots: negative periodogram ordinate");

  const Eigen::VectorXd x = pgram.ordinates.array().sqrt();
  const double x_bar = x.mean();
  const double sx = std::sqrt((x.array() - x_bar).square().sum() /
                              static_cast<double>(nu - 1));
  if (sx <= 0.0) {
    std::cerr << "qspaced_knots: flat periodogram, using equidistant knots\n";
    return equidistant_knots(K, degree);
  }
  Eigen::VectorXd y = (x.array() - x_bar).abs();  // sx cancels in normalization
  const double y_sum = y.sum();
  if (y_sum <= 0.0) {
    std::cerr << "qspaced_knots: flat periodogram, using equidistant knots\n";
    return equidistant_knots(K, degree);
  }

  // Breakpoints of the piecewise-linear cdf F: (0,0), (omega_l, Z_l), (1,1).
  std::vector<double> u(nu + 2), Fv(nu + 2);
  u[0] = 0.0;
  Fv[0] = 0.0;
  double cum = 0.0;
  for (Eigen::Index l = 0; l < nu; ++l) {
    cum += y[l] / y_sum;
    u[l + 1] = pgram.frequencies[l] / M_PI;
    Fv[l + 1] = cum;
  }
  u[nu + 1] = 1.0;
  Fv[nu + 1] = 1.0;

  const int n_int = K - degree + 1;
  Eigen::VectorXd internal(n_int);
  for (int j = 0; j < n_int; ++j) {
    const double q = static_cast<double>(j) / static_cast<double>(n_int - 1);
    if (q <= 0.0) {
      internal[j] = 0.0;
      continue;
    }
    if (q >= 1.0) {
      internal[j] = 1.0;
      continue;
    }
    auto it = std::lower_bound(Fv.begin(), Fv.end(), q);
    const std::size_t i = static_cast<std::size_t>(it - Fv.begin());
    if (*it > q) {
      // strict bracket: linear interpolation on (u[i-1], u[i])
      const double t = (q - Fv[i - 1]) / (Fv[i] - Fv[i - 1]);
      internal[j] = u[i - 1] + t * (u[i] - u[i - 1]);
    } else {
      // F equals q on a flat segment: midpoint rule
      std::size_t i2 = i;
      while (i2 + 1 < Fv.size() && Fv[i2 + 1] == q) ++i2;
      internal[j] = 0.5 * (u[i] + u[i2]);
    }
  }
  collapse_ties(internal, 1e-6);
  return from_internal(internal, K, degree);
}

Eigen::VectorXd bspline_basis(double omega, const KnotVector& kv) {
  if (omega < 0.0 || omega > 1.0)
    throw std::invalid_argument("bspline_basis: omega outside [0,1]");
  const int s = find_span(omega, kv);
  const Eigen::VectorXd N = basis_funs(s, omega, kv);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(kv.K);
  out.segment(s - kv.degree, kv.degree + 1) = N;
  return out;
}

Eigen::VectorXd bspline_basis_derivative(double omega, int d, const KnotVector& kv) {
  if (omega < 0.0 || omega > 1.0)
    throw std::invalid_argument("bspline_basis_derivative: omega outside [0,1]");
  if (d < 0) throw std::invalid_argument("bspline_basis_derivative: negative order");
  const int s = find_span(omega, kv);
  const Eigen::MatrixXd ders = ders_basis_funs(s, omega, d, kv);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(kv.K);
  if (d <= kv.degree)
    out.segment(s - kv.degree, kv.degree + 1) = ders.row(d);
  return out;
}

double bspline_density(double omega, int k, const KnotVector& kv) {
  const double width = kv.xi[k + kv.degree + 1] - kv.xi[k];
  if (width <= 0.0)
    throw std::invalid_argument("bspline_density: zero-width support");
  return (kv.degree + 1) * bspline_basis(omega, kv)[k] / width;
}

BasisMatrix basis_matrix(const KnotVector& kv, const Periodogram& pgram) {
  const Eigen::Index nu = pgram.size();
  const int r = kv.degree;
  BasisMatrix bm;
  bm.grid = pgram.frequencies / M_PI;
  bm.values = Eigen::MatrixXd::Zero(nu, kv.K);
  Eigen::VectorXd widths(kv.K);
  for (int k = 0; k < kv.K; ++k) widths[k] = kv.xi[k + r + 1] - kv.xi[k];
  for (Eigen::Index l = 0; l < nu; ++l) {
    const double omega = bm.grid[l];
    const int s = find_span(omega, kv);
    const Eigen::VectorXd N = basis_funs(s, omega, kv);
    for (int j = 0; j <= r; ++j) {
      const int k = s - r + j;
      bm.values(l, k) = (r + 1) * N[j] / widths[k];
    }
  }
  return bm;
}

}  // namespace pspec
