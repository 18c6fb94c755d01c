// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "pspec/signal.hpp"

namespace pspec {

/// Clamped knot vector on [0,1] for K B-spline densities of degree r.
/// Layout: xi has K+r+1 entries; xi[0..r] = 0, xi[K..K+r] = 1, and the
/// K* = K-r+1 internal knots xi[r..K] (endpoints included) are strictly
/// increasing.
struct KnotVector {
  Eigen::VectorXd xi;
  int K = 0;
  int degree = 3;
  int num_internal() const { return K - degree + 1; }
};

/// Values of the K B-spline densities b_k at points omega_l = lambda_l/pi.
struct BasisMatrix {
  Eigen::MatrixXd values;  // nu x K
  Eigen::VectorXd grid;    // omega_l in (0,1)
};

/// K* internal knots equally spaced on [0,1].
KnotVector equidistant_knots(int K, int degree = 3);

/// Internal knots at quantiles of the cdf interpolating the cumulative
/// standardized square-root periodogram. Falls back to equidistant knots
/// (with a note on stderr) when the transformed periodogram is flat.
KnotVector qspaced_knots(const Periodogram& pgram, int K, int degree = 3);

/// All K basis function values B_k(omega) via the Cox-de Boor recursion;
/// at omega = 1 the last basis function takes value 1.
Eigen::VectorXd bspline_basis(double omega, const KnotVector& kv);

/// d-th derivatives of all K basis functions at omega (d = 0 gives values).
Eigen::VectorXd bspline_basis_derivative(double omega, int d, const KnotVector& kv);

/// Normalized B-spline density b_k = (r+1) B_k / (xi[k+r+1] - xi[k]),
/// k = 0..K-1; integrates to 1 over [0,1].
double bspline_density(double omega, int k, const KnotVector& kv);

/// Density values at all Fourier frequencies, computed once per run.
BasisMatrix basis_matrix(const KnotVector& kv, const Periodogram& pgram);

}  // namespace pspec
