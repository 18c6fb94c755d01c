// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "pspec/splines.hpp"

namespace pspec {

enum class PenaltyKind { difference, derivative };

/// Symmetric positive-definite (K-1)x(K-1) precision structure of the
/// Gaussian prior on v.
struct PenaltyMatrix {
  Eigen::MatrixXd entries;
  double epsilon = 1e-6;
  PenaltyKind kind = PenaltyKind::difference;
};

/// d-th order difference matrix, (K-1-d) x (K-1); repeated first differences.
Eigen::MatrixXd difference_matrix(int K, int d);

/// P = D^T D + epsilon * I, for equidistant knots.
PenaltyMatrix difference_penalty(int K, int d, double epsilon = 1e-6);

/// Gram matrix of d-th derivatives of the B-spline densities, integrated
/// exactly by per-span Gauss-Legendre, scaled so the maximum absolute
/// column sum is 1, reduced to the K-1 free coordinates, plus epsilon * I.
PenaltyMatrix derivative_penalty(const KnotVector& kv, int d, double epsilon = 1e-6);

/// Full K x K normalized derivative Gram matrix (before the reduction and
/// ridge); exposed for verification.
Eigen::MatrixXd derivative_gram(const KnotVector& kv, int d);

/// Gauss-Legendre nodes and weights on [-1,1].
void gauss_legendre(int m, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

}  // namespace pspec
