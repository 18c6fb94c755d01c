// SPDX-License-Identifier: Apache-2.0
#include "pspec/penalty.hpp"

#include <cmath>
#include <stdexcept>

namespace pspec {

Eigen::MatrixXd difference_matrix(int K, int d) {
  if (d < 1 || d > K - 2)
    throw std::invalid_argument("difference_matrix: order out of range");
  const int m = K - 1;
  Eigen::MatrixXd D = Eigen::MatrixXd::Identity(m, m);
  for (int step = 0; step < d; ++step) {
    const int rows = static_cast<int>(D.rows()) - 1;
    Eigen::MatrixXd D1 = Eigen::MatrixXd::Zero(rows, rows + 1);
    for (int i = 0; i < rows; ++i) {
      D1(i, i) = -1.0;
      D1(i, i + 1) = 1.0;
    }
    D = D1 * D;
  }
  return D;
}

PenaltyMatrix difference_penalty(int K, int d, double epsilon) {
  if (epsilon <= 0.0)
    throw std::invalid_argument("difference_penalty: epsilon must be positive");
  const Eigen::MatrixXd D = difference_matrix(K, d);
  PenaltyMatrix P;
  P.epsilon = epsilon;
  P.kind = PenaltyKind::difference;
  P.entries = D.transpose() * D +
              epsilon * Eigen::MatrixXd::Identity(K - 1, K - 1);
  return P;
}

void gauss_legendre(int m, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  nodes.resize(m);
  weights.resize(m);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    // Newton iteration from the Chebyshev estimate
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= m; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[m - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[m - 1 - i] = w;
  }
  if (m % 2 == 1) nodes[m / 2] = 0.0;
}

Eigen::MatrixXd derivative_gram(const KnotVector& kv, int d) {
  const int r = kv.degree;
  if (d < 1 || d > r)
    throw std::invalid_argument("derivative_gram: order must be in [1, degree]");
  const int K = kv.K;
  Eigen::VectorXd widths(K);
  for (int k = 0; k < K; ++k) {
    widths[k] = kv.xi[k + r + 1] - kv.xi[k];
    if (widths[k] <= 0.0)
      throw std::invalid_argument("derivative_gram: zero-width density support");
  }

  // The integrand is a polynomial of degree 2(r-d) on each span, so
  // r-d+1 Gauss-Legendre nodes integrate it exactly.
  const int m = r - d + 1;
  Eigen::VectorXd gl_x, gl_w;
  gauss_legendre(m, gl_x, gl_w);

  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(K, K);
  for (int s = r; s <= K - 1; ++s) {
    const double a = kv.xi[s], b = kv.xi[s + 1];
    if (b <= a) continue;
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int q = 0; q < m; ++q) {
      const double omega = mid + half * gl_x[q];
      const Eigen::VectorXd dB = bspline_basis_derivative(omega, d, kv);
      const double w = half * gl_w[q];
      for (int j = s - r; j <= s; ++j) {
        const double dj = (r + 1) * dB[j] / widths[j];
        for (int k = j; k <= s; ++k)
          G(j, k) += w * dj * (r + 1) * dB[k] / widths[k];
      }
    }
  }
  G = G.selfadjointView<Eigen::Upper>();

  const double col_sum = G.cwiseAbs().colwise().sum().maxCoeff();
  if (col_sum > 0.0) G /= col_sum;
  return G;
}

PenaltyMatrix derivative_penalty(const KnotVector& kv, int d, double epsilon) {
  if (epsilon <= 0.0)
    throw std::invalid_argument("derivative_penalty: epsilon must be positive");
  const Eigen::MatrixXd G = derivative_gram(kv, d);
  const int m = kv.K - 1;
  PenaltyMatrix P;
  P.epsilon = epsilon;
  P.kind = PenaltyKind::derivative;
  // Drop the K-th row/column, mirroring the weight determined by the
  // simplex constraint.
  P.entries = G.topLeftCorner(m, m) +
              epsilon * Eigen::MatrixXd::Identity(m, m);
  return P;
}

}  // namespace pspec
