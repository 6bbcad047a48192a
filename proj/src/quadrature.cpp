// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#include "krom/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace krom {

void gauss_jacobi_01(int n, int alpha, std::vector<double>& x, std::vector<double>& w) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi_01: n must be positive");
  if (alpha < 0) throw std::invalid_argument("gauss_jacobi_01: alpha must be nonnegative");
  // Golub-Welsch on the Jacobi(alpha, 0) recurrence over [-1, 1].
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  const double a = static_cast<double>(alpha);
  for (int k = 0; k < n; ++k) {
    if (k == 0) {
      J(0, 0) = -a / (a + 2.0);
    } else {
      const double two_k_a = 2.0 * k + a;
      J(k, k) = -(a * a) / (two_k_a * (two_k_a + 2.0));
      const double num = 4.0 * k * k * (k + a) * (k + a);
      const double den = two_k_a * two_k_a * (two_k_a + 1.0) * (two_k_a - 1.0);
      const double b = std::sqrt(num / den);
      J(k, k - 1) = J(k - 1, k) = b;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  const double mu0 = std::pow(2.0, a + 1.0) / (a + 1.0);
  const double scale = std::pow(2.0, -a - 1.0);
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    x[i] = 0.5 * (t + 1.0);
    w[i] = scale * mu0 * v0 * v0;
  }
}

QuadRule simplex_rule(int dim, int degree) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("simplex_rule: dim must be 2 or 3");
  if (degree < 0) throw std::invalid_argument("simplex_rule: degree must be nonnegative");
  const int n = degree / 2 + 1;  // 2n-1 >= degree

  std::vector<double> xu, wu, xv, wv, xw, ww;
  gauss_jacobi_01(n, 0, xu, wu);
  gauss_jacobi_01(n, 1, xv, wv);

  QuadRule rule;
  if (dim == 2) {
    rule.points.reserve(static_cast<std::size_t>(n) * n);
    rule.weights.reserve(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        rule.points.push_back({xu[i] * (1.0 - xv[j]), xv[j], 0.0});
        rule.weights.push_back(wu[i] * wv[j]);
      }
    }
    return rule;
  }
  gauss_jacobi_01(n, 2, xw, ww);
  rule.points.reserve(static_cast<std::size_t>(n) * n * n);
  rule.weights.reserve(static_cast<std::size_t>(n) * n * n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const double z = xw[k];
        const double y = xv[j] * (1.0 - z);
        const double x = xu[i] * (1.0 - xv[j]) * (1.0 - z);
        rule.points.push_back({x, y, z});
        rule.weights.push_back(wu[i] * wv[j] * ww[k]);
      }
    }
  }
  return rule;
}

}  // namespace krom
