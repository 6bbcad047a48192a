// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "krom/mesh.hpp"

namespace krom {

/// Quadrature rule on the reference simplex (unit triangle/tetrahedron).
/// Weights sum to the reference measure (1/2 in 2D, 1/6 in 3D).
struct QuadRule {
  std::vector<Point> points;
  std::vector<double> weights;
  int size() const { return static_cast<int>(weights.size()); }
};

/// Collapsed tensor (Duffy) rule, exact for polynomials of total degree
/// <= degree on the reference simplex.
QuadRule simplex_rule(int dim, int degree);

/// Gauss nodes and weights on [0,1] for the weight (1-x)^alpha.
void gauss_jacobi_01(int n, int alpha, std::vector<double>& x, std::vector<double>& w);

}  // namespace krom
