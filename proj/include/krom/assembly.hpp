// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

#include "krom/fem_space.hpp"
#include "krom/types.hpp"

namespace krom {

using SpatialFn = std::function<double(const Point&)>;
using SpatialGrad = std::function<Point(const Point&)>;

struct OperatorPair {
  SparseMat mass;
  SparseMat stiffness;
};

/// Mass and stiffness for a(u,v) = (grad u, grad v), quadrature exact for
/// degree 2k. The parallel kernel stages per-cell matrices (OpenMP) and
/// scatters them in cell order, so results are deterministic; the serial
/// kernel is the plain reference loop. With eliminate_dirichlet = false the
/// operators run over all nodes (whole-domain identities, tests).
OperatorPair assemble_operators(const FemSpace& space, bool eliminate_dirichlet = true);
OperatorPair assemble_operators_serial(const FemSpace& space, bool eliminate_dirichlet = true);

/// Load vector b_i = (g, phi_i), degree-6 (2D) / degree-5 (3D) quadrature.
Vec assemble_load(const FemSpace& space, const SpatialFn& g);
Vec assemble_load_serial(const FemSpace& space, const SpatialFn& g);

struct ErrorNorms {
  double l2 = 0.0;
  double h1_semi = 0.0;
};

/// L2 and H1-seminorm errors of the FEM function given by interior-dof
/// coefficients against an exact solution, by element quadrature.
ErrorNorms error_norms(const FemSpace& space, const Vec& coeffs, const SpatialFn& u_exact,
                       const SpatialGrad& grad_exact);
ErrorNorms error_norms_serial(const FemSpace& space, const Vec& coeffs, const SpatialFn& u_exact,
                              const SpatialGrad& grad_exact);

// Per-cell element matrices (exposed for verification against symbolic values).
Mat local_mass_matrix(int dim, int degree, const Point* cell_vertices);
Mat local_stiffness_matrix(int dim, int degree, const Point* cell_vertices);

struct EigenPair {
  double value = 0.0;
  Vec vector;
};

/// Leading generalized eigenpairs A phi = lambda M phi in ascending order,
/// vectors A-orthonormal. Dense solve; refuses systems above dense_cap.
std::vector<EigenPair> discrete_eigenpairs(const SparseMat& M, const SparseMat& A, int count,
                                           int dense_cap = 5000);

}  // namespace krom
