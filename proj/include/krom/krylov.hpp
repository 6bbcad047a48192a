// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <vector>

#include "krom/spla.hpp"
#include "krom/types.hpp"

namespace krom {

/// Reduced basis built from the Krylov sequence u_1 = A^{-1}b,
/// u_i = A^{-1}M u_{i-1}. K = U^T A U is the Gram matrix of the sequence in
/// the A inner product; it is Hankel (constant anti-diagonals) for a single
/// seed because the solve operator is self-adjoint.
struct KrylovBasis {
  Mat U;        // kept Krylov vectors, one column each
  Mat K;        // Gram matrix of U
  Mat psi;      // eigenvectors of K, by descending eigenvalue
  Vec lambda;   // eigenvalues of K, descending
  int rank = 0;
  Mat Q;        // A-orthonormal reduced basis, N x rank
  int break_index = 0;  // adaptive step that tripped the tolerance, 0 if none
};

/// Columns of block i solve A x = M * (block i-1); block 1 solves A x = seed.
Mat krylov_sequence(const SpdSolver& a_solver, const SparseMat& M, const Mat& seed, int ell);

/// Extend the Gram matrix to one more Krylov vector: copy entries along
/// anti-diagonals, compute only the two new inner products.
Mat gram_extend(const Mat& K_prev, const Mat& U, const SparseMat& A);

/// Minimal r with sum(lambda_1..r) / sum(lambda) >= 1 - tol. Negative
/// rounding-noise eigenvalues are clamped to zero before summing.
int select_rank_energy(const Vec& lambda_desc, double tol);

/// Grow the sequence one vector at a time, starting from the projected
/// source M^{-1}b, until the smallest eigenvalue of K_i falls to tol
/// (absolute; tol = 0 means the machine floor 1e-14 * K(0,0)) or ell_max
/// columns are reached. On a break the defective last direction is
/// discarded; when ell_max is exhausted the energy criterion selects r.
KrylovBasis adaptive_basis(const SpdSolver& a_solver, const SparseMat& M, const SparseMat& A,
                           const Vec& b, int ell_max, double tol);

/// Fixed-depth block variant: ell blocks seeded by the columns of `seed`,
/// rank selected by the energy criterion.
KrylovBasis block_eig_basis(const SpdSolver& a_solver, const SparseMat& M, const SparseMat& A,
                            const Mat& seed, int ell, double tol);

struct DecayRecord {
  int index = 0;       // 1-based eigenvalue index
  double eigenvalue = 0.0;
  double bound = 0.0;  // NaN when no Hankel bound applies at this index
  bool within_bound = true;
  double ratio = 0.0;  // lambda_i / lambda_{i-1}; NaN at index 1
};

/// Hankel spectral-decay check: lambda_{2k+1} <= 16 E^{-2k+2} lambda_1 with
/// E = exp(pi^2 / (4 log(8 floor(r/2) / pi))), plus per-index decay ratios.
std::vector<DecayRecord> decay_report(const Vec& lambda_desc);

void write_decay_csv(const std::vector<DecayRecord>& records, std::ostream& out);

/// Rebuild K_r from the generalized eigenpairs of (A, M) through the
/// Vandermonde factorization K_r = (V W)(V W)^T and return the max-abs
/// discrepancy against the directly assembled K_r. Dense; desk scale only.
double vandermonde_check(const SparseMat& M, const SparseMat& A, const Vec& b, int r,
                         int dense_cap = 2000);

}  // namespace krom
