// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>

#include "krom/types.hpp"

namespace krom {

enum class SolveMethod { direct, conjugate_gradient };

/// Factor-once solver for SPD sparse systems: sparse Cholesky with
/// fill-reducing ordering by default, preconditioned CG as the large-3D
/// fallback. Immutable after construction; concurrent solves are safe.
class SpdSolver {
 public:
  explicit SpdSolver(const SparseMat& A, SolveMethod method = SolveMethod::direct);
  Vec solve(const Vec& b) const;
  Mat solve(const Mat& B) const;
  Eigen::Index size() const { return n_; }
  SolveMethod method() const { return method_; }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  Eigen::Index n_ = 0;
  SolveMethod method_ = SolveMethod::direct;
};

struct SymEig {
  Mat vectors;  // orthonormal columns
  Vec values;   // descending
};

/// Dense symmetric eigendecomposition by cyclic Jacobi rotations, eigenvalues
/// sorted descending. Intended for small matrices (Gram/Hankel blocks).
/// Rejects visibly nonsymmetric input.
SymEig sym_eig(const Mat& K);

double a_inner(const SparseMat& A, const Vec& x, const Vec& y);
double a_norm(const SparseMat& A, const Vec& x);

/// In-place modified Gram-Schmidt in the A inner product.
void a_orthonormalize(Mat& Q, const SparseMat& A);

}  // namespace krom
