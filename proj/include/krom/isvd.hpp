// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "krom/types.hpp"

namespace krom {

/// Running A-weighted core SVD U = Q Sigma R^T with Q^T A Q = I and
/// R^T R = I. Single writer; completed states are immutable and shareable.
struct IsvdState {
  Mat Q;             // N x d, A-orthonormal columns
  Vec sigma;         // d descending positive singular values
  Mat R;             // n_ingested x d
  double trunc_tol = 1e-12;  // relative truncation threshold
  int n_ingested = 0;
  int peak_rank = 0;

  int rank() const { return static_cast<int>(sigma.size()); }
};

IsvdState isvd_init(double trunc_tol);

/// Brand-style bordered update in the A inner product. Columns whose residual
/// falls below trunc_tol * max(sigma_1, |c|_A) are folded in without growing
/// the rank; updated singular values below trunc_tol * sigma_1 are truncated;
/// Q is re-orthonormalized when its drift exceeds 1e-10.
void isvd_update(IsvdState& state, const Vec& column, const SparseMat& A);

void isvd_update_block(IsvdState& state, const Mat& columns, const SparseMat& A);

struct ThinSvd {
  Mat Q;
  Vec sigma;
  Mat R;
};

/// Euclidean thin SVD, B = Q diag(sigma) R^T.
ThinSvd thin_svd(const Mat& B);

}  // namespace krom
