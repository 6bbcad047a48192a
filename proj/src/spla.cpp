// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#include "krom/spla.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

namespace krom {

struct SpdSolver::Impl {
  Eigen::SimplicialLLT<SparseMat> llt;
  Eigen::ConjugateGradient<SparseMat, Eigen::Lower | Eigen::Upper,
                           Eigen::IncompleteCholesky<double>>
      cg;
  SparseMat matrix;  // kept for the CG path
};

SpdSolver::SpdSolver(const SparseMat& A, SolveMethod method)
    : n_(A.rows()), method_(method) {
  if (A.rows() != A.cols()) throw std::invalid_argument("SpdSolver: matrix must be square");
  auto impl = std::make_shared<Impl>();
  if (method_ == SolveMethod::direct) {
    impl->llt.compute(A);
    if (impl->llt.info() != Eigen::Success)
      throw std::runtime_error("SpdSolver: Cholesky factorization failed (non-positive pivot; matrix not SPD?)");
  } else {
    impl->matrix = A;
    impl->cg.setTolerance(1e-12);
    impl->cg.setMaxIterations(10 * A.rows());
    impl->cg.compute(impl->matrix);
    if (impl->cg.info() != Eigen::Success)
      throw std::runtime_error("SpdSolver: CG preconditioner setup failed (matrix not SPD?)");
  }
  impl_ = std::move(impl);
}

Vec SpdSolver::solve(const Vec& b) const {
  if (b.size() != n_) throw std::invalid_argument("SpdSolver::solve: dimension mismatch");
  if (method_ == SolveMethod::direct) return impl_->llt.solve(b);
  Vec x = impl_->cg.solve(b);
  if (impl_->cg.info() != Eigen::Success)
    throw std::runtime_error("SpdSolver::solve: CG did not converge");
  return x;
}

Mat SpdSolver::solve(const Mat& B) const {
  if (B.rows() != n_) throw std::invalid_argument("SpdSolver::solve: dimension mismatch");
  if (method_ == SolveMethod::direct) return impl_->llt.solve(B);
  Mat X(B.rows(), B.cols());
  for (Eigen::Index j = 0; j < B.cols(); ++j) X.col(j) = solve(Vec(B.col(j)));
  return X;
}

SymEig sym_eig(const Mat& K) {
  const Eigen::Index n = K.rows();
  if (K.cols() != n) throw std::invalid_argument("sym_eig: matrix must be square");
  SymEig out;
  if (n == 0) {
    out.vectors = Mat(0, 0);
    out.values = Vec(0);
    return out;
  }
  const double scale = K.cwiseAbs().maxCoeff();
  if (scale > 0.0) {
    const double asym = (K - K.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale) throw std::invalid_argument("sym_eig: matrix is not symmetric");
  }

  Mat a = 0.5 * (K + K.transpose());
  Mat v = Mat::Identity(n, n);
  for (int sweep = 0; sweep < 64; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        const double small =
            1e-16 * std::sqrt(std::max(a(p, p), 0.0) * std::max(a(q, q), 0.0));
        if (std::abs(apq) <= small || apq == 0.0) continue;
        rotated = true;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                    : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - s * akq;
          a(k, q) = a(q, k) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = a(order[i], order[i]);
    out.vectors.col(i) = v.col(order[i]);
  }
  return out;
}

double a_inner(const SparseMat& A, const Vec& x, const Vec& y) {
  if (x.size() != A.rows() || y.size() != A.cols())
    throw std::invalid_argument("a_inner: dimension mismatch");
  return x.dot(A * y);
}

double a_norm(const SparseMat& A, const Vec& x) {
  const double s = a_inner(A, x, x);
  return s > 0.0 ? std::sqrt(s) : 0.0;
}

void a_orthonormalize(Mat& Q, const SparseMat& A) {
  for (Eigen::Index j = 0; j < Q.cols(); ++j) {
    for (Eigen::Index k = 0; k < j; ++k) {
      const double c = Q.col(k).dot(A * Q.col(j));
      Q.col(j) -= c * Q.col(k);
    }
    const double nrm = a_norm(A, Q.col(j));
    if (nrm <= 0.0) throw std::runtime_error("a_orthonormalize: rank-deficient basis");
    Q.col(j) /= nrm;
  }
}

}  // namespace krom
