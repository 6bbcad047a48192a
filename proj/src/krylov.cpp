// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#include "krom/krylov.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace krom {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTolFloor = 1e-14;  // machine floor for relative truncation

Mat form_q(const Mat& U, const Mat& psi, const Vec& lambda, int r, const SparseMat& A) {
  // When every direction is kept, span(Q) is range(U) and Gram-Schmidt on the
  // columns in sequence order avoids the cancellation that the eigenvector
  // combination suffers once trailing eigenvalues sit ~20 orders below
  // lambda_1 (U * psi_r sums columns of wildly different scale, and the
  // rounding residue gets amplified by lambda_r^{-1/2}).
  if (r == U.cols()) {
    Mat Q = U;
    a_orthonormalize(Q, A);
    return Q;
  }
  Mat Q = U * psi.leftCols(r);
  for (int j = 0; j < r; ++j) Q.col(j) /= std::sqrt(lambda(j));
  // One MGS polish restores A-orthonormality without changing span(Q).
  if (Q.cols() > 0) {
    const Mat G = Q.transpose() * (A * Q);
    const double drift = (G - Mat::Identity(r, r)).cwiseAbs().maxCoeff();
    if (drift > 1e-10) a_orthonormalize(Q, A);
  }
  return Q;
}

}  // namespace

Mat krylov_sequence(const SpdSolver& a_solver, const SparseMat& M, const Mat& seed, int ell) {
  if (ell < 1) throw std::invalid_argument("krylov_sequence: ell must be >= 1");
  if (seed.rows() != a_solver.size())
    throw std::invalid_argument("krylov_sequence: seed dimension mismatch");
  const Eigen::Index w = seed.cols();
  Mat U(seed.rows(), w * ell);
  U.leftCols(w) = a_solver.solve(seed);
  for (int i = 1; i < ell; ++i)
    U.middleCols(i * w, w) = a_solver.solve(Mat(M * U.middleCols((i - 1) * w, w)));
  return U;
}

Mat gram_extend(const Mat& K_prev, const Mat& U, const SparseMat& A) {
  const Eigen::Index i = U.cols();
  if (i == 0) return Mat(0, 0);
  if (K_prev.rows() != i - 1 || K_prev.cols() != i - 1)
    throw std::invalid_argument("gram_extend: K_prev inconsistent with U");
  Mat K(i, i);
  const Vec w = A * U.col(i - 1);
  if (i == 1) {
    K(0, 0) = U.col(0).dot(w);
    return K;
  }
  K.topLeftCorner(i - 1, i - 1) = K_prev;
  for (Eigen::Index j = 0; j + 2 < i; ++j) K(i - 1, j) = K_prev(i - 2, j + 1);
  K(i - 1, i - 2) = U.col(i - 2).dot(w);
  K(i - 1, i - 1) = U.col(i - 1).dot(w);
  for (Eigen::Index j = 0; j + 1 < i; ++j) K(j, i - 1) = K(i - 1, j);
  return K;
}

int select_rank_energy(const Vec& lambda_desc, double tol) {
  if (!(tol >= 0.0 && tol < 1.0))
    throw std::invalid_argument("select_rank_energy: tol must lie in [0, 1)");
  const Vec lam = lambda_desc.cwiseMax(0.0);
  const Eigen::Index n = lam.size();
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) total += lam(i);
  if (total <= 0.0) throw std::runtime_error("select_rank_energy: zero data");
  double partial = 0.0;
  for (Eigen::Index r = 1; r <= n; ++r) {
    partial += lam(r - 1);
    if (partial / total >= 1.0 - tol) return static_cast<int>(r);
  }
  return static_cast<int>(n);
}

KrylovBasis adaptive_basis(const SpdSolver& a_solver, const SparseMat& M, const SparseMat& A,
                           const Vec& b, int ell_max, double tol) {
  if (ell_max < 1) throw std::invalid_argument("adaptive_basis: ell_max must be >= 1");
  if (tol < 0.0) throw std::invalid_argument("adaptive_basis: tol must be nonnegative");
  if (b.size() != a_solver.size())
    throw std::invalid_argument("adaptive_basis: rhs dimension mismatch");
  if (b.norm() == 0.0) throw std::runtime_error("adaptive_basis: zero data");

  const Eigen::Index n = b.size();
  Mat U(n, 0);
  Mat K(0, 0);
  SymEig eig;
  int break_index = 0;
  const SpdSolver m_solver(M);
  for (int i = 1; i <= ell_max; ++i) {
    // The sequence starts at the projected source itself; the remaining
    // columns are its images under the solve operator.
    const Vec u = (i == 1) ? m_solver.solve(b) : a_solver.solve(Vec(M * U.col(i - 2)));
    U.conservativeResize(Eigen::NoChange, i);
    U.col(i - 1) = u;
    K = gram_extend(K, U, A);
    eig = sym_eig(K);
    // tol acts on the eigenvalues directly; tol = 0 means the relative
    // machine floor (an exact zero threshold would never fire on rounding
    // noise of a singular Gram matrix).
    const double threshold = tol > 0.0 ? tol : kTolFloor * K(0, 0);
    if (eig.values(i - 1) <= threshold) {
      break_index = i;
      break;
    }
  }

  KrylovBasis basis;
  if (break_index == 1) throw std::runtime_error("adaptive_basis: zero data");
  basis.U = std::move(U);
  basis.K = std::move(K);
  basis.psi = eig.vectors;
  basis.lambda = eig.values;
  // On a break the last eigendirection is the defective one; everything
  // else of the final Gram matrix is kept.
  basis.rank = break_index > 0 ? break_index - 1 : select_rank_energy(basis.lambda, tol);
  basis.break_index = break_index;
  basis.Q = form_q(basis.U, basis.psi, basis.lambda, basis.rank, A);
  return basis;
}

KrylovBasis block_eig_basis(const SpdSolver& a_solver, const SparseMat& M, const SparseMat& A,
                            const Mat& seed, int ell, double tol) {
  if (seed.cols() == 0 || seed.norm() == 0.0)
    throw std::runtime_error("block_eig_basis: zero data");
  KrylovBasis basis;
  basis.U = krylov_sequence(a_solver, M, seed, ell);
  Mat K = basis.U.transpose() * (A * basis.U);
  basis.K = 0.5 * (K + K.transpose());
  SymEig eig = sym_eig(basis.K);
  basis.psi = std::move(eig.vectors);
  basis.lambda = std::move(eig.values);
  basis.rank = select_rank_energy(basis.lambda, tol);
  basis.Q = form_q(basis.U, basis.psi, basis.lambda, basis.rank, A);
  return basis;
}

std::vector<DecayRecord> decay_report(const Vec& lambda_desc) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const int r = static_cast<int>(lambda_desc.size());
  std::vector<DecayRecord> records;
  records.reserve(r);
  for (int i = 1; i <= r; ++i) {
    DecayRecord rec;
    rec.index = i;
    rec.eigenvalue = lambda_desc(i - 1);
    rec.bound = nan;
    rec.ratio = i > 1 ? lambda_desc(i - 1) / lambda_desc(i - 2) : nan;
    records.push_back(rec);
  }
  if (r >= 3) {
    const double arg = 8.0 * std::floor(r / 2.0) / kPi;
    const double decay = std::exp(kPi * kPi / (4.0 * std::log(arg)));
    for (int k = 1; 2 * k + 1 <= r; ++k) {
      const int idx = 2 * k + 1;
      const double bound = 16.0 * std::pow(decay, -2.0 * k + 2.0) * lambda_desc(0);
      records[idx - 1].bound = bound;
      records[idx - 1].within_bound = lambda_desc(idx - 1) <= bound;
    }
  }
  return records;
}

void write_decay_csv(const std::vector<DecayRecord>& records, std::ostream& out) {
  out << "index,eigenvalue,theorem_bound,ratio\n";
  out.precision(17);
  for (const auto& rec : records) {
    out << rec.index << ',' << rec.eigenvalue << ',';
    if (std::isfinite(rec.bound)) out << rec.bound;
    out << ',';
    if (std::isfinite(rec.ratio)) out << rec.ratio;
    out << '\n';
  }
}

double vandermonde_check(const SparseMat& M, const SparseMat& A, const Vec& b, int r,
                         int dense_cap) {
  const Eigen::Index n = A.rows();
  if (n > dense_cap) throw std::runtime_error("vandermonde_check: size exceeds dense cap");
  if (r < 1 || r > n) throw std::invalid_argument("vandermonde_check: invalid rank");

  const SpdSolver solver(A);
  const Mat U = krylov_sequence(solver, M, b, r);
  Mat K = U.transpose() * (A * U);
  K = 0.5 * (K + K.transpose());

  Mat Ad(A), Md(M);
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> ges(Ad, Md);
  if (ges.info() != Eigen::Success)
    throw std::runtime_error("vandermonde_check: eigensolver failed");
  const Vec lam = ges.eigenvalues();
  Mat phi = ges.eigenvectors();  // M-normalized; rescale to A-orthonormal
  for (Eigen::Index j = 0; j < n; ++j) phi.col(j) /= std::sqrt(lam(j));

  const Vec bhat = Md.llt().solve(b);
  const Vec abhat = Ad * bhat;
  Mat vw(r, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double coeff = phi.col(j).dot(abhat);  // expansion of bhat in the A-orthonormal basis
    const double mu = 1.0 / lam(j);
    double p = coeff * mu;
    for (int i = 0; i < r; ++i) {
      vw(i, j) = p;
      p *= mu;
    }
  }
  const Mat G = vw * vw.transpose();
  return (K - G).cwiseAbs().maxCoeff();
}

}  // namespace krom
