// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#include "krom/isvd.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

#include "krom/spla.hpp"

namespace krom {

IsvdState isvd_init(double trunc_tol) {
  if (trunc_tol < 0.0) throw std::invalid_argument("isvd_init: negative tolerance");
  IsvdState st;
  st.trunc_tol = trunc_tol;
  st.Q = Mat(0, 0);
  st.sigma = Vec(0);
  st.R = Mat(0, 0);
  return st;
}

void isvd_update(IsvdState& st, const Vec& c, const SparseMat& A) {
  if (st.rank() > 0 && c.size() != st.Q.rows())
    throw std::invalid_argument("isvd_update: column dimension mismatch");
  st.n_ingested += 1;

  if (st.rank() == 0) {
    const double s = a_norm(A, c);
    if (s == 0.0) return;  // zero column: counted in the bookkeeping, nothing to store
    st.Q = c / s;
    st.sigma = Vec::Constant(1, s);
    st.R = Mat::Zero(st.n_ingested, 1);
    st.R(st.n_ingested - 1, 0) = 1.0;
    st.peak_rank = std::max(st.peak_rank, 1);
    return;
  }

  const int d = st.rank();
  const Vec ac = A * c;
  Vec m = st.Q.transpose() * ac;
  Vec e = c - st.Q * m;
  {
    // second projection pass; keeps the residual A-orthogonal to range(Q)
    const Vec ae = A * e;
    const Vec m2 = st.Q.transpose() * ae;
    e -= st.Q * m2;
    m += m2;
  }
  const double p = a_norm(A, e);
  const double cnorm = std::sqrt(std::max(c.dot(ac), 0.0));
  const bool in_span = p <= st.trunc_tol * std::max(st.sigma(0), cnorm);

  Mat bordered = Mat::Zero(d + 1, d + 1);
  bordered.topLeftCorner(d, d).diagonal() = st.sigma;
  bordered.topRightCorner(d, 1) = m;
  bordered(d, d) = in_span ? 0.0 : p;

  Eigen::JacobiSVD<Mat> svd(bordered, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const int grown = in_span ? d : d + 1;

  Mat q_new;
  if (in_span) {
    q_new = st.Q * svd.matrixU().topLeftCorner(d, grown);
  } else {
    Mat ext(st.Q.rows(), d + 1);
    ext.leftCols(d) = st.Q;
    ext.col(d) = e / p;
    q_new = ext * svd.matrixU();
  }
  Mat r_ext = Mat::Zero(st.n_ingested, d + 1);
  r_ext.topLeftCorner(st.n_ingested - 1, d) = st.R;
  r_ext(st.n_ingested - 1, d) = 1.0;
  Mat r_new = r_ext * svd.matrixV().leftCols(grown);
  Vec s_new = svd.singularValues().head(grown);

  int keep = 0;
  while (keep < grown && s_new(keep) > st.trunc_tol * s_new(0)) ++keep;
  if (keep == 0) keep = s_new(0) > 0.0 ? 1 : 0;

  st.Q = q_new.leftCols(keep);
  st.sigma = s_new.head(keep);
  st.R = r_new.leftCols(keep);
  st.peak_rank = std::max(st.peak_rank, keep);

  if (keep > 0) {
    const Mat gram = st.Q.transpose() * (A * st.Q);
    const double drift = (gram - Mat::Identity(keep, keep)).cwiseAbs().maxCoeff();
    if (drift > 1e-10) a_orthonormalize(st.Q, A);
  }
}

void isvd_update_block(IsvdState& st, const Mat& columns, const SparseMat& A) {
  for (Eigen::Index j = 0; j < columns.cols(); ++j) isvd_update(st, columns.col(j), A);
}

ThinSvd thin_svd(const Mat& B) {
  Eigen::BDCSVD<Mat> svd(B, Eigen::ComputeThinU | Eigen::ComputeThinV);
  ThinSvd out;
  out.Q = svd.matrixU();
  out.sigma = svd.singularValues();
  out.R = svd.matrixV();
  return out;
}

}  // namespace krom
