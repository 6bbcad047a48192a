// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "krom/assembly.hpp"
#include "krom/isvd.hpp"
#include "krom/mesh.hpp"
#include "krom/rom.hpp"
#include "krom/sources.hpp"
#include "krom/spla.hpp"

using namespace krom;

namespace {

struct Weighted {
  FemSpace space;
  SparseMat A;
};

Weighted level3_weight() {
  Weighted w{make_space(build_mesh(2, 3), 1), {}};
  w.A = assemble_operators(w.space).stiffness;
  return w;
}

Mat random_matrix(int rows, int cols, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss;
  Mat X(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) X(i, j) = gauss(rng);
  return X;
}

// dense oracle: singular values are the square roots of eig(U^T A U)
Vec gram_singular_values(const Mat& U, const SparseMat& A) {
  Mat G = U.transpose() * (A * U);
  G = 0.5 * (G + G.transpose());
  const SymEig e = sym_eig(G);
  Vec s(e.values.size());
  for (int i = 0; i < s.size(); ++i) s[i] = std::sqrt(std::max(e.values[i], 0.0));
  return s;
}

}  // namespace

TEST_CASE("isvd_init and trivial states") {
  const IsvdState st = isvd_init(1e-12);
  CHECK(st.rank() == 0);
  CHECK(st.n_ingested == 0);
  CHECK_THROWS(isvd_init(-1.0));
}

TEST_CASE("first column gives the exact rank-1 factorization") {
  const Weighted w = level3_weight();
  const Mat X = random_matrix(w.space.n_dofs, 1, 3);
  IsvdState st = isvd_init(1e-12);
  isvd_update(st, X.col(0), w.A);
  REQUIRE(st.rank() == 1);
  const double s = a_norm(w.A, X.col(0));
  CHECK(st.sigma[0] == doctest::Approx(s).epsilon(1e-12));
  CHECK(a_norm(w.A, st.Q.col(0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(st.R(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("duplicate column stays rank 1 with sigma = s * sqrt(2)") {
  const Weighted w = level3_weight();
  const Mat X = random_matrix(w.space.n_dofs, 1, 5);
  const Vec c = X.col(0);
  IsvdState st = isvd_init(1e-10);
  isvd_update(st, c, w.A);
  isvd_update(st, c, w.A);
  REQUIRE(st.rank() == 1);
  // oracle: dense eigendecomposition of the 2-column Gram matrix
  Mat two(c.size(), 2);
  two.col(0) = c;
  two.col(1) = c;
  const Vec s_oracle = gram_singular_values(two, w.A);
  CHECK(st.sigma[0] == doctest::Approx(s_oracle[0]).epsilon(1e-10));
  CHECK(st.sigma[0] == doctest::Approx(std::sqrt(2.0) * a_norm(w.A, c)).epsilon(1e-10));
  CHECK(st.n_ingested == 2);
  CHECK(st.R.rows() == 2);
}

TEST_CASE("zero columns are bookkept without growing the rank") {
  const Weighted w = level3_weight();
  IsvdState st = isvd_init(1e-12);
  isvd_update(st, Vec(Vec::Zero(w.space.n_dofs)), w.A);
  CHECK(st.rank() == 0);
  CHECK(st.n_ingested == 1);
  const Mat X = random_matrix(w.space.n_dofs, 1, 7);
  isvd_update(st, X.col(0), w.A);
  REQUIRE(st.rank() == 1);
  CHECK(st.R.rows() == 2);
  CHECK(st.R(0, 0) == doctest::Approx(0.0));  // zero column's row
  CHECK(st.R(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("random stream matches the dense Gram oracle") {
  const Weighted w = level3_weight();
  const Mat X = random_matrix(w.space.n_dofs, 12, 11);
  IsvdState st = isvd_init(1e-12);
  isvd_update_block(st, X, w.A);
  REQUIRE(st.rank() == 12);
  const Vec s_oracle = gram_singular_values(X, w.A);
  for (int i = 0; i < 12; ++i)
    CHECK(st.sigma[i] == doctest::Approx(s_oracle[i]).epsilon(1e-8));
  const Mat G = st.Q.transpose() * (w.A * st.Q);
  CHECK((G - Mat::Identity(12, 12)).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK((st.R.transpose() * st.R - Mat::Identity(12, 12)).cwiseAbs().maxCoeff() <= 1e-8);
  // reconstruction: U = Q Sigma R^T column by column in the A norm
  const Mat back = st.Q * st.sigma.asDiagonal() * st.R.transpose();
  for (int j = 0; j < 12; ++j)
    CHECK(a_norm(w.A, Vec(X.col(j) - back.col(j))) <= 1e-8 * st.sigma[0]);
}

TEST_CASE("ingestion order leaves the singular values unchanged") {
  const Weighted w = level3_weight();
  const Mat X = random_matrix(w.space.n_dofs, 8, 13);
  const Vec s_oracle = gram_singular_values(X, w.A);
  std::vector<int> order(8);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937 rng(17);
  for (int trial = 0; trial < 3; ++trial) {
    std::shuffle(order.begin(), order.end(), rng);
    IsvdState st = isvd_init(1e-12);
    for (int j : order) isvd_update(st, X.col(j), w.A);
    REQUIRE(st.rank() == 8);
    for (int i = 0; i < 8; ++i)
      CHECK(st.sigma[i] == doctest::Approx(s_oracle[i]).epsilon(1e-6));
  }
}

TEST_CASE("sigma_1 never decreases during ingestion") {
  const Weighted w = level3_weight();
  const Mat X = random_matrix(w.space.n_dofs, 10, 19);
  IsvdState st = isvd_init(1e-12);
  double prev = 0.0;
  for (int j = 0; j < 10; ++j) {
    isvd_update(st, X.col(j), w.A);
    CHECK(st.sigma[0] >= prev - 1e-12 * st.sigma[0]);
    prev = st.sigma[0];
  }
}

TEST_CASE("truncation keeps per-column error at the discarded level") {
  const Weighted w = level3_weight();
  // decaying column scales force truncation at a visible threshold
  Mat X = random_matrix(w.space.n_dofs, 8, 23);
  for (int j = 0; j < 8; ++j) X.col(j) *= std::pow(10.0, -j);
  const double tol = 1e-4;
  IsvdState st = isvd_init(tol);
  isvd_update_block(st, X, w.A);
  CHECK(st.rank() < 8);
  CHECK(st.peak_rank >= st.rank());
  const Vec s_oracle = gram_singular_values(X, w.A);
  const double discarded = s_oracle[st.rank()];
  const Mat back = st.Q * st.sigma.asDiagonal() * st.R.transpose();
  for (int j = 0; j < 8; ++j) {
    const double err = a_norm(w.A, Vec(X.col(j) - back.col(j)));
    CHECK(err <= 8.0 * discarded + 1e-8 * st.sigma[0]);
  }
}

TEST_CASE("thin_svd closed forms and reconstruction") {
  SUBCASE("duplicated column has rank 1 and sigma_1 = sqrt(2)|b|") {
    Vec b(4);
    b << 1, 2, -2, 0.5;
    Mat B(4, 2);
    B.col(0) = b;
    B.col(1) = b;
    const ThinSvd f = thin_svd(B);
    CHECK(f.sigma[0] == doctest::Approx(std::sqrt(2.0) * b.norm()).epsilon(1e-12));
    CHECK(f.sigma[1] <= 1e-12 * f.sigma[0]);
  }
  SUBCASE("orthogonal columns of norms 3,2,1") {
    Mat B = Mat::Zero(5, 3);
    B(0, 0) = 3.0;
    B(1, 1) = 2.0;
    B(2, 2) = 1.0;
    const ThinSvd f = thin_svd(B);
    CHECK(f.sigma[0] == doctest::Approx(3.0));
    CHECK(f.sigma[1] == doctest::Approx(2.0));
    CHECK(f.sigma[2] == doctest::Approx(1.0));
  }
  SUBCASE("random reconstruction to 1e-10") {
    const Mat B = random_matrix(40, 9, 29);
    const ThinSvd f = thin_svd(B);
    const Mat back = f.Q * f.sigma.asDiagonal() * f.R.transpose();
    CHECK((B - back).cwiseAbs().maxCoeff() <= 1e-10 * f.sigma[0]);
  }
  SUBCASE("chebyshev-sampled source block reconstructs to 1e-10") {
    const FemSpace space = make_space(build_mesh(2, 4), 1);
    const auto ms = manufactured_solution(2);
    const auto src = build_source_chebyshev(space, ms.f, 8, 1.0);
    Mat B = Mat::Zero(space.n_dofs, 9);  // initial-data column plus 8 samples
    for (int i = 0; i < 8; ++i) B.col(i + 1) = src.space_loads[i];
    const ThinSvd f = thin_svd(B);
    const Mat back = f.Q * f.sigma.asDiagonal() * f.R.transpose();
    CHECK((B - back).cwiseAbs().maxCoeff() <= 1e-10 * f.sigma[0]);
  }
}
