// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "krom/assembly.hpp"
#include "krom/krylov.hpp"
#include "krom/mesh.hpp"
#include "krom/sources.hpp"
#include "krom/spla.hpp"

using namespace krom;

namespace {

SparseMat sparse_from(const Mat& dense) {
  SparseMat s(dense.rows(), dense.cols());
  std::vector<Eigen::Triplet<double>> trip;
  for (Eigen::Index i = 0; i < dense.rows(); ++i)
    for (Eigen::Index j = 0; j < dense.cols(); ++j)
      if (dense(i, j) != 0.0) trip.emplace_back(i, j, dense(i, j));
  s.setFromTriplets(trip.begin(), trip.end());
  return s;
}

}  // namespace

TEST_CASE("solver: identity, 2x2 closed form, non-SPD rejection") {
  SUBCASE("identity returns rhs") {
    Mat I = Mat::Identity(5, 5);
    const SpdSolver solver(sparse_from(I));
    Vec b(5);
    b << 1, -2, 3, 0.5, 4;
    CHECK((solver.solve(b) - b).norm() == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("[[2,1],[1,2]] x = (1,1) gives x = (1/3,1/3)") {
    Mat A(2, 2);
    A << 2, 1, 1, 2;
    const SpdSolver solver(sparse_from(A));
    Vec b = Vec::Ones(2);
    const Vec x = solver.solve(b);
    CHECK(x[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(x[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  }
  SUBCASE("indefinite matrix reports non-positive pivot") {
    Mat A(2, 2);
    A << 1, 2, 2, 1;
    CHECK_THROWS(SpdSolver(sparse_from(A)));
  }
  SUBCASE("dimension mismatch rejected") {
    Mat A = Mat::Identity(3, 3);
    const SpdSolver solver(sparse_from(A));
    CHECK_THROWS(solver.solve(Vec(Vec::Ones(4))));
  }
}

TEST_CASE("assembled system: residual contract and multi-RHS") {
  const FemSpace space = make_space(build_mesh(2, 3), 1);
  const auto [M, A] = assemble_operators(space);
  std::mt19937 rng(11);
  std::normal_distribution<double> gauss;
  Vec b(space.n_dofs);
  for (int i = 0; i < space.n_dofs; ++i) b[i] = gauss(rng);

  SUBCASE("direct path") {
    const SpdSolver solver(A);
    const Vec x = solver.solve(b);
    CHECK((A * x - b).norm() <= 1e-10 * b.norm());
    Mat B(space.n_dofs, 2);
    B.col(0) = b;
    B.col(1) = b;
    const Mat X = solver.solve(B);
    CHECK((X.col(0) - X.col(1)).norm() == 0.0);
    CHECK((A * X.col(0) - b).norm() <= 1e-10 * b.norm());
  }
  SUBCASE("conjugate-gradient fallback meets the same contract") {
    const SpdSolver solver(A, SolveMethod::conjugate_gradient);
    const Vec x = solver.solve(b);
    CHECK((A * x - b).norm() <= 1e-10 * b.norm());
  }
}

TEST_CASE("sym_eig: closed forms, contracts, Eigen oracle") {
  SUBCASE("diag(3,1)") {
    Mat K(2, 2);
    K << 3, 0, 0, 1;
    const SymEig e = sym_eig(K);
    CHECK(e.values[0] == doctest::Approx(3.0));
    CHECK(e.values[1] == doctest::Approx(1.0));
    CHECK(std::abs(e.vectors(0, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(e.vectors(1, 1)) == doctest::Approx(1.0));
  }
  SUBCASE("[[0,1],[1,0]]") {
    Mat K(2, 2);
    K << 0, 1, 1, 0;
    const SymEig e = sym_eig(K);
    CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.values[1] == doctest::Approx(-1.0).epsilon(1e-14));
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(e.vectors(0, 0) * e.vectors(1, 0)) == doctest::Approx(s * s).epsilon(1e-12));
  }
  SUBCASE("non-symmetric input rejected") {
    Mat K(2, 2);
    K << 1, 2, 0, 1;
    CHECK_THROWS(sym_eig(K));
  }
  SUBCASE("random symmetric matrices match Eigen's solver") {
    std::mt19937 rng(23);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 5; ++trial) {
      const int n = 8 + trial * 4;
      Mat X(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) X(i, j) = gauss(rng);
      Mat K = 0.5 * (X + X.transpose());
      const SymEig e = sym_eig(K);
      const double scale = K.cwiseAbs().maxCoeff();
      CHECK((K * e.vectors - e.vectors * e.values.asDiagonal()).cwiseAbs().maxCoeff() <=
            1e-12 * scale);
      CHECK((e.vectors.transpose() * e.vectors - Mat::Identity(n, n)).cwiseAbs().maxCoeff() <=
            1e-12);
      Eigen::SelfAdjointEigenSolver<Mat> ref(K);
      for (int i = 0; i < n; ++i)
        CHECK(e.values[i] == doctest::Approx(ref.eigenvalues()[n - 1 - i]).epsilon(1e-11));
      // eigenvalue sum equals the trace
      CHECK(e.values.sum() == doctest::Approx(K.trace()).epsilon(1e-12));
    }
  }
}

TEST_CASE("sym_eig reconstructs an assembled Gram matrix") {
  const FemSpace space = make_space(build_mesh(2, 3), 1);
  const auto [M, A] = assemble_operators(space);
  const Vec b = assemble_load(space, poly4_source());
  const SpdSolver solver(A);
  const Mat U = krylov_sequence(solver, M, b, 8);
  Mat K = U.transpose() * (A * U);
  K = 0.5 * (K + K.transpose());
  const SymEig e = sym_eig(K);
  const Mat back = e.vectors * e.values.asDiagonal() * e.vectors.transpose();
  CHECK((K - back).cwiseAbs().maxCoeff() <= 1e-12 * K.cwiseAbs().maxCoeff());
}

TEST_CASE("a_inner and a_norm") {
  const FemSpace space = make_space(build_mesh(2, 2), 1);
  const auto [M, A] = assemble_operators(space);
  const int n = space.n_dofs;

  SUBCASE("zero vector") {
    CHECK(a_inner(A, Vec::Zero(n), Vec::Zero(n)) == 0.0);
    CHECK(a_norm(A, Vec::Zero(n)) == 0.0);
  }
  SUBCASE("identity weight reduces to the dot product") {
    const SparseMat I = sparse_from(Mat::Identity(3, 3));
    Vec x(3), y(3);
    x << 1, 2, 3;
    y << -1, 0, 2;
    CHECK(a_inner(I, x, y) == doctest::Approx(x.dot(y)).epsilon(1e-15));
  }
  SUBCASE("Cauchy-Schwarz on random vectors") {
    std::mt19937 rng(31);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 20; ++trial) {
      Vec x(n), y(n);
      for (int i = 0; i < n; ++i) {
        x[i] = gauss(rng);
        y[i] = gauss(rng);
      }
      CHECK(std::abs(a_inner(A, x, y)) <= a_norm(A, x) * a_norm(A, y) * (1.0 + 1e-12));
    }
  }
}
