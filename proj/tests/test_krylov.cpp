// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/LU>

#include "krom/assembly.hpp"
#include "krom/krylov.hpp"
#include "krom/mesh.hpp"
#include "krom/sources.hpp"
#include "krom/spla.hpp"

using namespace krom;

namespace {

struct Problem {
  FemSpace space;
  SparseMat M, A;
  Vec b;
};

Problem paper_problem(int level) {
  Problem p{make_space(build_mesh(2, level), 1), {}, {}, {}};
  auto ops = assemble_operators(p.space);
  p.M = std::move(ops.mass);
  p.A = std::move(ops.stiffness);
  p.b = assemble_load(p.space, poly4_source());
  return p;
}

SparseMat sparse_identity(int n) {
  SparseMat I(n, n);
  I.setIdentity();
  return I;
}

}  // namespace

TEST_CASE("krylov_sequence: zero seed, fixed point, dense-LU oracle") {
  SUBCASE("zero seed gives zero columns") {
    const SparseMat I = sparse_identity(4);
    const SpdSolver solver(I);
    const Mat U = krylov_sequence(solver, I, Vec(Vec::Zero(4)), 3);
    CHECK(U.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("A = M = I keeps every column equal to b") {
    const SparseMat I = sparse_identity(5);
    const SpdSolver solver(I);
    Vec b(5);
    b << 1, 2, -1, 0.5, 3;
    const Mat U = krylov_sequence(solver, I, b, 4);
    for (int j = 0; j < 4; ++j) CHECK((U.col(j) - b).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("multi-column seed advances block by block") {
    const Problem p = paper_problem(2);
    const SpdSolver solver(p.A);
    Mat seed(p.b.size(), 2);
    seed.col(0) = p.b;
    seed.col(1) = 2.5 * p.b;
    const Mat U = krylov_sequence(solver, p.M, seed, 3);
    REQUIRE(U.cols() == 6);
    for (int blk = 1; blk < 3; ++blk) {
      const Mat prev = U.middleCols(2 * (blk - 1), 2);
      const Mat expect = solver.solve(Mat(p.M * prev));
      CHECK((U.middleCols(2 * blk, 2) - expect).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
  SUBCASE("level-3 paper data matches a dense LU oracle") {
    const Problem p = paper_problem(3);
    const SpdSolver solver(p.A);
    const Mat U = krylov_sequence(solver, p.M, p.b, 3);
    const Eigen::PartialPivLU<Mat> lu(Mat(p.A));
    Mat expect(p.b.size(), 3);
    expect.col(0) = lu.solve(p.b);
    expect.col(1) = lu.solve(p.M * expect.col(0));
    expect.col(2) = lu.solve(p.M * expect.col(1));
    const double scale = expect.cwiseAbs().maxCoeff();
    CHECK((U - expect).cwiseAbs().maxCoeff() <= 1e-10 * scale);
  }
}

TEST_CASE("gram_extend: closed forms and full-recompute oracle") {
  const Problem p = paper_problem(3);
  const SpdSolver solver(p.A);
  const Mat U = krylov_sequence(solver, p.M, p.b, 5);

  SUBCASE("i = 1") {
    const Mat K1 = gram_extend(Mat(0, 0), U.leftCols(1), p.A);
    CHECK(K1(0, 0) == doctest::Approx(a_inner(p.A, U.col(0), U.col(0))).epsilon(1e-14));
  }
  SUBCASE("i = 2 block form") {
    const Mat K1 = gram_extend(Mat(0, 0), U.leftCols(1), p.A);
    const Mat K2 = gram_extend(K1, U.leftCols(2), p.A);
    CHECK(K2(0, 1) == doctest::Approx(a_inner(p.A, U.col(0), U.col(1))).epsilon(1e-12));
    CHECK(K2(1, 0) == K2(0, 1));
    CHECK(K2(1, 1) == doctest::Approx(a_inner(p.A, U.col(1), U.col(1))).epsilon(1e-12));
  }
  SUBCASE("i = 5 matches the full U^T A U") {
    Mat K(0, 0);
    for (int i = 1; i <= 5; ++i) K = gram_extend(K, U.leftCols(i), p.A);
    const Mat full = U.transpose() * (p.A * U);
    CHECK((K - full).cwiseAbs().maxCoeff() <= 1e-12 * full.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("Hankel anti-diagonal constancy of the assembled Gram matrix") {
  for (int level : {2, 3, 4}) {
    const Problem p = paper_problem(level);
    const SpdSolver solver(p.A);
    const Mat U = krylov_sequence(solver, p.M, p.b, 6);
    const Mat K = U.transpose() * (p.A * U);  // fresh products, no copying
    for (int i = 1; i < K.rows(); ++i)
      for (int j = 0; j + 1 < K.cols(); ++j)
        CHECK(std::abs(K(i, j) - K(i - 1, j + 1)) <= 1e-8 * K(0, 0));
  }
}

TEST_CASE("select_rank_energy") {
  SUBCASE("tiny trailing eigenvalue is ignored at loose tolerance") {
    Vec lam(2);
    lam << 1.0, 1e-16;
    CHECK(select_rank_energy(lam, 1e-14) == 1);
  }
  SUBCASE("tol = 0 keeps everything") {
    Vec lam = Vec::Ones(4);
    CHECK(select_rank_energy(lam, 0.0) == 4);
  }
  SUBCASE("prefix-scan oracle on an assembled spectrum") {
    const Problem p = paper_problem(3);
    const SpdSolver solver(p.A);
    const Mat U = krylov_sequence(solver, p.M, p.b, 8);
    Mat K = U.transpose() * (p.A * U);
    K = 0.5 * (K + K.transpose());
    const SymEig e = sym_eig(K);
    const double tol = 1e-14;
    const int got = select_rank_energy(e.values, tol);
    // oracle: scan every prefix
    Vec lam = e.values.cwiseMax(0.0);
    const double total = lam.sum();
    int expect = lam.size();
    for (int r = 1; r <= lam.size(); ++r) {
      if (lam.head(r).sum() / total >= 1.0 - tol) {
        expect = r;
        break;
      }
    }
    CHECK(got == expect);
  }
  SUBCASE("zero data rejected") { CHECK_THROWS(select_rank_energy(Vec(Vec::Zero(3)), 1e-10)); }
}

TEST_CASE("adaptive_basis: duplicate-direction break and contracts") {
  SUBCASE("A = M = I stops at the second vector with r = 1") {
    const SparseMat I = sparse_identity(6);
    const SpdSolver solver(I);
    Vec b(6);
    b << 1, -1, 2, 0, 1, 0.5;
    const KrylovBasis basis = adaptive_basis(solver, I, I, b, 5, 1e-12);
    CHECK(basis.break_index == 2);
    CHECK(basis.rank == 1);
    CHECK(basis.Q.cols() == 1);
  }
  SUBCASE("zero data rejected") {
    const SparseMat I = sparse_identity(4);
    const SpdSolver solver(I);
    CHECK_THROWS(adaptive_basis(solver, I, I, Vec(Vec::Zero(4)), 5, 1e-12));
  }
  SUBCASE("paper 2D setup selects r = 6 and an A-orthonormal Q") {
    const Problem p = paper_problem(4);
    const SpdSolver solver(p.A);
    const KrylovBasis basis = adaptive_basis(solver, p.M, p.A, p.b, 10, 1e-14);
    CHECK(basis.rank == 6);
    const Mat G = basis.Q.transpose() * (p.A * basis.Q);
    CHECK((G - Mat::Identity(basis.rank, basis.rank)).cwiseAbs().maxCoeff() <= 1e-8);
    // eigenvalues positive and non-increasing down to the truncation point
    for (int i = 0; i < basis.rank; ++i) {
      CHECK(basis.lambda[i] > 0.0);
      if (i > 0) CHECK(basis.lambda[i] <= basis.lambda[i - 1]);
    }
  }
  SUBCASE("span preservation: u_j projects back onto range(Q)") {
    const Problem p = paper_problem(3);
    const SpdSolver solver(p.A);
    const KrylovBasis basis = adaptive_basis(solver, p.M, p.A, p.b, 10, 1e-14);
    for (int j = 0; j < basis.rank; ++j) {
      const Vec u = basis.U.col(j);
      const Vec proj = basis.Q * (basis.Q.transpose() * (p.A * u));
      CHECK((u - proj).norm() <= 1e-6 * u.norm());
    }
  }
  SUBCASE("lambda_min/lambda_max falls at least geometrically in r") {
    const Problem p = paper_problem(4);
    const SpdSolver solver(p.A);
    const Mat U = krylov_sequence(solver, p.M, p.b, 8);
    double prev_ratio = 0.0;
    for (int r = 2; r <= 8; ++r) {
      Mat K = U.leftCols(r).transpose() * (p.A * U.leftCols(r));
      K = 0.5 * (K + K.transpose());
      const SymEig e = sym_eig(K);
      const double ratio = e.values[r - 1] / e.values[0];
      if (r > 2) CHECK(ratio <= 0.5 * prev_ratio);
      prev_ratio = ratio;
    }
  }
}

TEST_CASE("decay_report") {
  SUBCASE("r = 2 carries no bound rows") {
    Vec lam(2);
    lam << 1.0, 1.0;
    const auto records = decay_report(lam);
    REQUIRE(records.size() == 2);
    CHECK(!std::isfinite(records[0].bound));
    CHECK(!std::isfinite(records[1].bound));
  }
  SUBCASE("synthetic geometric spectrum passes every bound") {
    Vec lam(7);
    for (int i = 0; i < 7; ++i) lam[i] = std::pow(10.0, -3.0 * i);
    const auto records = decay_report(lam);
    for (const auto& rec : records) {
      if (std::isfinite(rec.bound)) CHECK(rec.within_bound);
      if (rec.index > 1) CHECK(rec.ratio == doctest::Approx(1e-3).epsilon(1e-10));
    }
  }
  SUBCASE("level-5 paper setup decays monotonically and exponentially") {
    const Problem p = paper_problem(5);
    const SpdSolver solver(p.A);
    const Mat U = krylov_sequence(solver, p.M, p.b, 8);
    Mat K = U.transpose() * (p.A * U);
    K = 0.5 * (K + K.transpose());
    const SymEig e = sym_eig(K);
    const auto records = decay_report(e.values);
    REQUIRE(records.size() == 8);
    for (const auto& rec : records) {
      CHECK(rec.eigenvalue > 0.0);
      if (rec.index > 1) CHECK(rec.ratio < 0.2);
      if (std::isfinite(rec.bound)) CHECK(rec.within_bound);
    }
    std::ostringstream os;
    write_decay_csv(records, os);
    CHECK(os.str().find("index,eigenvalue,theorem_bound,ratio") == 0);
  }
}

TEST_CASE("vandermonde_check") {
  SUBCASE("N = 1 is exact") {
    const FemSpace space = make_space(build_mesh(2, 1), 1);
    const auto [M, A] = assemble_operators(space);
    const Vec b = assemble_load(space, poly4_source());
    const double k00 = b[0] * b[0] / A.coeff(0, 0);  // scale of K(0,0)
    CHECK(vandermonde_check(M, A, b, 1) <= 1e-14 * k00);
  }
  SUBCASE("level 2, r = 3") {
    const Problem p = paper_problem(2);
    const SpdSolver solver(p.A);
    const Mat U = krylov_sequence(solver, p.M, p.b, 3);
    const Mat K = U.transpose() * (p.A * U);
    CHECK(vandermonde_check(p.M, p.A, p.b, 3) <= 1e-8 * K(0, 0));
  }
  SUBCASE("level 3, r = 5") {
    const Problem p = paper_problem(3);
    const SpdSolver solver(p.A);
    const Mat U = krylov_sequence(solver, p.M, p.b, 5);
    const Mat K = U.transpose() * (p.A * U);
    CHECK(vandermonde_check(p.M, p.A, p.b, 5) <= 1e-8 * K(0, 0));
  }
  SUBCASE("dense cap respected") {
    const Problem p = paper_problem(5);
    CHECK_THROWS(vandermonde_check(p.M, p.A, p.b, 3, /*dense_cap=*/100));
  }
}
