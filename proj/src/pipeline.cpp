// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#include "krom/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/QR>

#include "krom/isvd.hpp"

namespace krom {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <class Fn>
auto run_phase(const char* phase, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("phase ") + phase + ": " + e.what());
  }
}

// A-orthonormal representatives of the projection of `block` onto the current
// isvd span, width = numerical rank of the projected block.
Mat block_representatives(const IsvdState& state, const Mat& block, const SparseMat& A,
                          double tol) {
  if (state.rank() == 0) return Mat(block.rows(), 0);
  const Mat C = state.Q.transpose() * (A * block);
  Eigen::ColPivHouseholderQR<Mat> qr(C);
  const Mat& R = qr.matrixR();
  const Eigen::Index kmax = std::min(C.rows(), C.cols());
  const double r00 = kmax > 0 ? std::abs(R(0, 0)) : 0.0;
  Eigen::Index rank = 0;
  while (rank < kmax && std::abs(R(rank, rank)) > tol * r00) ++rank;
  if (rank == 0) return Mat(block.rows(), 0);
  const Mat Z = qr.householderQ() * Mat::Identity(C.rows(), rank);
  return state.Q * Z;
}

Mat isvd_basis(const SpdSolver& solver, const SparseMat& M, const SparseMat& A, const Mat& B,
               const PipelineConfig& cfg, int& peak_dim) {
  // Thin SVD of the load block, then Krylov blocks compressed on the fly.
  const ThinSvd f = thin_svd(B);
  const double s0 = f.sigma.size() > 0 ? f.sigma(0) : 0.0;
  Eigen::Index p = 0;
  while (p < f.sigma.size() && f.sigma(p) > cfg.tol_svd * s0) ++p;
  if (p == 0) return Mat(B.rows(), 0);

  IsvdState state = isvd_init(cfg.tol_svd);
  Mat block = solver.solve(Mat(f.Q.leftCols(p)));
  isvd_update_block(state, block, A);
  for (int i = 2; i <= cfg.ell; ++i) {
    const Mat reps = block_representatives(state, block, A, cfg.tol_svd);
    if (reps.cols() == 0) break;
    block = solver.solve(Mat(M * reps));
    isvd_update_block(state, block, A);
  }
  peak_dim = state.peak_rank;
  return state.Q;
}

}  // namespace

TimeGrid make_time_grid(const FemSpace& space, DtRule rule, double final_time) {
  // equal_h steps by the grid spacing 2^-level; the superlinear rule scales
  // with the cell diameter.
  const double raw = rule == DtRule::equal_h
                         ? std::pow(2.0, -space.mesh.level)
                         : std::pow(space.mesh.mesh_size(), 0.5 * (space.degree + 1));
  const int n = std::max<int>(2, static_cast<int>(std::llround(final_time / raw)));
  return TimeGrid{final_time, n};
}

PipelineResult solve_rom_pipeline(const FemSpace& space, const SparseMat& M, const SparseMat& A,
                                  const ProblemData& data, const PipelineConfig& config) {
  const auto t_total = Clock::now();
  PipelineResult result;
  result.grid = make_time_grid(space, config.dt_rule, config.final_time);

  const Eigen::Index n = A.rows();
  const Vec b0 = data.b0.size() > 0 ? data.b0 : Vec(Vec::Zero(n));
  std::vector<Vec> loads;
  loads.push_back(b0);
  for (const Vec& b : data.source.space_loads) loads.push_back(b);

  double data_scale = 0.0;
  for (const Vec& b : loads) data_scale = std::max(data_scale, b.norm());
  if (data_scale == 0.0) {
    // zero data: rank 0, identically zero trajectory
    result.Q = Mat(n, 0);
    result.trajectory = Mat(0, result.grid.n_steps + 1);
    result.seconds.total = seconds_since(t_total);
    return result;
  }

  const auto t_basis = Clock::now();
  run_phase("basis", [&] {
    const SpdSolver solver(A, config.solve_method);
    switch (config.path) {
      case BasisPath::adaptive: {
        if (data.source.terms() != 1)
          throw std::invalid_argument("adaptive path expects a single source term");
        KrylovBasis basis =
            adaptive_basis(solver, M, A, data.source.space_loads[0], config.ell, config.tol_rank);
        result.Q = std::move(basis.Q);
        result.peak_basis_dim = static_cast<int>(basis.U.cols());
        result.break_index = basis.break_index;
        break;
      }
      case BasisPath::block_eig: {
        Mat B(n, loads.size());
        for (std::size_t j = 0; j < loads.size(); ++j) B.col(j) = loads[j];
        KrylovBasis basis = block_eig_basis(solver, M, A, B, config.ell, config.tol_rank);
        result.Q = std::move(basis.Q);
        result.peak_basis_dim = static_cast<int>(basis.U.cols());
        break;
      }
      case BasisPath::block_isvd: {
        Mat B(n, loads.size());
        for (std::size_t j = 0; j < loads.size(); ++j) B.col(j) = loads[j];
        result.Q = isvd_basis(solver, M, A, B, config, result.peak_basis_dim);
        break;
      }
    }
    return 0;
  });
  result.seconds.basis = seconds_since(t_basis);
  result.rank = static_cast<int>(result.Q.cols());

  if (result.rank == 0) {
    result.trajectory = Mat(0, result.grid.n_steps + 1);
    result.seconds.total = seconds_since(t_total);
    return result;
  }

  const auto t_reduce = Clock::now();
  RomSystem sys = run_phase("reduce", [&] { return reduce(M, A, result.Q, loads); });
  result.seconds.reduce = seconds_since(t_reduce);

  const auto t_int = Clock::now();
  run_phase("integrate", [&] {
    const Vec alpha0 = rom_initial(sys, b0);
    std::vector<Vec> reduced_source(sys.loads.begin() + 1, sys.loads.end());
    const RhsFn rhs = source_rhs(data.source, std::move(reduced_source));
    Trajectory traj =
        integrate(sys.mass_r, sys.stiffness_r, rhs, alpha0, result.grid, config.keep_trajectory);
    if (config.keep_trajectory) {
      result.trajectory = std::move(traj.states);
    } else {
      result.trajectory.resize(result.rank, 1);
      result.trajectory.col(0) = traj.final;
    }
    return 0;
  });
  result.seconds.integrate = seconds_since(t_int);
  result.seconds.total = seconds_since(t_total);
  return result;
}

Trajectory solve_fom(const SparseMat& M, const SparseMat& A, const ProblemData& data,
                     TimeGrid grid, bool keep_all) {
  const Eigen::Index n = A.rows();
  Vec alpha0 = Vec::Zero(n);
  if (data.b0.size() > 0 && data.b0.norm() > 0.0) {
    const SpdSolver mass_solver(M);
    alpha0 = mass_solver.solve(data.b0);
  }
  std::vector<Vec> loads = data.source.space_loads;
  const RhsFn rhs = source_rhs(data.source, std::move(loads));
  return integrate(M, A, rhs, alpha0, grid, keep_all);
}

}  // namespace krom
