// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "krom/krylov.hpp"
#include "krom/rom.hpp"

namespace krom {

enum class DtRule { equal_h, h_pow_half_kp1 };
enum class BasisPath { adaptive, block_eig, block_isvd };

struct PipelineConfig {
  int ell = 10;
  double tol_rank = 1e-14;  // adaptive break / energy-criterion tolerance
  double tol_svd = 1e-10;   // thin-SVD cut and isvd truncation, relative
  BasisPath path = BasisPath::adaptive;
  DtRule dt_rule = DtRule::equal_h;
  double final_time = 1.0;
  bool keep_trajectory = true;
  SolveMethod solve_method = SolveMethod::direct;
};

/// Problem data for one run: a separable (or Chebyshev-interpolated) source
/// plus optional initial data u0.
struct ProblemData {
  SeparableSource source;
  Vec b0;  // initial-data load (u0, phi_i); empty means zero
};

struct PhaseSeconds {
  double basis = 0.0;
  double reduce = 0.0;
  double integrate = 0.0;
  double total = 0.0;
};

struct PipelineResult {
  Mat Q;
  Mat trajectory;  // rank x (n_steps + 1), column n = alpha at t_n
  int rank = 0;
  TimeGrid grid;
  int peak_basis_dim = 0;
  int break_index = 0;
  PhaseSeconds seconds;
};

TimeGrid make_time_grid(const FemSpace& space, DtRule rule, double final_time);

/// Offline/online composition: reduced basis from the configured path,
/// Galerkin projection, BDF2 integration, diagnostics. Phase errors are
/// rethrown with phase labels.
PipelineResult solve_rom_pipeline(const FemSpace& space, const SparseMat& M, const SparseMat& A,
                                  const ProblemData& data, const PipelineConfig& config);

/// Full-order reference: same grid, same time scheme, sparse operators.
Trajectory solve_fom(const SparseMat& M, const SparseMat& A, const ProblemData& data,
                     TimeGrid grid, bool keep_all = false);

}  // namespace krom
