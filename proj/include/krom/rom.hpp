// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

#include "krom/assembly.hpp"
#include "krom/types.hpp"

namespace krom {

using TimeFn = std::function<double(double)>;
using TimeSpatialFn = std::function<double(double, const Point&)>;

struct TimeGrid {
  double final_time = 1.0;
  int n_steps = 2;  // BDF2 needs two prior levels after the Euler start
  double dt() const { return final_time / n_steps; }
};

/// Reduced operators M_r = Q^T M Q, A_r = Q^T A Q with the reduced loads.
/// loads[0] is the initial-data load, loads[1..m] the source components.
struct RomSystem {
  Mat mass_r;
  Mat stiffness_r;
  std::vector<Vec> loads;
  Mat Q;  // lift map back to FEM coefficients
};

std::vector<double> chebyshev_nodes(int m, double T);
double lagrange_eval(const std::vector<double>& nodes, int i, double t);

/// Source split into sum_i f_i(t) g_i(x), either supplied exactly or built by
/// Chebyshev-Lagrange interpolation of a general f(t, x) in time.
struct SeparableSource {
  enum class Mode { exact, chebyshev };
  Mode mode = Mode::exact;
  std::vector<TimeFn> time_factors;
  std::vector<Vec> space_loads;
  int terms() const { return static_cast<int>(space_loads.size()); }
};

SeparableSource build_source_exact(std::vector<TimeFn> time_factors, std::vector<Vec> space_loads);
SeparableSource build_source_chebyshev(const FemSpace& space, const TimeSpatialFn& f, int m,
                                       double T);

RomSystem reduce(const SparseMat& M, const SparseMat& A, const Mat& Q,
                 const std::vector<Vec>& loads);

using RhsFn = std::function<Vec(int step, double t)>;

struct Trajectory {
  Vec final;
  Mat states;  // one column per time level including t = 0; empty unless kept
  bool kept_all = false;
};

/// Backward Euler first step, then BDF2; the step matrices are factored once
/// and reused. The same routine drives the full-order (sparse) and reduced
/// (dense) systems.
Trajectory integrate(const SparseMat& M, const SparseMat& A, const RhsFn& rhs, const Vec& alpha0,
                     TimeGrid grid, bool keep_all = false);
Trajectory integrate(const Mat& M, const Mat& A, const RhsFn& rhs, const Vec& alpha0,
                     TimeGrid grid, bool keep_all = false);

Vec lift(const Mat& Q, const Vec& alpha);

/// Galerkin initial data: solves M_r alpha0 = Q^T b0.
Vec rom_initial(const RomSystem& sys, const Vec& b0_full);

/// rhs(t) = sum_i time_factors[i](t) * loads[i]; `loads` may be the full or
/// the reduced source loads (excluding the initial-data load).
RhsFn source_rhs(const SeparableSource& source, std::vector<Vec> loads);

}  // namespace krom
