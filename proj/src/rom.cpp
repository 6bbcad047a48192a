// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#include "krom/rom.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/Cholesky>

#include "krom/spla.hpp"

namespace krom {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<double> chebyshev_nodes(int m, double T) {
  if (m < 1) throw std::invalid_argument("chebyshev_nodes: m must be >= 1");
  if (!(T > 0.0)) throw std::invalid_argument("chebyshev_nodes: T must be positive");
  std::vector<double> nodes(m);
  for (int i = 1; i <= m; ++i)
    nodes[i - 1] = 0.5 * T + 0.5 * T * std::cos((2.0 * i - 1.0) * kPi / (2.0 * m));
  return nodes;
}

double lagrange_eval(const std::vector<double>& nodes, int i, double t) {
  const int m = static_cast<int>(nodes.size());
  if (i < 0 || i >= m) throw std::invalid_argument("lagrange_eval: index out of range");
  double value = 1.0;
  for (int j = 0; j < m; ++j) {
    if (j == i) continue;
    const double denom = nodes[i] - nodes[j];
    if (denom == 0.0) throw std::invalid_argument("lagrange_eval: duplicate nodes");
    value *= (t - nodes[j]) / denom;
  }
  return value;
}

SeparableSource build_source_exact(std::vector<TimeFn> time_factors,
                                   std::vector<Vec> space_loads) {
  if (time_factors.size() != space_loads.size())
    throw std::invalid_argument("build_source_exact: term count mismatch");
  SeparableSource s;
  s.mode = SeparableSource::Mode::exact;
  s.time_factors = std::move(time_factors);
  s.space_loads = std::move(space_loads);
  return s;
}

SeparableSource build_source_chebyshev(const FemSpace& space, const TimeSpatialFn& f, int m,
                                       double T) {
  SeparableSource s;
  s.mode = SeparableSource::Mode::chebyshev;
  const std::vector<double> nodes = chebyshev_nodes(m, T);
  s.time_factors.reserve(m);
  s.space_loads.reserve(m);
  for (int i = 0; i < m; ++i) {
    const double ti = nodes[i];
    s.space_loads.push_back(assemble_load(space, [&f, ti](const Point& x) { return f(ti, x); }));
    s.time_factors.push_back([nodes, i](double t) { return lagrange_eval(nodes, i, t); });
  }
  return s;
}

RomSystem reduce(const SparseMat& M, const SparseMat& A, const Mat& Q,
                 const std::vector<Vec>& loads) {
  if (M.rows() != Q.rows() || A.rows() != Q.rows())
    throw std::invalid_argument("reduce: dimension mismatch");
  RomSystem sys;
  sys.Q = Q;
  Mat mr = Q.transpose() * (M * Q);
  Mat ar = Q.transpose() * (A * Q);
  sys.mass_r = 0.5 * (mr + mr.transpose());
  sys.stiffness_r = 0.5 * (ar + ar.transpose());
  sys.loads.reserve(loads.size());
  for (const Vec& b : loads) {
    if (b.size() != Q.rows()) throw std::invalid_argument("reduce: load dimension mismatch");
    sys.loads.push_back(Q.transpose() * b);
  }
  return sys;
}

namespace {

template <class MatT, class SolveFn1, class SolveFn2>
Trajectory integrate_steps(const MatT& M, const SolveFn1& solve1, const SolveFn2& solve2,
                           const RhsFn& rhs, const Vec& alpha0, TimeGrid grid, bool keep_all) {
  const double dt = grid.dt();
  Trajectory traj;
  if (keep_all) {
    traj.states.resize(alpha0.size(), grid.n_steps + 1);
    traj.states.col(0) = alpha0;
    traj.kept_all = true;
  }
  Vec prev2;  // alpha^{n-2}
  Vec prev = alpha0;
  {
    const Vec r = (M * alpha0) / dt + rhs(1, dt);
    Vec a1 = solve1(r);
    if (keep_all) traj.states.col(1) = a1;
    prev2 = std::move(prev);
    prev = std::move(a1);
  }
  for (int n = 2; n <= grid.n_steps; ++n) {
    const Vec r = (M * (2.0 * prev - 0.5 * prev2)) / dt + rhs(n, n * dt);
    Vec an = solve2(r);
    if (keep_all) traj.states.col(n) = an;
    prev2 = std::move(prev);
    prev = std::move(an);
  }
  traj.final = std::move(prev);
  return traj;
}

}  // namespace

Trajectory integrate(const SparseMat& M, const SparseMat& A, const RhsFn& rhs, const Vec& alpha0,
                     TimeGrid grid, bool keep_all) {
  if (grid.n_steps < 2) throw std::invalid_argument("integrate: BDF2 needs at least 2 steps");
  if (!(grid.final_time > 0.0)) throw std::invalid_argument("integrate: final time must be positive");
  const double dt = grid.dt();
  const SparseMat s1 = M * (1.0 / dt) + A;
  const SparseMat s2 = M * (1.5 / dt) + A;
  const SpdSolver f1(s1), f2(s2);
  return integrate_steps(
      M, [&f1](const Vec& r) { return f1.solve(r); }, [&f2](const Vec& r) { return f2.solve(r); },
      rhs, alpha0, grid, keep_all);
}

Trajectory integrate(const Mat& M, const Mat& A, const RhsFn& rhs, const Vec& alpha0,
                     TimeGrid grid, bool keep_all) {
  if (grid.n_steps < 2) throw std::invalid_argument("integrate: BDF2 needs at least 2 steps");
  if (!(grid.final_time > 0.0)) throw std::invalid_argument("integrate: final time must be positive");
  const double dt = grid.dt();
  const Eigen::LLT<Mat> f1((M * (1.0 / dt) + A).eval());
  const Eigen::LLT<Mat> f2((M * (1.5 / dt) + A).eval());
  if (f1.info() != Eigen::Success || f2.info() != Eigen::Success)
    throw std::runtime_error("integrate: step matrix not SPD");
  return integrate_steps(
      M, [&f1](const Vec& r) { return Vec(f1.solve(r)); },
      [&f2](const Vec& r) { return Vec(f2.solve(r)); }, rhs, alpha0, grid, keep_all);
}

Vec lift(const Mat& Q, const Vec& alpha) {
  if (alpha.size() != Q.cols()) throw std::invalid_argument("lift: dimension mismatch");
  return Q * alpha;
}

Vec rom_initial(const RomSystem& sys, const Vec& b0_full) {
  if (sys.Q.cols() == 0) return Vec(0);
  if (b0_full.size() != sys.Q.rows())
    throw std::invalid_argument("rom_initial: dimension mismatch");
  const Vec rhs = sys.Q.transpose() * b0_full;
  return sys.mass_r.llt().solve(rhs);
}

RhsFn source_rhs(const SeparableSource& source, std::vector<Vec> loads) {
  if (loads.size() != source.time_factors.size())
    throw std::invalid_argument("source_rhs: term count mismatch");
  auto factors = source.time_factors;
  return [factors, loads = std::move(loads)](int, double t) {
    Vec r = Vec::Zero(loads.empty() ? 0 : loads.front().size());
    for (std::size_t i = 0; i < loads.size(); ++i) r += factors[i](t) * loads[i];
    return r;
  };
}

}  // namespace krom
