// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#include "krom/sources.hpp"

#include <cmath>
#include <stdexcept>

namespace krom {

SpatialFn poly4_source() {
  return [](const Point& p) {
    return 1e4 * (p[0] - 0.1) * (p[1] - 0.2) * (p[0] - 0.3) * (p[1] - 0.4);
  };
}

namespace {

// u = sin(t) cos(t x) * x sin(x-1) * sin(y)(y-1) [* sin(z)(z-1) in 3D]
struct Factors {
  double a, at, ax, axx;  // a(t,x) = sin(t)cos(tx) and its t/x derivatives
  double b, bx, bxx;      // b(x) = x sin(x-1)
  double c, cy, cyy;      // c(y) = sin(y)(y-1)
  double d, dz, dzz;      // d(z) = sin(z)(z-1), unused in 2D
};

Factors eval_factors(int dim, double t, const Point& p) {
  Factors f;
  const double x = p[0], y = p[1], z = p[2];
  f.a = std::sin(t) * std::cos(t * x);
  f.at = std::cos(t) * std::cos(t * x) - x * std::sin(t) * std::sin(t * x);
  f.ax = -t * std::sin(t) * std::sin(t * x);
  f.axx = -t * t * std::sin(t) * std::cos(t * x);
  f.b = x * std::sin(x - 1.0);
  f.bx = std::sin(x - 1.0) + x * std::cos(x - 1.0);
  f.bxx = 2.0 * std::cos(x - 1.0) - x * std::sin(x - 1.0);
  f.c = std::sin(y) * (y - 1.0);
  f.cy = std::cos(y) * (y - 1.0) + std::sin(y);
  f.cyy = 2.0 * std::cos(y) - std::sin(y) * (y - 1.0);
  if (dim == 3) {
    f.d = std::sin(z) * (z - 1.0);
    f.dz = std::cos(z) * (z - 1.0) + std::sin(z);
    f.dzz = 2.0 * std::cos(z) - std::sin(z) * (z - 1.0);
  } else {
    f.d = 1.0;
    f.dz = 0.0;
    f.dzz = 0.0;
  }
  return f;
}

}  // namespace

ManufacturedSolution manufactured_solution(int dim) {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("manufactured_solution: dim must be 2 or 3");
  ManufacturedSolution m;
  m.u = [dim](double t, const Point& p) {
    const Factors f = eval_factors(dim, t, p);
    return f.a * f.b * f.c * f.d;
  };
  m.grad_u = [dim](double t, const Point& p) {
    const Factors f = eval_factors(dim, t, p);
    Point g{(f.ax * f.b + f.a * f.bx) * f.c * f.d, f.a * f.b * f.cy * f.d, 0.0};
    if (dim == 3) g[2] = f.a * f.b * f.c * f.dz;
    return g;
  };
  m.f = [dim](double t, const Point& p) {
    const Factors f = eval_factors(dim, t, p);
    const double ut = f.at * f.b * f.c * f.d;
    const double uxx = (f.axx * f.b + 2.0 * f.ax * f.bx + f.a * f.bxx) * f.c * f.d;
    const double uyy = f.a * f.b * f.cyy * f.d;
    const double uzz = dim == 3 ? f.a * f.b * f.c * f.dzz : 0.0;
    return ut - uxx - uyy - uzz;
  };
  return m;
}

}  // namespace krom
