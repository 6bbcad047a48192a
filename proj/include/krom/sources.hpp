// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "krom/assembly.hpp"
#include "krom/rom.hpp"

namespace krom {

/// Time-independent polynomial source 1e4 (x-0.1)(y-0.2)(x-0.3)(y-0.4).
SpatialFn poly4_source();

using TimeSpatialGrad = std::function<Point(double, const Point&)>;

/// Manufactured heat-equation solution with homogeneous Dirichlet data and
/// zero initial value; f = u_t - lap(u) in closed form.
struct ManufacturedSolution {
  TimeSpatialFn u;
  TimeSpatialGrad grad_u;
  TimeSpatialFn f;
};

ManufacturedSolution manufactured_solution(int dim);

}  // namespace krom
