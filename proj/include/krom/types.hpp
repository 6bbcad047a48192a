// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace krom {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using SparseMat = Eigen::SparseMatrix<double>;

// Spatial point; z is 0 in 2D.
using Point = std::array<double, 3>;

}  // namespace krom
