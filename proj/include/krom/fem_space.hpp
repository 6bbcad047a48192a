// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "krom/mesh.hpp"

namespace krom {

/// Continuous Lagrange P1/P2 space with homogeneous Dirichlet conditions:
/// boundary nodes carry no degree of freedom. Nodes are mesh vertices (P1)
/// plus edge midpoints (P2).
struct FemSpace {
  Mesh mesh;
  int degree = 1;
  int n_nodes = 0;
  int n_dofs = 0;  // interior nodes
  std::vector<Point> node_coords;
  std::vector<std::uint8_t> node_on_boundary;
  std::vector<int> node_dof;    // node -> dof index, -1 on the boundary
  std::vector<int> dof_node;    // dof index -> node
  std::vector<int> cell_nodes;  // flat, nodes_per_cell() entries per cell

  int nodes_per_cell() const;
  int n_cells() const { return mesh.n_cells(); }
  const Point& dof_coord(int i) const { return node_coords[dof_node[i]]; }
  const int* cell_node_ptr(int c) const { return cell_nodes.data() + c * nodes_per_cell(); }
};

FemSpace make_space(Mesh mesh, int degree);

// Reference Lagrange shape functions on the unit simplex.
int nodes_per_cell(int dim, int degree);
void shape_values(int dim, int degree, const Point& xi, double* values);
// Gradients in reference coordinates, row-major nodes_per_cell x dim.
void shape_gradients(int dim, int degree, const Point& xi, double* grads);

}  // namespace krom
