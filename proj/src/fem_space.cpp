// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#include "krom/fem_space.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace krom {

namespace {

bool coord_on_face(double x) { return std::abs(x) < 1e-12 || std::abs(x - 1.0) < 1e-12; }

bool point_on_boundary(int dim, const Point& p) {
  for (int d = 0; d < dim; ++d)
    if (coord_on_face(p[d])) return true;
  return false;
}

// Local edge orderings; P2 edge nodes follow the vertex nodes in this order.
constexpr int kTriEdges[3][2] = {{0, 1}, {1, 2}, {2, 0}};
constexpr int kTetEdges[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

}  // namespace

int nodes_per_cell(int dim, int degree) {
  if (degree == 1) return dim + 1;
  return dim == 2 ? 6 : 10;
}

int FemSpace::nodes_per_cell() const { return krom::nodes_per_cell(mesh.dim, degree); }

FemSpace make_space(Mesh mesh, int degree) {
  if (degree != 1 && degree != 2) throw std::invalid_argument("make_space: degree must be 1 or 2");
  FemSpace space;
  space.degree = degree;
  space.mesh = std::move(mesh);
  const Mesh& m = space.mesh;
  const int nv = m.n_vertices();
  const int nvc = m.vertices_per_cell();
  const int npc = nodes_per_cell(m.dim, degree);

  space.node_coords.assign(m.vertices.begin(), m.vertices.end());
  space.node_on_boundary.assign(m.on_boundary.begin(), m.on_boundary.end());
  space.cell_nodes.assign(static_cast<std::size_t>(m.n_cells()) * npc, -1);

  for (int c = 0; c < m.n_cells(); ++c)
    for (int a = 0; a < nvc; ++a) space.cell_nodes[c * npc + a] = m.cells[c][a];

  if (degree == 2) {
    const int ne = m.dim == 2 ? 3 : 6;
    const auto* edges2 = kTriEdges;
    const auto* edges3 = kTetEdges;
    std::map<std::pair<int, int>, int> edge_id;
    for (int c = 0; c < m.n_cells(); ++c) {
      for (int e = 0; e < ne; ++e) {
        const int la = m.dim == 2 ? edges2[e][0] : edges3[e][0];
        const int lb = m.dim == 2 ? edges2[e][1] : edges3[e][1];
        const int va = m.cells[c][la];
        const int vb = m.cells[c][lb];
        const std::pair<int, int> key = std::minmax(va, vb);
        auto it = edge_id.find(key);
        int id;
        if (it == edge_id.end()) {
          id = static_cast<int>(edge_id.size());
          edge_id.emplace(key, id);
          Point mid;
          for (int d = 0; d < 3; ++d) mid[d] = 0.5 * (m.vertices[va][d] + m.vertices[vb][d]);
          space.node_coords.push_back(mid);
          space.node_on_boundary.push_back(point_on_boundary(m.dim, mid) ? 1 : 0);
        } else {
          id = it->second;
        }
        space.cell_nodes[c * npc + nvc + e] = nv + id;
      }
    }
  }

  space.n_nodes = static_cast<int>(space.node_coords.size());
  space.node_dof.assign(space.n_nodes, -1);
  for (int i = 0; i < space.n_nodes; ++i) {
    if (!space.node_on_boundary[i]) {
      space.node_dof[i] = static_cast<int>(space.dof_node.size());
      space.dof_node.push_back(i);
    }
  }
  space.n_dofs = static_cast<int>(space.dof_node.size());
  return space;
}

void shape_values(int dim, int degree, const Point& xi, double* v) {
  if (dim == 2) {
    const double l0 = 1.0 - xi[0] - xi[1];
    const double l1 = xi[0];
    const double l2 = xi[1];
    if (degree == 1) {
      v[0] = l0;
      v[1] = l1;
      v[2] = l2;
      return;
    }
    v[0] = l0 * (2.0 * l0 - 1.0);
    v[1] = l1 * (2.0 * l1 - 1.0);
    v[2] = l2 * (2.0 * l2 - 1.0);
    v[3] = 4.0 * l0 * l1;
    v[4] = 4.0 * l1 * l2;
    v[5] = 4.0 * l2 * l0;
    return;
  }
  const double l0 = 1.0 - xi[0] - xi[1] - xi[2];
  const double l1 = xi[0];
  const double l2 = xi[1];
  const double l3 = xi[2];
  if (degree == 1) {
    v[0] = l0;
    v[1] = l1;
    v[2] = l2;
    v[3] = l3;
    return;
  }
  v[0] = l0 * (2.0 * l0 - 1.0);
  v[1] = l1 * (2.0 * l1 - 1.0);
  v[2] = l2 * (2.0 * l2 - 1.0);
  v[3] = l3 * (2.0 * l3 - 1.0);
  v[4] = 4.0 * l0 * l1;
  v[5] = 4.0 * l0 * l2;
  v[6] = 4.0 * l0 * l3;
  v[7] = 4.0 * l1 * l2;
  v[8] = 4.0 * l1 * l3;
  v[9] = 4.0 * l2 * l3;
}

void shape_gradients(int dim, int degree, const Point& xi, double* g) {
  // Barycentric gradients: grad l0 = (-1,..,-1), grad l_i = e_i.
  if (dim == 2) {
    const double l0 = 1.0 - xi[0] - xi[1];
    const double l1 = xi[0];
    const double l2 = xi[1];
    const double dl[3][2] = {{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}};
    if (degree == 1) {
      for (int a = 0; a < 3; ++a)
        for (int d = 0; d < 2; ++d) g[a * 2 + d] = dl[a][d];
      return;
    }
    const double l[3] = {l0, l1, l2};
    for (int a = 0; a < 3; ++a)
      for (int d = 0; d < 2; ++d) g[a * 2 + d] = (4.0 * l[a] - 1.0) * dl[a][d];
    const int e[3][2] = {{0, 1}, {1, 2}, {2, 0}};
    for (int k = 0; k < 3; ++k) {
      const int i = e[k][0], j = e[k][1];
      for (int d = 0; d < 2; ++d) g[(3 + k) * 2 + d] = 4.0 * (l[i] * dl[j][d] + l[j] * dl[i][d]);
    }
    return;
  }
  const double l0 = 1.0 - xi[0] - xi[1] - xi[2];
  const double l[4] = {l0, xi[0], xi[1], xi[2]};
  const double dl[4][3] = {{-1.0, -1.0, -1.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
  if (degree == 1) {
    for (int a = 0; a < 4; ++a)
      for (int d = 0; d < 3; ++d) g[a * 3 + d] = dl[a][d];
    return;
  }
  for (int a = 0; a < 4; ++a)
    for (int d = 0; d < 3; ++d) g[a * 3 + d] = (4.0 * l[a] - 1.0) * dl[a][d];
  for (int k = 0; k < 6; ++k) {
    const int i = kTetEdges[k][0], j = kTetEdges[k][1];
    for (int d = 0; d < 3; ++d) g[(4 + k) * 3 + d] = 4.0 * (l[i] * dl[j][d] + l[j] * dl[i][d]);
  }
}

}  // namespace krom
