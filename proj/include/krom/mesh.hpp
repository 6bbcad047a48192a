// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace krom {

using Point = std::array<double, 3>;

/// Structured simplicial mesh of the unit square/cube at a dyadic refinement
/// level. Vertices are stored in lexicographic grid order, cells are
/// positively oriented, and the mesh is immutable after construction.
struct Mesh {
  int dim = 0;    // 2 or 3
  int level = 0;  // grid of (2^level + 1)^dim vertices
  std::vector<Point> vertices;
  std::vector<std::array<int, 4>> cells;  // cells[c][3] == -1 in 2D
  std::vector<std::uint8_t> on_boundary;  // per-vertex flag

  int vertices_per_cell() const { return dim + 1; }
  int n_cells() const { return static_cast<int>(cells.size()); }
  int n_vertices() const { return static_cast<int>(vertices.size()); }

  double cell_volume(int c) const;  // signed
  double cell_diameter(int c) const;
  double mesh_size() const;  // max cell diameter
};

/// 2D squares split into two triangles along the (0,0)-(1,1) diagonal,
/// 3D cubes into six tetrahedra (Kuhn split).
Mesh build_mesh(int dim, int level);

/// Plain-text dump: one "x y [z]" line per vertex, then one vertex-index
/// list per cell.
void dump_mesh(const Mesh& mesh, std::ostream& out);

}  // namespace krom
