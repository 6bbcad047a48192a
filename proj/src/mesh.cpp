// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#include "krom/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>

namespace krom {

namespace {

bool coord_on_face(double x) { return std::abs(x) < 1e-12 || std::abs(x - 1.0) < 1e-12; }

double tet_signed_volume(const Point& a, const Point& b, const Point& c, const Point& d) {
  const double u[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
  const double v[3] = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
  const double w[3] = {d[0] - a[0], d[1] - a[1], d[2] - a[2]};
  const double det = u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) +
                     u[2] * (v[0] * w[1] - v[1] * w[0]);
  return det / 6.0;
}

}  // namespace

double Mesh::cell_volume(int c) const {
  const auto& cell = cells[c];
  if (dim == 2) {
    const Point& a = vertices[cell[0]];
    const Point& b = vertices[cell[1]];
    const Point& d = vertices[cell[2]];
    return 0.5 * ((b[0] - a[0]) * (d[1] - a[1]) - (b[1] - a[1]) * (d[0] - a[0]));
  }
  return tet_signed_volume(vertices[cell[0]], vertices[cell[1]], vertices[cell[2]],
                           vertices[cell[3]]);
}

double Mesh::cell_diameter(int c) const {
  const int nv = vertices_per_cell();
  double d2 = 0.0;
  for (int i = 0; i < nv; ++i) {
    for (int j = i + 1; j < nv; ++j) {
      const Point& a = vertices[cells[c][i]];
      const Point& b = vertices[cells[c][j]];
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
      d2 = std::max(d2, s);
    }
  }
  return std::sqrt(d2);
}

double Mesh::mesh_size() const {
  double h = 0.0;
  for (int c = 0; c < n_cells(); ++c) h = std::max(h, cell_diameter(c));
  return h;
}

Mesh build_mesh(int dim, int level) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("build_mesh: dim must be 2 or 3");
  if (level < 0) throw std::invalid_argument("build_mesh: level must be nonnegative");
  const std::int64_t n = std::int64_t{1} << level;
  std::int64_t nv = 1;
  for (int d = 0; d < dim; ++d) nv *= (n + 1);
  if (level >= 30 || nv > (std::int64_t{1} << 31) - 1)
    throw std::invalid_argument("build_mesh: level too large for index type");

  Mesh mesh;
  mesh.dim = dim;
  mesh.level = level;
  mesh.vertices.reserve(static_cast<std::size_t>(nv));
  mesh.on_boundary.reserve(static_cast<std::size_t>(nv));

  const int np = static_cast<int>(n) + 1;
  const auto coord = [&](int i) { return static_cast<double>(i) / static_cast<double>(n); };

  if (dim == 2) {
    for (int j = 0; j < np; ++j) {
      for (int i = 0; i < np; ++i) {
        const double x = coord(i);
        const double y = coord(j);
        mesh.vertices.push_back({x, y, 0.0});
        mesh.on_boundary.push_back(coord_on_face(x) || coord_on_face(y) ? 1 : 0);
      }
    }
    const auto vid = [&](int i, int j) { return j * np + i; };
    mesh.cells.reserve(static_cast<std::size_t>(2 * n * n));
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const int v00 = vid(i, j);
        const int v10 = vid(i + 1, j);
        const int v01 = vid(i, j + 1);
        const int v11 = vid(i + 1, j + 1);
        mesh.cells.push_back({v00, v10, v11, -1});
        mesh.cells.push_back({v00, v11, v01, -1});
      }
    }
    return mesh;
  }

  for (int k = 0; k < np; ++k) {
    for (int j = 0; j < np; ++j) {
      for (int i = 0; i < np; ++i) {
        const double x = coord(i);
        const double y = coord(j);
        const double z = coord(k);
        mesh.vertices.push_back({x, y, z});
        mesh.on_boundary.push_back(
            coord_on_face(x) || coord_on_face(y) || coord_on_face(z) ? 1 : 0);
      }
    }
  }
  const auto vid = [&](int i, int j, int k) { return (k * np + j) * np + i; };
  // Kuhn split: one tetrahedron per axis permutation, all sharing the cube's
  // main diagonal. Identical in every cube, so faces are conforming.
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  mesh.cells.reserve(static_cast<std::size_t>(6 * n * n * n));
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        for (const auto& p : perms) {
          int off[3] = {0, 0, 0};
          std::array<int, 4> cell;
          cell[0] = vid(i, j, k);
          for (int s = 0; s < 3; ++s) {
            off[p[s]] = 1;
            cell[s + 1] = vid(i + off[0], j + off[1], k + off[2]);
          }
          const Point& a = mesh.vertices[cell[0]];
          const Point& b = mesh.vertices[cell[1]];
          const Point& c = mesh.vertices[cell[2]];
          const Point& d = mesh.vertices[cell[3]];
          if (tet_signed_volume(a, b, c, d) < 0.0) std::swap(cell[2], cell[3]);
          mesh.cells.push_back(cell);
        }
      }
    }
  }
  return mesh;
}

void dump_mesh(const Mesh& mesh, std::ostream& out) {
  out << mesh.dim << ' ' << mesh.n_vertices() << ' ' << mesh.n_cells() << '\n';
  for (const auto& v : mesh.vertices) {
    out << v[0] << ' ' << v[1];
    if (mesh.dim == 3) out << ' ' << v[2];
    out << '\n';
  }
  for (const auto& c : mesh.cells) {
    out << c[0] << ' ' << c[1] << ' ' << c[2];
    if (mesh.dim == 3) out << ' ' << c[3];
    out << '\n';
  }
}

}  // namespace krom
