// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <sstream>

#include "krom/mesh.hpp"

using namespace krom;

TEST_CASE("2D level 0: unit square as one cell pair") {
  const Mesh m = build_mesh(2, 0);
  CHECK(m.n_vertices() == 4);
  CHECK(m.n_cells() == 2);
  for (auto flag : m.on_boundary) CHECK(flag == 1);
}

TEST_CASE("2D level 1: 3x3 grid with a single interior vertex") {
  const Mesh m = build_mesh(2, 1);
  CHECK(m.n_vertices() == 9);
  CHECK(m.n_cells() == 8);
  int interior = 0;
  for (auto flag : m.on_boundary) interior += flag ? 0 : 1;
  CHECK(interior == 1);
}

TEST_CASE("3D level 1: Kuhn split counts and volume") {
  const Mesh m = build_mesh(3, 1);
  CHECK(m.n_vertices() == 27);
  CHECK(m.n_cells() == 48);
  // oracle: sum of signed volumes over the split of the 8 subcubes
  double vol = 0.0;
  for (int c = 0; c < m.n_cells(); ++c) {
    const double v = m.cell_volume(c);
    CHECK(v > 0.0);
    vol += v;
  }
  CHECK(vol == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("volume partition and positive orientation across levels") {
  for (int level : {0, 1, 2, 3, 4}) {
    const Mesh m2 = build_mesh(2, level);
    double vol = 0.0;
    for (int c = 0; c < m2.n_cells(); ++c) {
      CHECK(m2.cell_volume(c) > 0.0);
      vol += m2.cell_volume(c);
    }
    CHECK(vol == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (int level : {0, 1, 2}) {
    const Mesh m3 = build_mesh(3, level);
    double vol = 0.0;
    for (int c = 0; c < m3.n_cells(); ++c) {
      CHECK(m3.cell_volume(c) > 0.0);
      vol += m3.cell_volume(c);
    }
    CHECK(vol == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("2D boundary vertex count is 4 * 2^level") {
  for (int level : {0, 1, 2, 3, 4, 5}) {
    const Mesh m = build_mesh(2, level);
    int boundary = 0;
    for (auto flag : m.on_boundary) boundary += flag ? 1 : 0;
    CHECK(boundary == 4 * (1 << level));
  }
}

TEST_CASE("2D interior edges shared by exactly two cells") {
  const Mesh m = build_mesh(2, 3);
  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& cell : m.cells) {
    const int e[3][2] = {{0, 1}, {1, 2}, {2, 0}};
    for (const auto& ed : e) {
      const int a = std::min(cell[ed[0]], cell[ed[1]]);
      const int b = std::max(cell[ed[0]], cell[ed[1]]);
      edge_count[{a, b}] += 1;
    }
  }
  for (const auto& [edge, count] : edge_count) {
    CHECK(edge.first >= 0);
    CHECK(edge.second < m.n_vertices());
    const bool boundary_edge = m.on_boundary[edge.first] && m.on_boundary[edge.second];
    if (count == 1)
      CHECK(boundary_edge);  // only boundary edges may be single-sided
    else
      CHECK(count == 2);
  }
}

TEST_CASE("2D mesh size is sqrt(2) * 2^-level") {
  for (int level : {1, 3, 5}) {
    const Mesh m = build_mesh(2, level);
    const double expected = std::sqrt(2.0) * std::pow(2.0, -level);
    CHECK(m.mesh_size() == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("invalid arguments are rejected") {
  CHECK_THROWS(build_mesh(1, 2));
  CHECK_THROWS(build_mesh(4, 2));
  CHECK_THROWS(build_mesh(2, -1));
  CHECK_THROWS(build_mesh(3, 12));  // index overflow guard
}

TEST_CASE("mesh dump lists vertices then cells") {
  const Mesh m = build_mesh(2, 0);
  std::ostringstream os;
  dump_mesh(m, os);
  std::istringstream is(os.str());
  int dim, nv, nc;
  is >> dim >> nv >> nc;
  CHECK(dim == 2);
  CHECK(nv == 4);
  CHECK(nc == 2);
}
