// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0

#include "krom/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "krom/quadrature.hpp"

namespace krom {

namespace {

constexpr int kMaxNodes = 10;
constexpr int kCellBlock = 4096;

int load_quad_degree(int dim) { return dim == 2 ? 6 : 5; }

struct BasisTable {
  QuadRule rule;
  int nb = 0;
  // values[q*nb + a], ref_grads[(q*nb + a)*dim + d]
  std::vector<double> values;
  std::vector<double> ref_grads;
};

BasisTable make_table(int dim, int degree, int quad_degree) {
  BasisTable t;
  t.rule = simplex_rule(dim, quad_degree);
  t.nb = nodes_per_cell(dim, degree);
  const int nq = t.rule.size();
  t.values.resize(static_cast<std::size_t>(nq) * t.nb);
  t.ref_grads.resize(static_cast<std::size_t>(nq) * t.nb * dim);
  for (int q = 0; q < nq; ++q) {
    shape_values(dim, degree, t.rule.points[q], t.values.data() + q * t.nb);
    shape_gradients(dim, degree, t.rule.points[q], t.ref_grads.data() + q * t.nb * dim);
  }
  return t;
}

struct Geometry {
  double jinv[3][3] = {};  // inverse Jacobian
  double absdet = 0.0;
};

Geometry cell_geometry(int dim, const Point* v) {
  Geometry g;
  double J[3][3] = {};
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r < dim; ++r) J[r][c] = v[c + 1][r] - v[0][r];
  if (dim == 2) {
    const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    g.absdet = std::abs(det);
    g.jinv[0][0] = J[1][1] / det;
    g.jinv[0][1] = -J[0][1] / det;
    g.jinv[1][0] = -J[1][0] / det;
    g.jinv[1][1] = J[0][0] / det;
    return g;
  }
  const double det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                     J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                     J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
  g.absdet = std::abs(det);
  g.jinv[0][0] = (J[1][1] * J[2][2] - J[1][2] * J[2][1]) / det;
  g.jinv[0][1] = (J[0][2] * J[2][1] - J[0][1] * J[2][2]) / det;
  g.jinv[0][2] = (J[0][1] * J[1][2] - J[0][2] * J[1][1]) / det;
  g.jinv[1][0] = (J[1][2] * J[2][0] - J[1][0] * J[2][2]) / det;
  g.jinv[1][1] = (J[0][0] * J[2][2] - J[0][2] * J[2][0]) / det;
  g.jinv[1][2] = (J[0][2] * J[1][0] - J[0][0] * J[1][2]) / det;
  g.jinv[2][0] = (J[1][0] * J[2][1] - J[1][1] * J[2][0]) / det;
  g.jinv[2][1] = (J[0][1] * J[2][0] - J[0][0] * J[2][1]) / det;
  g.jinv[2][2] = (J[0][0] * J[1][1] - J[0][1] * J[1][0]) / det;
  return g;
}

// mass/stiff are nb*nb row-major buffers, overwritten.
void cell_matrices(int dim, const BasisTable& t, const Point* verts, double* mass, double* stiff) {
  const int nb = t.nb;
  const Geometry geo = cell_geometry(dim, verts);
  std::fill(mass, mass + nb * nb, 0.0);
  std::fill(stiff, stiff + nb * nb, 0.0);
  double gphys[kMaxNodes][3];
  for (int q = 0; q < t.rule.size(); ++q) {
    const double w = t.rule.weights[q] * geo.absdet;
    const double* phi = t.values.data() + q * nb;
    const double* gref = t.ref_grads.data() + q * nb * dim;
    for (int a = 0; a < nb; ++a) {
      for (int d = 0; d < dim; ++d) {
        double s = 0.0;
        for (int e = 0; e < dim; ++e) s += gref[a * dim + e] * geo.jinv[e][d];
        gphys[a][d] = s;
      }
    }
    for (int a = 0; a < nb; ++a) {
      for (int b = 0; b < nb; ++b) {
        mass[a * nb + b] += w * phi[a] * phi[b];
        double dot = 0.0;
        for (int d = 0; d < dim; ++d) dot += gphys[a][d] * gphys[b][d];
        stiff[a * nb + b] += w * dot;
      }
    }
  }
}

void gather_vertices(const FemSpace& space, int c, Point* verts) {
  const int nv = space.mesh.vertices_per_cell();
  for (int a = 0; a < nv; ++a) verts[a] = space.mesh.vertices[space.mesh.cells[c][a]];
}

// Upper-triangle CSR holding mass and stiffness values together.
struct UpperCsr {
  int nrows = 0;
  std::vector<int> offsets;
  std::vector<int> cols;
  std::vector<double> mvals;
  std::vector<double> avals;

  int find(int r, int c) const {
    const int lo = offsets[r];
    const int hi = offsets[r + 1];
    const auto it = std::lower_bound(cols.begin() + lo, cols.begin() + hi, c);
    return static_cast<int>(it - cols.begin());
  }
};

std::vector<int> make_row_map(const FemSpace& space, bool eliminate, int& nrows) {
  if (eliminate) {
    nrows = space.n_dofs;
    return space.node_dof;
  }
  nrows = space.n_nodes;
  std::vector<int> id(space.n_nodes);
  std::iota(id.begin(), id.end(), 0);
  return id;
}

UpperCsr build_pattern(const FemSpace& space, const std::vector<int>& rmap, int nrows) {
  const int nb = space.nodes_per_cell();
  std::vector<std::vector<int>> adj(nrows);
  for (int c = 0; c < space.n_cells(); ++c) {
    const int* nodes = space.cell_node_ptr(c);
    for (int a = 0; a < nb; ++a) {
      const int ra = rmap[nodes[a]];
      if (ra < 0) continue;
      for (int b = 0; b < nb; ++b) {
        const int rb = rmap[nodes[b]];
        if (rb < ra) continue;
        auto& row = adj[ra];
        const auto it = std::lower_bound(row.begin(), row.end(), rb);
        if (it == row.end() || *it != rb) row.insert(it, rb);
      }
    }
  }
  UpperCsr csr;
  csr.nrows = nrows;
  csr.offsets.resize(nrows + 1, 0);
  for (int r = 0; r < nrows; ++r) csr.offsets[r + 1] = csr.offsets[r] + static_cast<int>(adj[r].size());
  csr.cols.reserve(csr.offsets[nrows]);
  for (auto& row : adj) csr.cols.insert(csr.cols.end(), row.begin(), row.end());
  csr.mvals.assign(csr.cols.size(), 0.0);
  csr.avals.assign(csr.cols.size(), 0.0);
  return csr;
}

void scatter_cell(const FemSpace& space, const std::vector<int>& rmap, int c, const double* mass,
                  const double* stiff, UpperCsr& csr) {
  const int nb = space.nodes_per_cell();
  const int* nodes = space.cell_node_ptr(c);
  for (int a = 0; a < nb; ++a) {
    const int ra = rmap[nodes[a]];
    if (ra < 0) continue;
    for (int b = 0; b < nb; ++b) {
      const int rb = rmap[nodes[b]];
      if (rb < ra) continue;
      const int idx = csr.find(ra, rb);
      csr.mvals[idx] += mass[a * nb + b];
      csr.avals[idx] += stiff[a * nb + b];
    }
  }
}

OperatorPair finish_operators(const UpperCsr& csr) {
  std::vector<Eigen::Triplet<double>> tm, ta;
  tm.reserve(csr.cols.size());
  ta.reserve(csr.cols.size());
  for (int r = 0; r < csr.nrows; ++r) {
    for (int k = csr.offsets[r]; k < csr.offsets[r + 1]; ++k) {
      tm.emplace_back(r, csr.cols[k], csr.mvals[k]);
      ta.emplace_back(r, csr.cols[k], csr.avals[k]);
    }
  }
  SparseMat mu(csr.nrows, csr.nrows), au(csr.nrows, csr.nrows);
  mu.setFromTriplets(tm.begin(), tm.end());
  au.setFromTriplets(ta.begin(), ta.end());
  OperatorPair out;
  out.mass = mu.selfadjointView<Eigen::Upper>();
  out.stiffness = au.selfadjointView<Eigen::Upper>();
  return out;
}

Point physical_point(const FemSpace& space, int c, const Point& xi) {
  const int dim = space.mesh.dim;
  const int nv = dim + 1;
  double lam[4];
  lam[1] = xi[0];
  lam[2] = xi[1];
  lam[3] = xi[2];
  lam[0] = 1.0 - xi[0] - xi[1] - (dim == 3 ? xi[2] : 0.0);
  Point x{0.0, 0.0, 0.0};
  for (int a = 0; a < nv; ++a) {
    const Point& v = space.mesh.vertices[space.mesh.cells[c][a]];
    for (int d = 0; d < dim; ++d) x[d] += lam[a] * v[d];
  }
  return x;
}

}  // namespace

Mat local_mass_matrix(int dim, int degree, const Point* cell_vertices) {
  const BasisTable t = make_table(dim, degree, 2 * degree);
  Mat m(t.nb, t.nb), a(t.nb, t.nb);
  cell_matrices(dim, t, cell_vertices, m.data(), a.data());
  return m;  // row/col symmetric, storage order immaterial
}

Mat local_stiffness_matrix(int dim, int degree, const Point* cell_vertices) {
  const BasisTable t = make_table(dim, degree, 2 * degree);
  Mat m(t.nb, t.nb), a(t.nb, t.nb);
  cell_matrices(dim, t, cell_vertices, m.data(), a.data());
  return a;
}

OperatorPair assemble_operators_serial(const FemSpace& space, bool eliminate_dirichlet) {
  const int dim = space.mesh.dim;
  const BasisTable table = make_table(dim, space.degree, 2 * space.degree);
  int nrows = 0;
  const std::vector<int> rmap = make_row_map(space, eliminate_dirichlet, nrows);
  UpperCsr csr = build_pattern(space, rmap, nrows);

  double mass[kMaxNodes * kMaxNodes], stiff[kMaxNodes * kMaxNodes];
  Point verts[4];
  for (int c = 0; c < space.n_cells(); ++c) {
    gather_vertices(space, c, verts);
    cell_matrices(dim, table, verts, mass, stiff);
    scatter_cell(space, rmap, c, mass, stiff, csr);
  }
  return finish_operators(csr);
}

OperatorPair assemble_operators(const FemSpace& space, bool eliminate_dirichlet) {
  const int dim = space.mesh.dim;
  const BasisTable table = make_table(dim, space.degree, 2 * space.degree);
  int nrows = 0;
  const std::vector<int> rmap = make_row_map(space, eliminate_dirichlet, nrows);
  UpperCsr csr = build_pattern(space, rmap, nrows);

  const int nb = table.nb;
  const int ncells = space.n_cells();
  std::vector<double> stage(static_cast<std::size_t>(kCellBlock) * nb * nb * 2);
  for (int b0 = 0; b0 < ncells; b0 += kCellBlock) {
    const int b1 = std::min(b0 + kCellBlock, ncells);
#pragma omp parallel for schedule(static)
    for (int c = b0; c < b1; ++c) {
      Point verts[4];
      gather_vertices(space, c, verts);
      double* buf = stage.data() + static_cast<std::size_t>(c - b0) * nb * nb * 2;
      cell_matrices(dim, table, verts, buf, buf + nb * nb);
    }
    // deterministic accumulation: always in cell order
    for (int c = b0; c < b1; ++c) {
      const double* buf = stage.data() + static_cast<std::size_t>(c - b0) * nb * nb * 2;
      scatter_cell(space, rmap, c, buf, buf + nb * nb, csr);
    }
  }
  return finish_operators(csr);
}

Vec assemble_load_serial(const FemSpace& space, const SpatialFn& g) {
  const int dim = space.mesh.dim;
  const BasisTable table = make_table(dim, space.degree, load_quad_degree(dim));
  const int nb = table.nb;
  Vec b = Vec::Zero(space.n_dofs);
  Point verts[4];
  for (int c = 0; c < space.n_cells(); ++c) {
    gather_vertices(space, c, verts);
    const Geometry geo = cell_geometry(dim, verts);
    double local[kMaxNodes] = {};
    for (int q = 0; q < table.rule.size(); ++q) {
      const double w = table.rule.weights[q] * geo.absdet;
      const double gv = g(physical_point(space, c, table.rule.points[q]));
      const double* phi = table.values.data() + q * nb;
      for (int a = 0; a < nb; ++a) local[a] += w * gv * phi[a];
    }
    const int* nodes = space.cell_node_ptr(c);
    for (int a = 0; a < nb; ++a) {
      const int dof = space.node_dof[nodes[a]];
      if (dof >= 0) b[dof] += local[a];
    }
  }
  return b;
}

Vec assemble_load(const FemSpace& space, const SpatialFn& g) {
  const int dim = space.mesh.dim;
  const BasisTable table = make_table(dim, space.degree, load_quad_degree(dim));
  const int nb = table.nb;
  const int ncells = space.n_cells();
  Vec b = Vec::Zero(space.n_dofs);
  std::vector<double> stage(static_cast<std::size_t>(kCellBlock) * nb);
  for (int b0 = 0; b0 < ncells; b0 += kCellBlock) {
    const int b1 = std::min(b0 + kCellBlock, ncells);
#pragma omp parallel for schedule(static)
    for (int c = b0; c < b1; ++c) {
      Point verts[4];
      gather_vertices(space, c, verts);
      const Geometry geo = cell_geometry(dim, verts);
      double* local = stage.data() + static_cast<std::size_t>(c - b0) * nb;
      std::fill(local, local + nb, 0.0);
      for (int q = 0; q < table.rule.size(); ++q) {
        const double w = table.rule.weights[q] * geo.absdet;
        const double gv = g(physical_point(space, c, table.rule.points[q]));
        const double* phi = table.values.data() + q * nb;
        for (int a = 0; a < nb; ++a) local[a] += w * gv * phi[a];
      }
    }
    for (int c = b0; c < b1; ++c) {
      const double* local = stage.data() + static_cast<std::size_t>(c - b0) * nb;
      const int* nodes = space.cell_node_ptr(c);
      for (int a = 0; a < nb; ++a) {
        const int dof = space.node_dof[nodes[a]];
        if (dof >= 0) b[dof] += local[a];
      }
    }
  }
  return b;
}

namespace {

// Per-cell squared-error contributions (l2, h1).
void cell_errors(const FemSpace& space, const BasisTable& table, int c, const Vec& coeffs,
                 const SpatialFn& u_exact, const SpatialGrad& grad_exact, double& e_l2,
                 double& e_h1) {
  const int dim = space.mesh.dim;
  const int nb = table.nb;
  Point verts[4];
  gather_vertices(space, c, verts);
  const Geometry geo = cell_geometry(dim, verts);
  const int* nodes = space.cell_node_ptr(c);
  double local_coeffs[kMaxNodes];
  for (int a = 0; a < nb; ++a) {
    const int dof = space.node_dof[nodes[a]];
    local_coeffs[a] = dof >= 0 ? coeffs[dof] : 0.0;
  }
  e_l2 = 0.0;
  e_h1 = 0.0;
  for (int q = 0; q < table.rule.size(); ++q) {
    const double w = table.rule.weights[q] * geo.absdet;
    const double* phi = table.values.data() + q * nb;
    const double* gref = table.ref_grads.data() + q * nb * dim;
    const Point x = physical_point(space, c, table.rule.points[q]);
    double uh = 0.0;
    double guh[3] = {0.0, 0.0, 0.0};
    for (int a = 0; a < nb; ++a) {
      uh += local_coeffs[a] * phi[a];
      for (int d = 0; d < dim; ++d) {
        double s = 0.0;
        for (int e = 0; e < dim; ++e) s += gref[a * dim + e] * geo.jinv[e][d];
        guh[d] += local_coeffs[a] * s;
      }
    }
    const double du = u_exact(x) - uh;
    e_l2 += w * du * du;
    const Point ge = grad_exact(x);
    for (int d = 0; d < dim; ++d) e_h1 += w * (ge[d] - guh[d]) * (ge[d] - guh[d]);
  }
}

}  // namespace

ErrorNorms error_norms_serial(const FemSpace& space, const Vec& coeffs, const SpatialFn& u_exact,
                              const SpatialGrad& grad_exact) {
  if (coeffs.size() != space.n_dofs)
    throw std::invalid_argument("error_norms: coefficient length mismatch");
  const BasisTable table = make_table(space.mesh.dim, space.degree, load_quad_degree(space.mesh.dim));
  double l2 = 0.0, h1 = 0.0;
  for (int c = 0; c < space.n_cells(); ++c) {
    double el2, eh1;
    cell_errors(space, table, c, coeffs, u_exact, grad_exact, el2, eh1);
    l2 += el2;
    h1 += eh1;
  }
  return {std::sqrt(l2), std::sqrt(h1)};
}

ErrorNorms error_norms(const FemSpace& space, const Vec& coeffs, const SpatialFn& u_exact,
                       const SpatialGrad& grad_exact) {
  if (coeffs.size() != space.n_dofs)
    throw std::invalid_argument("error_norms: coefficient length mismatch");
  const BasisTable table = make_table(space.mesh.dim, space.degree, load_quad_degree(space.mesh.dim));
  const int ncells = space.n_cells();
  std::vector<double> part_l2(ncells), part_h1(ncells);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < ncells; ++c)
    cell_errors(space, table, c, coeffs, u_exact, grad_exact, part_l2[c], part_h1[c]);
  double l2 = 0.0, h1 = 0.0;
  for (int c = 0; c < ncells; ++c) {  // cell-order sum keeps results reproducible
    l2 += part_l2[c];
    h1 += part_h1[c];
  }
  return {std::sqrt(l2), std::sqrt(h1)};
}

std::vector<EigenPair> discrete_eigenpairs(const SparseMat& M, const SparseMat& A, int count,
                                           int dense_cap) {
  if (M.rows() != A.rows() || M.cols() != A.cols())
    throw std::invalid_argument("discrete_eigenpairs: dimension mismatch");
  const Eigen::Index n = A.rows();
  if (n > dense_cap) throw std::runtime_error("discrete_eigenpairs: size exceeds dense cap");
  if (count < 0 || count > n)
    throw std::invalid_argument("discrete_eigenpairs: invalid eigenpair count");
  Mat Ad(A), Md(M);
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> ges(Ad, Md);
  if (ges.info() != Eigen::Success)
    throw std::runtime_error("discrete_eigenpairs: eigensolver failed");
  std::vector<EigenPair> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double lam = ges.eigenvalues()(i);
    // solver normalizes phi^T M phi = 1; rescale for phi^T A phi = 1
    out.push_back({lam, Vec(ges.eigenvectors().col(i) / std::sqrt(lam))});
  }
  return out;
}

}  // namespace krom
