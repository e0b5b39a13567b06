#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <array>
#include <complex>
#include <functional>
#include <iosfwd>
#include <vector>

namespace feynkac {

using Complex = std::complex<double>;
using SparseMatrixZ = Eigen::SparseMatrix<Complex>;
using VectorZ = Eigen::VectorXcd;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Real scalar field over the domain (the potential U).
using SpatialFn = std::function<double(const Point&)>;
/// Complex scalar field over the domain (initial data G0).
using FieldFn = std::function<Complex(const Point&)>;
/// Complex space-time field (the source f).
using SourceFn = std::function<Complex(const Point&, double)>;

/// Uniform mesh of (0,1) or (0,1)^2 with zero-Dirichlet boundary.
/// Nodes are ordered lexicographically by coordinates; in 2D each cell is
/// split along the same diagonal into two right triangles.
struct Mesh {
  int dim = 1;
  int m = 2;        // subdivisions per side
  double h = 0.5;   // 1/m
  std::vector<Point> node_coords;              // all nodes
  std::vector<int> free_nodes;                 // free index -> global node
  std::vector<int> node_to_free;               // global node -> free index, -1 on boundary
  std::vector<std::array<int, 3>> triangles;   // dim == 2 only, 2*m^2 entries

  int n_nodes() const { return static_cast<int>(node_coords.size()); }
  int n_free() const { return static_cast<int>(free_nodes.size()); }
};

Mesh build_mesh(int dim, int m);

/// Complex-valued coefficients over the free nodes at one time level.
struct NodalField {
  VectorZ values;
  double time = 0.0;
};

/// Mass and stiffness matrices restricted to the free nodes.
/// Entries are real-valued but stored complex so the stepping matrix and
/// right-hand sides stay in one scalar type.
struct FemSystem {
  Mesh mesh;
  SparseMatrixZ mass;
  SparseMatrixZ stiffness;
};

FemSystem assemble(const Mesh& mesh);

/// Full matrices over all nodes, boundary included. Verification surface
/// for the patch tests (stiffness row sums vanish, mass sums to |Omega|).
struct FullFemMatrices {
  SparseMatrixZ mass;
  SparseMatrixZ stiffness;
};

FullFemMatrices assemble_full(const Mesh& mesh);

NodalField interpolate(const Mesh& mesh, const SourceFn& fn, double t);
NodalField interpolate(const Mesh& mesh, const FieldFn& fn);

/// L2 norm induced by the mass matrix: sqrt(conj(v)^T M v).
double l2_norm(const FemSystem& sys, const NodalField& v);

/// Matrix Market "coordinate complex general" writer, 1-based indices.
void write_matrix_market(std::ostream& os, const SparseMatrixZ& mat);

}  // namespace feynkac
