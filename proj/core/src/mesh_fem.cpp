#include "feynkac/mesh_fem.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace feynkac {

namespace {

using Triplet = Eigen::Triplet<Complex>;

void assemble_triplets(const Mesh& mesh, std::vector<Triplet>& mass,
                       std::vector<Triplet>& stiffness) {
  const double h = mesh.h;
  if (mesh.dim == 1) {
    // Element matrices on [x_i, x_{i+1}]: mass (h/6)[[2,1],[1,2]],
    // stiffness (1/h)[[1,-1],[-1,1]].
    for (int e = 0; e < mesh.m; ++e) {
      const int v[2] = {e, e + 1};
      const double me[2][2] = {{2.0 * h / 6.0, h / 6.0}, {h / 6.0, 2.0 * h / 6.0}};
      const double ke[2][2] = {{1.0 / h, -1.0 / h}, {-1.0 / h, 1.0 / h}};
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          mass.emplace_back(v[a], v[b], Complex(me[a][b]));
          stiffness.emplace_back(v[a], v[b], Complex(ke[a][b]));
        }
      }
    }
    return;
  }
  for (const auto& tri : mesh.triangles) {
    const Point& p0 = mesh.node_coords[tri[0]];
    const Point& p1 = mesh.node_coords[tri[1]];
    const Point& p2 = mesh.node_coords[tri[2]];
    const double det = (p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y);
    const double area = 0.5 * std::abs(det);
    // Gradient components of the P1 basis: grad(phi_a) = (b_a, c_a) / det.
    const double b[3] = {p1.y - p2.y, p2.y - p0.y, p0.y - p1.y};
    const double c[3] = {p2.x - p1.x, p0.x - p2.x, p1.x - p0.x};
    for (int a = 0; a < 3; ++a) {
      for (int d = 0; d < 3; ++d) {
        const double k = (b[a] * b[d] + c[a] * c[d]) / (4.0 * area);
        const double m = (a == d ? 2.0 : 1.0) * area / 12.0;
        stiffness.emplace_back(tri[a], tri[d], Complex(k));
        mass.emplace_back(tri[a], tri[d], Complex(m));
      }
    }
  }
}

SparseMatrixZ restrict_to_free(const SparseMatrixZ& full, const Mesh& mesh) {
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(full.nonZeros()));
  for (int k = 0; k < full.outerSize(); ++k) {
    for (SparseMatrixZ::InnerIterator it(full, k); it; ++it) {
      const int r = mesh.node_to_free[it.row()];
      const int c = mesh.node_to_free[it.col()];
      if (r >= 0 && c >= 0) {
        trips.emplace_back(r, c, it.value());
      }
    }
  }
  SparseMatrixZ out(mesh.n_free(), mesh.n_free());
  out.setFromTriplets(trips.begin(), trips.end());
  out.makeCompressed();
  return out;
}

}  // namespace

Mesh build_mesh(int dim, int m) {
  if (dim != 1 && dim != 2) {
    throw std::invalid_argument("build_mesh: dim must be 1 or 2");
  }
  if (m < 2) {
    throw std::invalid_argument("build_mesh: m must be >= 2");
  }
  Mesh mesh;
  mesh.dim = dim;
  mesh.m = m;
  mesh.h = 1.0 / m;

  if (dim == 1) {
    mesh.node_coords.resize(m + 1);
    mesh.node_to_free.assign(m + 1, -1);
    for (int i = 0; i <= m; ++i) {
      mesh.node_coords[i] = Point{i * mesh.h, 0.0};
      if (i > 0 && i < m) {
        mesh.node_to_free[i] = static_cast<int>(mesh.free_nodes.size());
        mesh.free_nodes.push_back(i);
      }
    }
    return mesh;
  }

  const int stride = m + 1;
  const auto n_nodes = static_cast<std::size_t>(stride) * stride;
  mesh.node_coords.resize(n_nodes);
  mesh.node_to_free.assign(n_nodes, -1);
  for (int ix = 0; ix <= m; ++ix) {
    for (int iy = 0; iy <= m; ++iy) {
      const int g = ix * stride + iy;
      mesh.node_coords[g] = Point{ix * mesh.h, iy * mesh.h};
      if (ix > 0 && ix < m && iy > 0 && iy < m) {
        mesh.node_to_free[g] = static_cast<int>(mesh.free_nodes.size());
        mesh.free_nodes.push_back(g);
      }
    }
  }
  mesh.triangles.reserve(2 * static_cast<std::size_t>(m) * m);
  for (int ix = 0; ix < m; ++ix) {
    for (int iy = 0; iy < m; ++iy) {
      const int v00 = ix * stride + iy;
      const int v10 = (ix + 1) * stride + iy;
      const int v01 = ix * stride + iy + 1;
      const int v11 = (ix + 1) * stride + iy + 1;
      // Both triangles share the v00-v11 diagonal.
      mesh.triangles.push_back({v00, v10, v11});
      mesh.triangles.push_back({v00, v11, v01});
    }
  }
  return mesh;
}

FullFemMatrices assemble_full(const Mesh& mesh) {
  std::vector<Triplet> mt, kt;
  assemble_triplets(mesh, mt, kt);
  FullFemMatrices out;
  out.mass.resize(mesh.n_nodes(), mesh.n_nodes());
  out.stiffness.resize(mesh.n_nodes(), mesh.n_nodes());
  out.mass.setFromTriplets(mt.begin(), mt.end());
  out.stiffness.setFromTriplets(kt.begin(), kt.end());
  out.mass.makeCompressed();
  out.stiffness.makeCompressed();
  return out;
}

FemSystem assemble(const Mesh& mesh) {
  const FullFemMatrices full = assemble_full(mesh);
  FemSystem sys;
  sys.mesh = mesh;
  sys.mass = restrict_to_free(full.mass, mesh);
  sys.stiffness = restrict_to_free(full.stiffness, mesh);
  return sys;
}

NodalField interpolate(const Mesh& mesh, const SourceFn& fn, double t) {
  if (!fn) {
    throw std::invalid_argument("interpolate: field is empty");
  }
  NodalField out;
  out.time = t;
  out.values.resize(mesh.n_free());
  for (int i = 0; i < mesh.n_free(); ++i) {
    out.values[i] = fn(mesh.node_coords[mesh.free_nodes[i]], t);
  }
  return out;
}

NodalField interpolate(const Mesh& mesh, const FieldFn& fn) {
  if (!fn) {
    throw std::invalid_argument("interpolate: field is empty");
  }
  return interpolate(
      mesh, [&fn](const Point& p, double) { return fn(p); }, 0.0);
}

double l2_norm(const FemSystem& sys, const NodalField& v) {
  if (v.values.size() != sys.mass.rows()) {
    throw std::invalid_argument("l2_norm: field/system dimension mismatch");
  }
  const Complex q = v.values.dot(sys.mass * v.values);  // conjugates v
  return std::sqrt(std::max(0.0, q.real()));
}

void write_matrix_market(std::ostream& os, const SparseMatrixZ& mat) {
  os << "%%MatrixMarket matrix coordinate complex general\n";
  os << mat.rows() << " " << mat.cols() << " " << mat.nonZeros() << "\n";
  char buf[128];
  for (int k = 0; k < mat.outerSize(); ++k) {
    for (SparseMatrixZ::InnerIterator it(mat, k); it; ++it) {
      std::snprintf(buf, sizeof(buf), "%ld %ld %.17g %.17g\n",
                    static_cast<long>(it.row()) + 1, static_cast<long>(it.col()) + 1,
                    it.value().real(), it.value().imag());
      os << buf;
    }
  }
}

}  // namespace feynkac
