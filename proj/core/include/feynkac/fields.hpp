#pragma once

#include "feynkac/mesh_fem.hpp"

#include <string>
#include <vector>

namespace feynkac {

/// Reference to a named scalar field from the problem registry.
/// Known names:
///   zero                      (any dim)
///   chi        params [a, b]  1D characteristic function of the open (a,b)
///   chi-box    params [a,b,c,d]  2D characteristic function of (a,b)x(c,d)
///   poly                      1D  x(1-x)
///   poly2                     2D  x1(1-x1) x2(1-x2)
///   linear                    2D  x1 + x2
///   quadratic                 2D  x1^2 + x2^2
///   sin-mode   params [k]     1D  sin(k pi x)
struct FieldSpec {
  std::string name = "zero";
  std::vector<double> params;
};

/// Reference to a named space-time source. Known names:
///   zero
///   expu-product   spatial(x) * e^{-t rho U(x)}, with rho and U taken
///                  from the enclosing problem
struct SourceSpec {
  std::string name = "zero";
  std::vector<double> params;
  FieldSpec spatial;  // used by expu-product
};

/// Resolves a named scalar field; throws std::invalid_argument for unknown
/// names, wrong parameter counts, or a dimension mismatch.
SpatialFn make_scalar_field(const FieldSpec& spec, int dim);

/// Same field as complex-valued initial data.
FieldFn make_initial_field(const FieldSpec& spec, int dim);

/// Resolves a named source; rho and U are the enclosing problem's values.
/// Returns an empty function for "zero" (the stepper skips the source
/// machinery entirely in that case).
SourceFn make_source_field(const SourceSpec& spec, int dim, Complex rho,
                           const SpatialFn& potential);

}  // namespace feynkac
