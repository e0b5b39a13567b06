#include "feynkac/fields.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace feynkac {

namespace {

void require_params(const FieldSpec& spec, std::size_t count) {
  if (spec.params.size() != count) {
    throw std::invalid_argument("field '" + spec.name + "' expects " +
                                std::to_string(count) + " parameter(s)");
  }
}

void require_dim(const FieldSpec& spec, int dim, int wanted) {
  if (dim != wanted) {
    throw std::invalid_argument("field '" + spec.name + "' is " +
                                std::to_string(wanted) + "D");
  }
}

}  // namespace

SpatialFn make_scalar_field(const FieldSpec& spec, int dim) {
  if (spec.name == "zero") {
    return [](const Point&) { return 0.0; };
  }
  if (spec.name == "chi") {
    require_dim(spec, dim, 1);
    require_params(spec, 2);
    const double a = spec.params[0], b = spec.params[1];
    // Open-interval convention: a grid node sitting exactly on the jump
    // evaluates to 0.
    return [a, b](const Point& p) { return (p.x > a && p.x < b) ? 1.0 : 0.0; };
  }
  if (spec.name == "chi-box") {
    require_dim(spec, dim, 2);
    require_params(spec, 4);
    const double a = spec.params[0], b = spec.params[1];
    const double c = spec.params[2], d = spec.params[3];
    return [a, b, c, d](const Point& p) {
      return (p.x > a && p.x < b && p.y > c && p.y < d) ? 1.0 : 0.0;
    };
  }
  if (spec.name == "poly") {
    require_dim(spec, dim, 1);
    require_params(spec, 0);
    return [](const Point& p) { return p.x * (1.0 - p.x); };
  }
  if (spec.name == "poly2") {
    require_dim(spec, dim, 2);
    require_params(spec, 0);
    return [](const Point& p) { return p.x * (1.0 - p.x) * p.y * (1.0 - p.y); };
  }
  if (spec.name == "linear") {
    require_dim(spec, dim, 2);
    require_params(spec, 0);
    return [](const Point& p) { return p.x + p.y; };
  }
  if (spec.name == "quadratic") {
    require_dim(spec, dim, 2);
    require_params(spec, 0);
    return [](const Point& p) { return p.x * p.x + p.y * p.y; };
  }
  if (spec.name == "sin-mode") {
    require_dim(spec, dim, 1);
    require_params(spec, 1);
    const double k = spec.params[0];
    if (k < 1.0 || k != std::floor(k)) {
      throw std::invalid_argument("sin-mode: k must be a positive integer");
    }
    return [k](const Point& p) { return std::sin(k * std::numbers::pi * p.x); };
  }
  throw std::invalid_argument("unknown scalar field '" + spec.name + "'");
}

FieldFn make_initial_field(const FieldSpec& spec, int dim) {
  SpatialFn fn = make_scalar_field(spec, dim);
  return [fn = std::move(fn)](const Point& p) { return Complex(fn(p), 0.0); };
}

SourceFn make_source_field(const SourceSpec& spec, int dim, Complex rho,
                           const SpatialFn& potential) {
  if (spec.name == "zero") {
    return {};
  }
  if (spec.name == "expu-product") {
    if (!spec.params.empty()) {
      throw std::invalid_argument("expu-product takes no parameters");
    }
    SpatialFn spatial = make_scalar_field(spec.spatial, dim);
    if (!potential) {
      throw std::invalid_argument("expu-product requires the problem potential");
    }
    SpatialFn u = potential;
    return [spatial = std::move(spatial), u = std::move(u), rho](const Point& p,
                                                                 double t) {
      return spatial(p) * std::exp(-t * rho * u(p));
    };
  }
  throw std::invalid_argument("unknown source field '" + spec.name + "'");
}

}  // namespace feynkac
