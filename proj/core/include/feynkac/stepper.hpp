#pragma once

#include "feynkac/mesh_fem.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace feynkac {

/// Fully resolved problem description: the WSGD stepper consumes callables;
/// name-to-field resolution lives in the harness registry.
struct Problem {
  double alpha = 0.5;           // fractional order, strictly inside (0,1)
  Complex rho;                  // Fourier-variable parameter, may be complex
  double T = 1.0;               // time horizon
  int dim = 1;
  bool correction = true;       // true: corrected scheme; false: plain scheme
  SpatialFn potential;          // U(x)
  FieldFn initial;              // G0(x)
  SourceFn source;              // f(x,t); empty means f == 0
};

struct SolveOptions {
  bool keep_trajectory = false;     // retain G^1..G^N instead of only G^N
  bool refactor_each_step = false;  // verification path: no factor caching
};

struct SolveResult {
  std::vector<NodalField> fields;  // t_1..t_N, or just t_N
  double tau = 0.0;
  int n_steps = 0;

  const NodalField& final_field() const { return fields.back(); }
};

/// Marches the WSGD scheme from t_0 to T = N*tau. Each step solves
///   (w_0^(alpha)/tau^alpha) M G^n + S G^n = M R^n
/// with one sparse LU factorization shared by all steps. R^n collects the
/// weighted history, the initial-data term, the source quadrature, and
/// (when enabled) the initial corrections.
SolveResult solve(const Problem& problem, const FemSystem& sys, double tau,
                  const SolveOptions& options = {});

/// Self-convergence error E_tau = ||G_tau(T) - G_{tau/2}(T)|| in the
/// mass-matrix L2 norm; the two solves run concurrently.
double self_convergence_error(const Problem& problem, const FemSystem& sys,
                              double tau);

/// Number of steps implied by tau; throws unless T/tau is an integer to
/// 1e-12 relative accuracy.
int step_count(double T, double tau);

}  // namespace feynkac
