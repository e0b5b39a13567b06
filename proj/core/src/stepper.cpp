#include "feynkac/stepper.hpp"

#include "feynkac/fracweights.hpp"
#include "feynkac/substantial.hpp"

#include <Eigen/SparseLU>

#include <cmath>
#include <future>
#include <memory>
#include <stdexcept>

namespace feynkac {

namespace {

Eigen::VectorXd sample_potential(const Problem& problem, const Mesh& mesh) {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(mesh.n_free());
  if (problem.potential) {
    for (int i = 0; i < mesh.n_free(); ++i) {
      u[i] = problem.potential(mesh.node_coords[mesh.free_nodes[i]]);
    }
  }
  return u;
}

}  // namespace

int step_count(double T, double tau) {
  if (!(tau > 0.0)) {
    throw std::invalid_argument("solve: tau must be > 0");
  }
  const double ratio = T / tau;
  const auto n = static_cast<long long>(std::llround(ratio));
  if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-12 * std::max(1.0, ratio)) {
    throw std::invalid_argument("solve: T/tau must be an integer number of steps");
  }
  return static_cast<int>(n);
}

SolveResult solve(const Problem& problem, const FemSystem& sys, double tau,
                  const SolveOptions& options) {
  if (!(problem.alpha > 0.0 && problem.alpha < 1.0)) {
    throw std::invalid_argument("solve: alpha must lie in (0,1)");
  }
  if (problem.dim != sys.mesh.dim) {
    throw std::invalid_argument("solve: problem/system dimension mismatch");
  }
  const int n_steps = step_count(problem.T, tau);
  const Mesh& mesh = sys.mesh;
  const int n_free = mesh.n_free();

  const double alpha = problem.alpha;
  const WeightTable wa = fsd_weights(alpha, alpha, n_steps);
  // Source quadrature uses the two-term rule at order alpha-1 (see
  // fracweights.hpp); the derivative side comes from the same rule at
  // order alpha via fsd_weights.
  const std::vector<double> wi = two_term_wsgd_weights(alpha - 1.0, n_steps);
  const double inv_ta = std::pow(tau, -alpha);        // 1/tau^alpha
  const double inv_ti = std::pow(tau, -(alpha - 1.0));  // 1/tau^(alpha-1)

  const Eigen::VectorXd u = sample_potential(problem, mesh);
  const ExpFactorTable factors = build_factors(problem.rho, u, tau, n_steps);

  const VectorZ g0 = problem.initial ? interpolate(mesh, problem.initial).values
                                     : VectorZ(VectorZ::Zero(n_free));

  // Source snapshots at t_0..t_N; empty when f == 0.
  std::vector<VectorZ> f_levels;
  if (problem.source) {
    f_levels.resize(n_steps + 1);
    for (int k = 0; k <= n_steps; ++k) {
      f_levels[k] = interpolate(mesh, problem.source, k * tau).values;
    }
  }

  // Stepping matrix (w_0/tau^alpha) M + S, factored once and reused.
  SparseMatrixZ lhs = (wa.weights[0] * inv_ta) * sys.mass + sys.stiffness;
  lhs.makeCompressed();
  auto lu = std::make_unique<Eigen::SparseLU<SparseMatrixZ>>();
  lu->compute(lhs);
  if (lu->info() != Eigen::Success) {
    throw std::runtime_error("solve: sparse factorization failed");
  }

  std::vector<VectorZ> history;
  history.reserve(n_steps + 1);
  history.push_back(g0);

  double weight_prefix = 0.0;  // running sum of w_0..w_{n-1}
  VectorZ rhs_nodal(n_free), rhs(n_free);

  for (int n = 1; n <= n_steps; ++n) {
    weight_prefix += wa.weights[n - 1];

    // Initial-data term, plus its correction in the corrected scheme.
    double g0_coeff = weight_prefix * inv_ta;
    if (problem.correction) {
      g0_coeff += 0.5 * wa.weights[n - 1] * inv_ta;
    }
    rhs_nodal = g0_coeff * factors.column(n).cwiseProduct(g0);

    // History: -(1/tau^alpha) sum_{j=1}^{n-1} w_j e^{-t_j rho U} G^{n-j}.
    for (int j = 1; j < n; ++j) {
      rhs_nodal.noalias() -=
          (wa.weights[j] * inv_ta) * factors.column(j).cwiseProduct(history[n - j]);
    }

    if (problem.source) {
      // Quadrature of the substantial integral of f. The corrected scheme
      // stops at j = n-1 and adds half of the w_{n-1} term at t_{n-1}; the
      // plain scheme runs through j = n.
      const int j_top = problem.correction ? n - 1 : n;
      for (int j = 0; j <= j_top; ++j) {
        rhs_nodal.noalias() +=
            (wi[j] * inv_ti) * factors.column(j).cwiseProduct(f_levels[n - j]);
      }
      if (problem.correction) {
        rhs_nodal.noalias() += (0.5 * wi[n - 1] * inv_ti) *
                               factors.column(n - 1).cwiseProduct(f_levels[0]);
      }
    }

    rhs.noalias() = sys.mass * rhs_nodal;

    if (options.refactor_each_step) {
      lu = std::make_unique<Eigen::SparseLU<SparseMatrixZ>>();
      lu->compute(lhs);
      if (lu->info() != Eigen::Success) {
        throw std::runtime_error("solve: sparse factorization failed");
      }
    }
    history.push_back(lu->solve(rhs));
  }

  SolveResult result;
  result.tau = tau;
  result.n_steps = n_steps;
  if (options.keep_trajectory) {
    result.fields.reserve(n_steps);
    for (int n = 1; n <= n_steps; ++n) {
      result.fields.push_back(NodalField{history[n], n * tau});
    }
  } else {
    result.fields.push_back(NodalField{history[n_steps], n_steps * tau});
  }
  return result;
}

double self_convergence_error(const Problem& problem, const FemSystem& sys,
                              double tau) {
  auto coarse = std::async(std::launch::async,
                           [&] { return solve(problem, sys, tau); });
  const SolveResult fine = solve(problem, sys, tau / 2.0);
  const SolveResult coarse_result = coarse.get();

  NodalField diff;
  diff.time = problem.T;
  diff.values = coarse_result.final_field().values - fine.final_field().values;
  return l2_norm(sys, diff);
}

}  // namespace feynkac
