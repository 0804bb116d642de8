#include "supersol/duhamel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace supersol {

ApplyFResult apply_F(const SemigroupPlan& plan, const Field& phi, const Nonlinearity& f,
                     const SpaceTimeField& v, double overflow_cap) {
  if (!phi.domain.same_grid(plan.domain) || !v.domain.same_grid(plan.domain))
    throw std::invalid_argument("apply_F: domain mismatch");
  const Array& t = v.grid.nodes;
  const int J = v.grid.intervals();
  const Index total = plan.domain.total_nodes();

  ApplyFResult res;
  res.field.domain = plan.domain;
  res.field.grid = v.grid;
  res.field.slices.resize(total, J + 1);
  res.field.slices.col(0) = phi.values.matrix();

  // Reaction term at interval midpoints, v interpolated linearly between the
  // stored slices (matches the midpoint rule's order).
  std::vector<Array> reaction(J);
  std::vector<Array> reaction_coeffs(J);
  const bool spectral = plan.has_spectral_basis();
  for (int i = 0; i < J; ++i) {
    const Array mid = 0.5 * (v.slices.col(i).array() + v.slices.col(i + 1).array());
    Array g = f(mid);
    const double gmax = g.maxCoeff();
    res.max_nonlinearity = std::max(res.max_nonlinearity, gmax);
    if (gmax > overflow_cap) {
      res.overflowed = true;  // pre-blow-up: keep values finite and carry on
      g = g.min(overflow_cap);
    }
    reaction[i] = std::move(g);
    if (spectral)
      reaction_coeffs[i] =
          spectral_of_field(plan, Field{plan.domain, reaction[i], std::nullopt, std::nullopt});
  }

  std::optional<Array> phi_coeffs;
  if (spectral) phi_coeffs = spectral_of_field(plan, phi);

  for (int j = 1; j <= J; ++j) {
    // Linear part S(t_j) phi, routed through apply_semigroup so small times
    // keep the kernel route's positivity.
    Array slice = apply_semigroup(plan, phi, t[j]).values;

    std::optional<Array> integral_coeffs;
    for (int i = 0; i < j; ++i) {
      const double mid = 0.5 * (t[i] + t[i + 1]);
      const double tau = t[j] - mid;
      const double dt = t[i + 1] - t[i];
      if (spectral && tau >= plan.tau_positivity) {
        if (!integral_coeffs) integral_coeffs = Array::Zero(plan.total_modes());
        *integral_coeffs += dt * (reaction_coeffs[i] * (-plan.eigenvalues * tau).exp());
      } else if (tau <= plan.tau_identity) {
        slice += dt * reaction[i];
      } else {
        slice += dt * kernel_apply(plan, reaction[i], tau).max(0.0);
      }
    }
    if (integral_coeffs) slice += synthesize(plan, *integral_coeffs).values;
    res.field.slices.col(j) = slice.max(0.0).matrix();
  }
  return res;
}

Certificate check_supersolution(const SemigroupPlan& plan, const Field& phi,
                                const Nonlinearity& f, const SpaceTimeField& w,
                                double tol) {
  const ApplyFResult Fw = apply_F(plan, phi, f, w);
  Certificate cert;
  cert.condition_id = ConditionId::supersolution_direct;
  cert.valid = true;
  cert.margin = std::numeric_limits<double>::infinity();
  const int J = w.grid.intervals();
  cert.trace.reserve(J + 1);
  for (int j = 0; j <= J; ++j) {
    const Array diff = w.slices.col(j).array() - Fw.field.slices.col(j).array();
    const double node_margin = diff.minCoeff();
    cert.margin = std::min(cert.margin, node_margin);
    cert.trace.push_back({w.grid.nodes[j], node_margin});
    if (node_margin < -tol && cert.valid) {
      cert.valid = false;
      cert.first_failure_time = w.grid.nodes[j];
    }
  }
  cert.horizon = cert.valid ? w.grid.T() : 0.0;
  if (Fw.overflowed) {
    cert.valid = false;
    cert.diagnostic = "nonlinearity overflow while evaluating F[w]";
  } else if (!cert.valid) {
    std::ostringstream os;
    os << "F[w] exceeds w from t = " << cert.first_failure_time;
    cert.diagnostic = os.str();
  }
  return cert;
}

MonotoneSolveResult monotone_solve(const SemigroupPlan& plan, const Field& phi,
                                   const Nonlinearity& f, const SpaceTimeField& w0,
                                   const MonotoneSolveOptions& options) {
  MonotoneSolveResult result;
  result.solution = w0;

  if (!options.force) {
    const Certificate check =
        check_supersolution(plan, phi, f, w0, options.supersolution_tol);
    if (!check.valid) {
      result.status = SolveStatus::not_a_supersolution;
      result.report.diagnostic =
          "w0 is not a supersolution (" + check.diagnostic + "); pass force to iterate anyway";
      return result;
    }
  }

  SpaceTimeField w = w0;
  for (int k = 1; k <= options.max_iter; ++k) {
    const ApplyFResult next = apply_F(plan, phi, f, w, options.overflow_cap);
    const Matrix diff = next.field.slices - w.slices;  // F[w] - w
    const double residual = diff.array().abs().maxCoeff();
    const double upward = std::max(0.0, diff.array().maxCoeff());
    result.report.residual_history.push_back(residual);
    result.report.monotonicity_violations.push_back(upward);
    result.report.iterations_used = k;

    if (next.overflowed) {
      result.report.overflowed = true;
      result.report.diagnostic = "nonlinearity overflow: iterate flagged pre-blow-up";
      result.status = SolveStatus::overflow;
      result.solution = w;
      return result;
    }
    if (upward > options.tol_mono) {
      std::ostringstream os;
      os << "monotonicity violated by " << upward << " at iteration " << k
         << " (quadrature resolution too coarse or w0 not a genuine supersolution)";
      result.report.diagnostic = os.str();
      result.status = SolveStatus::monotonicity_abort;
      result.solution = w;
      return result;
    }
    if (residual <= options.tol) {
      result.report.converged = true;
      result.status = SolveStatus::converged;
      result.solution = w;  // verified: ||F[w] - w|| = residual <= tol
      return result;
    }
    w = next.field;
  }
  result.status = SolveStatus::max_iterations;
  result.solution = w;
  result.report.diagnostic = "residual target not reached within max_iter";
  return result;
}

SubsolutionChain check_subsolution_chain(const SemigroupPlan& plan, const Field& phi,
                                         const Nonlinearity& f, int k_max,
                                         const TimeGrid& grid, double overflow_cap,
                                         double tol) {
  if (k_max < 1) throw std::invalid_argument("subsolution chain needs k_max >= 1");
  SubsolutionChain chain;
  chain.members.push_back(semigroup_trajectory(plan, phi, grid));
  for (int k = 1; k <= k_max; ++k) {
    const ApplyFResult next = apply_F(plan, phi, f, chain.members.back(), overflow_cap);
    const double drop =
        (chain.members.back().slices - next.field.slices).array().maxCoeff();
    if (drop > tol) {
      chain.nondecreasing = false;
      chain.worst_gap = std::max(chain.worst_gap, drop);
    }
    chain.members.push_back(next.field);
    if (next.overflowed) {
      chain.overflowed = true;  // unbounded growth: blow-up inside the horizon
      break;
    }
  }
  return chain;
}

}  // namespace supersol
