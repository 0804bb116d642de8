#include "supersol/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace supersol {

std::string to_string(OracleOutcome o) {
  switch (o) {
    case OracleOutcome::completed: return "completed";
    case OracleOutcome::blow_up: return "blow_up";
    case OracleOutcome::cap_exceeded: return "cap_exceeded";
  }
  return "unknown";
}

OracleRun solve_reference(const SemigroupPlan& plan, const Field& phi,
                          const Nonlinearity& f, double T, const OracleOptions& options) {
  if (!(T > 0) || !std::isfinite(T))
    throw std::invalid_argument("oracle horizon must be positive");
  if (!(options.dt > 0)) throw std::invalid_argument("oracle dt must be positive");

  // Times the stepper lands on exactly; trajectory slices are stored there.
  std::vector<double> targets = options.sample_times;
  if (targets.empty()) {
    const int m = std::max(2, options.max_slices - 1);
    targets.reserve(m);
    for (int k = 1; k <= m; ++k) targets.push_back(T * k / m);
  }
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  for (double s : targets)
    if (!(s > 0) || s > T * (1 + 1e-12))
      throw std::invalid_argument("sample times must lie in (0, T]");

  OracleRun run;
  const double sup_phi = phi.values.maxCoeff();

  std::vector<double> stored_times{0.0};
  std::vector<Array> stored_slices{phi.values};

  Array u = phi.values;
  double t = 0;
  double dt_cur = options.dt;
  double sup = sup_phi;
  run.sup_trace.push_back({0.0, sup, dt_cur});

  std::size_t target_idx = 0;
  long steps = 0;
  run.outcome = OracleOutcome::completed;
  while (t < T * (1 - 1e-15)) {
    if (++steps > options.max_steps) {
      run.outcome = OracleOutcome::cap_exceeded;
      break;
    }
    // Land exactly on sample times and the horizon. When the boundary is
    // within dt plus the grid's resolution floor, stretch this step onto it:
    // leftover steps below tau_identity would otherwise degrade the exact
    // diffusion substep.
    const double fold = std::min(plan.tau_identity, dt_cur);
    double dt_eff = dt_cur;
    if (T - t <= dt_eff + fold) dt_eff = T - t;
    if (target_idx < targets.size()) {
      const double gap = targets[target_idx] - t;
      if (gap <= dt_eff + fold) dt_eff = gap;
    }
    if (!(dt_eff > 0)) {  // already sitting on the target
      ++target_idx;
      --steps;
      continue;
    }

    // Explicit reaction substep, growth-capped. Once dt cannot be halved
    // further, the run either heads for the blow-up threshold (sup norm
    // already clearly growing) or is abandoned as unresolvable.
    Array candidate = u + dt_eff * f(u);
    const double sup_candidate = candidate.maxCoeff();
    if (sup > 0 && sup_candidate > (1.0 + options.growth_limit) * sup) {
      if (0.5 * dt_cur >= options.dt_min && dt_eff >= 0.5 * dt_cur) {
        dt_cur *= 0.5;
        --steps;
        continue;
      }
      if (dt_eff >= 0.5 * dt_cur && !(sup >= 10.0 * std::max(sup_phi, 1e-30))) {
        run.outcome = OracleOutcome::cap_exceeded;
        break;
      }
    }

    // Exact diffusion substep.
    const Field stepped = apply_semigroup(
        plan, field_from_synthesis(plan.domain, std::move(candidate), 0.0), dt_eff);
    const double t_prev = t;
    u = stepped.values;
    t = t_prev + dt_eff;
    sup = u.maxCoeff();
    run.sup_trace.push_back({t, sup, dt_eff});

    if (!std::isfinite(sup)) {
      run.outcome = OracleOutcome::cap_exceeded;
      break;
    }
    if (sup > options.blowup_threshold) {
      run.outcome = OracleOutcome::blow_up;
      run.blowup_lower = t_prev;
      run.blowup_upper = t;
      stored_times.push_back(t);
      stored_slices.push_back(u);
      break;
    }
    if (target_idx < targets.size() &&
        std::abs(t - targets[target_idx]) <= 1e-12 * std::max(1.0, targets[target_idx])) {
      stored_times.push_back(targets[target_idx]);
      stored_slices.push_back(u);
      ++target_idx;
    }
  }
  run.completed_T = t;

  if (stored_times.back() < t && run.outcome != OracleOutcome::blow_up) {
    stored_times.push_back(t);
    stored_slices.push_back(u);
  }

  run.trajectory.domain = plan.domain;
  Array nodes(stored_times.size());
  for (std::size_t i = 0; i < stored_times.size(); ++i) nodes[i] = stored_times[i];
  run.trajectory.grid = TimeGrid::from_nodes(std::move(nodes));
  run.trajectory.slices.resize(plan.domain.total_nodes(),
                               static_cast<Index>(stored_slices.size()));
  for (std::size_t j = 0; j < stored_slices.size(); ++j)
    run.trajectory.slices.col(static_cast<Index>(j)) = stored_slices[j].matrix();
  return run;
}

OracleRun solve_reference(const SemigroupPlan& plan, const Field& phi,
                          const Nonlinearity& f, double T, double dt) {
  OracleOptions options;
  options.dt = dt;
  return solve_reference(plan, phi, f, T, options);
}

SandwichReport sandwich_validate(const OracleRun& run, const SpaceTimeField& lower,
                                 const SpaceTimeField& upper, double tol) {
  if (!lower.domain.same_grid(run.trajectory.domain) ||
      !upper.domain.same_grid(run.trajectory.domain))
    throw std::invalid_argument("sandwich_validate: domain mismatch");
  const double covered = run.trajectory.grid.T();
  if (lower.grid.T() > covered * (1 + 1e-12) || upper.grid.T() > covered * (1 + 1e-12))
    throw std::invalid_argument(
        "sandwich_validate: oracle run does not cover the certificate horizon");

  SandwichReport rep;
  rep.worst_lower_gap = std::numeric_limits<double>::infinity();
  rep.worst_upper_gap = std::numeric_limits<double>::infinity();
  for (int j = 0; j <= lower.grid.intervals(); ++j) {
    const double t = lower.grid.nodes[j];
    const Array u = run.trajectory.at_time(std::min(t, covered));
    const double gap = (u - lower.slices.col(j).array()).minCoeff();
    if (gap < rep.worst_lower_gap) {
      rep.worst_lower_gap = gap;
      rep.worst_lower_time = t;
    }
  }
  for (int j = 0; j <= upper.grid.intervals(); ++j) {
    const double t = upper.grid.nodes[j];
    const Array u = run.trajectory.at_time(std::min(t, covered));
    const double gap = (upper.slices.col(j).array() - u).minCoeff();
    if (gap < rep.worst_upper_gap) {
      rep.worst_upper_gap = gap;
      rep.worst_upper_time = t;
    }
  }
  rep.ok = rep.worst_lower_gap >= -tol && rep.worst_upper_gap >= -tol;
  return rep;
}

}  // namespace supersol
