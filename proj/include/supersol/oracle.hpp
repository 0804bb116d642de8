#pragma once

#include "supersol/duhamel.hpp"

namespace supersol {

enum class OracleOutcome { completed, blow_up, cap_exceeded };

std::string to_string(OracleOutcome o);

struct OracleOptions {
  double dt = 1e-3;
  double blowup_threshold = 1e8;
  double growth_limit = 0.2;  // max relative sup-norm growth per reaction substep
  double dt_min = 1e-12;
  std::vector<double> sample_times;  // stepper lands on these; slices stored there
  int max_slices = 1025;             // auto-subsampling cap when no sample times given
  long max_steps = 20000000;
};

/// Reference trajectory from first-order splitting: exact diffusion substep in
/// the semigroup, explicit Euler reaction substep. dt halves whenever the
/// reaction substep would grow the sup norm by more than growth_limit; once
/// dt_min is reached the run either continues toward the blow-up threshold
/// (sup norm already clearly growing) or gives up with cap_exceeded.
struct OracleRun {
  SpaceTimeField trajectory;  // slices on the stored subset of step times
  std::vector<std::array<double, 3>> sup_trace;  // (t, sup norm, dt used)
  OracleOutcome outcome = OracleOutcome::completed;
  double completed_T = 0;
  double blowup_lower = 0;  // bracket: last stable / first exceeding time
  double blowup_upper = 0;

  double t_star_estimate() const { return 0.5 * (blowup_lower + blowup_upper); }
};

OracleRun solve_reference(const SemigroupPlan& plan, const Field& phi,
                          const Nonlinearity& f, double T, const OracleOptions& options);

OracleRun solve_reference(const SemigroupPlan& plan, const Field& phi,
                          const Nonlinearity& f, double T, double dt);

struct SandwichReport {
  bool ok = false;
  double worst_lower_gap = 0;  // min over grid of (oracle - lower); >= -tol required
  double worst_upper_gap = 0;  // min over grid of (upper - oracle); >= -tol required
  double worst_lower_time = 0;
  double worst_upper_time = 0;
};

/// Asserts lower - tol <= u_oracle <= upper + tol on the certificate grids,
/// interpolating the oracle trajectory in time. The run must cover the grids'
/// horizon and share their domain.
SandwichReport sandwich_validate(const OracleRun& run, const SpaceTimeField& lower,
                                 const SpaceTimeField& upper, double tol);

}  // namespace supersol
