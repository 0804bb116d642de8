#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

namespace supersol {

enum class ConditionId {
  prop31,               // general supersolution construction, integrable-rate reading
  prop32,               // gauge-based constructor with the explicit rate function
  condp,                // certificate functional P(phi, T) <= C_p on a finite horizon
  supercritical_smth,   // closed-form existence time from the smoothing estimate
  subcritical_suff,     // pointwise-decay sufficient condition (q > 1)
  necessary_cond,       // necessary bound on t^{1/(p-1)} ||S(t)phi||_inf
  global_condp,         // T = infinity reading of the P functional
  supersolution_direct  // direct F[w] <= w verification
};

std::string to_string(ConditionId id);

/// Outcome of a closed-form existence/nonexistence check.
///
/// `margin` is how far inside the defining inequality the data sits (valid
/// certificates carry margin >= 0). `horizon` may be infinite only for
/// conditions with a global reading: the P functional evaluated on [0, inf)
/// or an integrable supersolution rate on [0, inf).
struct Certificate {
  ConditionId condition_id = ConditionId::condp;
  bool valid = false;
  double horizon = 0;
  double margin = 0;

  double p = std::numeric_limits<double>::quiet_NaN();
  double q = std::numeric_limits<double>::quiet_NaN();
  double A = std::numeric_limits<double>::quiet_NaN();
  double Cp = std::numeric_limits<double>::quiet_NaN();

  std::vector<std::array<double, 2>> trace;  // optional evidence rows (t, value)
  std::string diagnostic;
  double first_failure_time = std::numeric_limits<double>::quiet_NaN();
};

}  // namespace supersol
