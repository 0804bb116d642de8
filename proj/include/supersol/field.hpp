#pragma once

#include <optional>
#include <variant>

#include "supersol/domain.hpp"

namespace supersol {

/// Analytic metadata kept for power-law singular data. The capped grid values
/// alone would silently regularise the profile, so norms and spectral
/// coefficients consult this description where the cap affects exactness.
struct SingularInfo {
  std::vector<double> center;
  double exponent = 0;        // profile behaves like amplitude * |x - center|^-exponent
  double amplitude = 1;
  double lq_upper_bound = 0;  // lies in L^q exactly for q < lq_upper_bound = n / exponent
};

/// Nonnegative spatial function sampled on the domain grid, optionally with a
/// cached coefficient vector in the domain's spectral basis.
struct Field {
  Domain domain;
  Array values;
  std::optional<Array> spectral;
  std::optional<SingularInfo> singular;
};

struct EigenfunctionProfile {
  std::vector<int> mode_indices;  // one entry per axis; defaults to all ones
  double amplitude = 1;
};
struct GaussianProfile {
  std::vector<double> center;
  double width = 1;
  double amplitude = 1;
};
struct PowerSingularityProfile {
  std::vector<double> center;
  double exponent = 0.5;
  double amplitude = 1;
};
struct ConstantProfile {
  double amplitude = 0;
};
struct TableProfile {
  Array values;
};

using ProfileSpec = std::variant<EigenfunctionProfile, GaussianProfile,
                                 PowerSingularityProfile, ConstantProfile, TableProfile>;

Field make_field(const Domain& domain, const ProfileSpec& profile);

/// Wraps raw grid values: values must be finite; round-off negatives in
/// [-1e-14, 0) are clamped to zero, anything more negative is rejected.
Field field_from_values(const Domain& domain, Array values);

/// Entry point for synthesized data, where spectral round-trip undershoot can
/// exceed plain round-off: negatives down to -clamp_tol are clamped to zero.
Field field_from_synthesis(const Domain& domain, Array values, double clamp_tol);

/// Nodewise power s^e for e >= 0; singular metadata propagates (|x|^-a -> |x|^-ae).
Field pow(const Field& f, double e);

/// Composite trapezoid L^q norm over the grid; q = infinity returns the grid
/// max. One-dimensional integrable singular profiles are integrated
/// analytically from their metadata; otherwise the capped representation is
/// used.
double lq_norm(const Field& f, double q);

struct CompareResult {
  bool dominated = false;
  Index worst_node = -1;
  double gap = 0;  // largest violation of f <= g + tol when not dominated
};

/// Checks f <= g + tol at every node. Grids must match.
CompareResult pointwise_compare(const Field& f, const Field& g, double tol);

}  // namespace supersol
