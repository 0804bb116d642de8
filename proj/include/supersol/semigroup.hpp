#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "supersol/field.hpp"

namespace supersol {

namespace detail {

/// One-dimensional heat-kernel values tabulated on the grid lattice, built
/// from image sums. apply works directly on these value tables (Toeplitz plus,
/// under Dirichlet conditions, a reflected Hankel part), so the discrete
/// operator is entrywise nonnegative by construction.
struct KernelTable {
  Array translation;              // g((i-j) h), offset nodes-1
  Array reflection;               // g((i+j) h) measured from the left edge; Dirichlet only
  bool has_reflection = false;
};

struct KernelCache {
  std::mutex mutex;
  std::map<std::pair<double, int>, KernelTable> tables;  // keyed by (t, axis)
};

}  // namespace detail

/// Heat semigroup S(t) for a Domain.
///
/// Box domains carry the eigenbasis: sine modes under Dirichlet conditions,
/// trigonometric modes with the zero mode retained on the torus; S(t) damps
/// coefficients by exp(-lambda t). Below tau_positivity the truncated basis
/// cannot represent the nearly-singular kernel without sign oscillation, so
/// the operator is applied instead as a quadrature against the image-sum
/// kernel, which is entrywise nonnegative; both routes agree to round-off at
/// the switchover because every retained mode has decayed there. The
/// truncated whole space always uses the Gaussian kernel.
struct SemigroupPlan {
  Domain domain;
  std::vector<Matrix> axis_synthesis;  // nodes x modes, per axis (box domains)
  std::vector<Matrix> axis_analysis;   // modes x nodes, per axis
  std::vector<Index> spectral_dims;    // retained modes per axis
  Array eigenvalues;                   // flattened over the tensor mode set
  double tau_positivity = 0;           // spectral route for t >= tau_positivity
  double tau_identity = 0;             // below this, S(t) is taken as the identity
  double spectral_gap = 0;             // smallest nonzero eigenvalue
  bool has_spectral_gap = false;       // true only under Dirichlet conditions
  std::shared_ptr<detail::KernelCache> kernels;

  bool has_spectral_basis() const { return !axis_synthesis.empty(); }
  Index total_modes() const;
};

SemigroupPlan make_plan(const Domain& domain);

/// Coefficients of f in the plan's basis. Grid transform by default; 1D
/// Dirichlet power-singularity profiles are integrated adaptively from their
/// analytic description instead, since grid sampling underestimates the mass
/// near the singular point.
Array spectral_of_field(const SemigroupPlan& plan, const Field& f);

Field synthesize(const SemigroupPlan& plan, const Array& coefficients);

/// Attaches (and returns) the spectral coefficient cache.
Field with_spectral(const SemigroupPlan& plan, Field f);

Field apply_semigroup(const SemigroupPlan& plan, const Field& f, double t);

/// Damped synthesis max: ||S(t) f||_inf given precomputed coefficients.
/// (Box domains only; whole space has no coefficient representation.)
double damped_sup_norm(const SemigroupPlan& plan, const Array& coefficients, double t);

/// S(t) applied in grid space through the kernel tables; valid for any t > 0,
/// entrywise nonnegative. Used internally below tau_positivity and for all
/// whole-space applications.
Array kernel_apply(const SemigroupPlan& plan, const Array& values, double t);

/// (t, ||S(t) f||_inf) along the grid; the coefficient transform is done once
/// and re-used across time nodes.
std::vector<std::pair<double, double>> sup_norm_trace(const SemigroupPlan& plan,
                                                      const Field& f,
                                                      const Array& time_grid);

struct SmoothingProbe {
  std::vector<std::pair<double, double>> ratios;  // (t, measured ratio)
  double max_ratio = 0;
};

/// measured_ratio(t) = ||S(t)f||_r / (t^{-(n/2)(1/q - 1/r)} ||f||_q); the
/// caller reads max_ratio <= C as verification of the L^q-L^r smoothing bound
/// with constant C.
SmoothingProbe smoothing_probe(const SemigroupPlan& plan, const Field& f, double q,
                               double r, const Array& time_grid);

struct JensenResult {
  bool holds = false;
  double min_gap = 0;  // min over nodes of S(t)(f^r) - (S(t)f)^r
  Index worst_node = -1;
};

/// Convexity check (S(t)f)^r <= S(t)(f^r) for r >= 1, f >= 0.
JensenResult jensen_check(const SemigroupPlan& plan, const Field& f, double r, double t,
                          double tol_numeric = 1e-8);

}  // namespace supersol
