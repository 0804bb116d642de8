#pragma once

#include <functional>

#include "supersol/semigroup.hpp"

namespace supersol {

/// Strictly increasing time grid t_0 = 0 < ... < t_J = T.
struct TimeGrid {
  Array nodes;
  double gamma = 1;  // grading exponent when built by graded()

  /// Graded grid t_j = T (j/J)^gamma. Grading (gamma >= 1) concentrates nodes
  /// near t = 0 where integrands of unbounded data behave like s^-beta.
  static TimeGrid graded(double T, int intervals, double gamma = 2);

  /// {0} followed by a geometric ramp from T * prefix_fraction up to T.
  /// Used for certificate functionals whose prefactor peaks in a boundary
  /// layer near t = 0.
  static TimeGrid log_prefixed(double T, int intervals, double prefix_fraction = 1e-6);

  static TimeGrid from_nodes(Array nodes);

  double T() const { return nodes[nodes.size() - 1]; }
  int intervals() const { return static_cast<int>(nodes.size()) - 1; }
};

/// Trajectory on a fixed time grid: one field slice per node, nonnegative,
/// slice 0 being the trajectory's own initial field.
struct SpaceTimeField {
  Domain domain;
  TimeGrid grid;
  Matrix slices;  // total_nodes x (J+1); column j = values at t_j

  Field slice(int j) const;
  Field initial() const { return slice(0); }

  /// Linear interpolation between stored slices; t must lie within the grid.
  Array at_time(double t) const;
};

/// Slices S(t_j) phi; slice 0 is phi itself.
SpaceTimeField semigroup_trajectory(const SemigroupPlan& plan, const Field& phi,
                                    const TimeGrid& grid);

/// Builds a trajectory from a callable (t, coordinates) -> value.
SpaceTimeField spacetime_from_function(
    const Domain& domain, const TimeGrid& grid,
    const std::function<double(double, const std::vector<double>&)>& fn);

SpaceTimeField scaled(const SpaceTimeField& w, double factor);

}  // namespace supersol
