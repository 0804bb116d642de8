#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace supersol {

using Array = Eigen::ArrayXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

enum class DomainKind { dirichlet_box, periodic_box, whole_space_truncated };

std::string to_string(DomainKind kind);
DomainKind domain_kind_from_string(const std::string& name);

/// Axis-aligned box with one of three boundary treatments.
///
/// Box domains live on [0, L_a] per axis. The truncated whole space is
/// centred, [-L_a/2, L_a/2], and stands in for R^n as long as fields decay
/// below tail_tolerance at the artificial boundary.
///
/// grid_points counts intervals per axis: box domains store grid_points + 1
/// nodes (both endpoints on the grid, so extrema such as the box centre are
/// representable exactly), the periodic box stores grid_points nodes on
/// [0, L). mode_cutoff is the spectral truncation per axis; grid_points must
/// be at least twice the cutoff so every retained mode is resolved.
struct Domain {
  DomainKind kind = DomainKind::dirichlet_box;
  int dimension = 1;
  std::vector<double> side_lengths;
  int grid_points = 512;
  int mode_cutoff = 128;
  double tail_tolerance = 1e-8;

  int nodes_per_axis() const {
    return kind == DomainKind::periodic_box ? grid_points : grid_points + 1;
  }
  Index total_nodes() const;
  double axis_min(int axis) const {
    return kind == DomainKind::whole_space_truncated ? -0.5 * side_lengths[axis] : 0.0;
  }
  double axis_max(int axis) const { return axis_min(axis) + side_lengths[axis]; }
  double spacing(int axis) const { return side_lengths[axis] / grid_points; }

  Array axis_coordinates(int axis) const;
  Array axis_quadrature_weights(int axis) const;

  /// Coordinates of a flattened node index (C order, last axis fastest).
  std::vector<double> node_coordinates(Index flat) const;

  bool same_grid(const Domain& other) const;
};

/// Validates the invariants and returns the domain; throws
/// std::invalid_argument on violation.
Domain make_domain(DomainKind kind, int dimension, std::vector<double> side_lengths,
                   int grid_points, int mode_cutoff, double tail_tolerance = 1e-8);

namespace detail {

/// out[o,k,i] = sum_j T[k,j] x[o,j,i] along one tensor axis of a flattened
/// C-order array with per-axis extents `dims`.
Array apply_axis_matrix(const Matrix& T, const Array& x, const std::vector<Index>& dims,
                        int axis);

}  // namespace detail

}  // namespace supersol
