#include "supersol/domain.hpp"

#include <stdexcept>

namespace supersol {

std::string to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::dirichlet_box: return "dirichlet_box";
    case DomainKind::periodic_box: return "periodic_box";
    case DomainKind::whole_space_truncated: return "whole_space_truncated";
  }
  return "unknown";
}

DomainKind domain_kind_from_string(const std::string& name) {
  if (name == "dirichlet_box") return DomainKind::dirichlet_box;
  if (name == "periodic_box") return DomainKind::periodic_box;
  if (name == "whole_space_truncated") return DomainKind::whole_space_truncated;
  throw std::invalid_argument("unknown domain kind: " + name);
}

Index Domain::total_nodes() const {
  Index total = 1;
  for (int a = 0; a < dimension; ++a) total *= nodes_per_axis();
  return total;
}

Array Domain::axis_coordinates(int axis) const {
  const int n = nodes_per_axis();
  const double h = spacing(axis);
  Array x(n);
  for (int j = 0; j < n; ++j) x[j] = axis_min(axis) + j * h;
  return x;
}

Array Domain::axis_quadrature_weights(int axis) const {
  const int n = nodes_per_axis();
  const double h = spacing(axis);
  Array w = Array::Constant(n, h);
  if (kind != DomainKind::periodic_box) {
    w[0] = 0.5 * h;
    w[n - 1] = 0.5 * h;
  }
  return w;
}

std::vector<double> Domain::node_coordinates(Index flat) const {
  std::vector<double> coords(dimension);
  const int n = nodes_per_axis();
  for (int a = dimension - 1; a >= 0; --a) {
    const Index idx = flat % n;
    flat /= n;
    coords[a] = axis_min(a) + idx * spacing(a);
  }
  return coords;
}

bool Domain::same_grid(const Domain& other) const {
  if (kind != other.kind || dimension != other.dimension ||
      grid_points != other.grid_points)
    return false;
  for (int a = 0; a < dimension; ++a)
    if (side_lengths[a] != other.side_lengths[a]) return false;
  return true;
}

Domain make_domain(DomainKind kind, int dimension, std::vector<double> side_lengths,
                   int grid_points, int mode_cutoff, double tail_tolerance) {
  if (dimension < 1 || dimension > 3)
    throw std::invalid_argument("dimension must be 1, 2 or 3");
  if (static_cast<int>(side_lengths.size()) != dimension)
    throw std::invalid_argument("side_lengths must have one entry per axis");
  for (double L : side_lengths)
    if (!(L > 0) || !std::isfinite(L))
      throw std::invalid_argument("side lengths must be positive and finite");
  if (grid_points < 8) throw std::invalid_argument("grid_points must be >= 8");
  if (mode_cutoff < 8) throw std::invalid_argument("mode_cutoff must be >= 8");
  if (grid_points < 2 * mode_cutoff)
    throw std::invalid_argument("grid_points must be >= 2 * mode_cutoff");
  if (!(tail_tolerance > 0))
    throw std::invalid_argument("tail_tolerance must be positive");

  Domain d;
  d.kind = kind;
  d.dimension = dimension;
  d.side_lengths = std::move(side_lengths);
  d.grid_points = grid_points;
  d.mode_cutoff = mode_cutoff;
  d.tail_tolerance = tail_tolerance;
  return d;
}

namespace detail {

Array apply_axis_matrix(const Matrix& T, const Array& x, const std::vector<Index>& dims,
                        int axis) {
  const Index d_in = dims[axis];
  if (T.cols() != d_in) throw std::invalid_argument("axis matrix shape mismatch");
  const Index d_out = T.rows();

  Index outer = 1, inner = 1;
  for (int a = 0; a < axis; ++a) outer *= dims[a];
  for (int a = axis + 1; a < static_cast<int>(dims.size()); ++a) inner *= dims[a];

  Array result(outer * d_out * inner);
  using RowMajorMap =
      Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
  using RowMajorOut =
      Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
  for (Index o = 0; o < outer; ++o) {
    RowMajorMap block(x.data() + o * d_in * inner, d_in, inner);
    RowMajorOut out(result.data() + o * d_out * inner, d_out, inner);
    out.noalias() = T * block;
  }
  return result;
}

}  // namespace detail

}  // namespace supersol
