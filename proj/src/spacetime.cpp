#include "supersol/spacetime.hpp"

#include <cmath>
#include <stdexcept>

namespace supersol {

TimeGrid TimeGrid::graded(double T, int intervals, double gamma) {
  if (!(T > 0) || !std::isfinite(T)) throw std::invalid_argument("grid horizon must be positive");
  if (intervals < 1) throw std::invalid_argument("grid needs at least one interval");
  if (!(gamma >= 1)) throw std::invalid_argument("grading exponent must be >= 1");
  Array nodes(intervals + 1);
  for (int j = 0; j <= intervals; ++j)
    nodes[j] = T * std::pow(static_cast<double>(j) / intervals, gamma);
  nodes[intervals] = T;
  TimeGrid g;
  g.nodes = std::move(nodes);
  g.gamma = gamma;
  return g;
}

TimeGrid TimeGrid::log_prefixed(double T, int intervals, double prefix_fraction) {
  if (!(T > 0) || !std::isfinite(T)) throw std::invalid_argument("grid horizon must be positive");
  if (intervals < 2) throw std::invalid_argument("grid needs at least two intervals");
  if (!(prefix_fraction > 0 && prefix_fraction < 1))
    throw std::invalid_argument("prefix fraction must lie in (0, 1)");
  Array nodes(intervals + 1);
  nodes[0] = 0;
  const double ratio = std::pow(prefix_fraction, 1.0 / (intervals - 1));
  for (int j = 1; j <= intervals; ++j)
    nodes[j] = T * std::pow(ratio, static_cast<double>(intervals - j));
  nodes[intervals] = T;
  TimeGrid g;
  g.nodes = std::move(nodes);
  g.gamma = 1;
  return g;
}

TimeGrid TimeGrid::from_nodes(Array nodes) {
  // A single node {0} is allowed: runs that die before their first step carry
  // a degenerate trajectory.
  if (nodes.size() < 1) throw std::invalid_argument("grid needs at least one node");
  if (nodes[0] != 0) throw std::invalid_argument("grid must start at t = 0");
  for (Index j = 1; j < nodes.size(); ++j)
    if (!(nodes[j] > nodes[j - 1]))
      throw std::invalid_argument("grid nodes must be strictly increasing");
  TimeGrid g;
  g.nodes = std::move(nodes);
  return g;
}

Field SpaceTimeField::slice(int j) const {
  if (j < 0 || j > grid.intervals()) throw std::out_of_range("slice index");
  return field_from_synthesis(domain, slices.col(j).array(), 0.0);
}

Array SpaceTimeField::at_time(double t) const {
  const Array& nodes = grid.nodes;
  if (t < nodes[0] || t > nodes[nodes.size() - 1] * (1 + 1e-12))
    throw std::invalid_argument("interpolation time outside the grid");
  if (t >= nodes[nodes.size() - 1]) return slices.col(slices.cols() - 1).array();
  Index hi = 1;
  while (nodes[hi] < t) ++hi;
  const double w = (t - nodes[hi - 1]) / (nodes[hi] - nodes[hi - 1]);
  return (1 - w) * slices.col(hi - 1).array() + w * slices.col(hi).array();
}

SpaceTimeField semigroup_trajectory(const SemigroupPlan& plan, const Field& phi,
                                    const TimeGrid& grid) {
  SpaceTimeField w;
  w.domain = plan.domain;
  w.grid = grid;
  w.slices.resize(plan.domain.total_nodes(), grid.intervals() + 1);
  w.slices.col(0) = phi.values.matrix();
  for (int j = 1; j <= grid.intervals(); ++j)
    w.slices.col(j) = apply_semigroup(plan, phi, grid.nodes[j]).values.matrix();
  return w;
}

SpaceTimeField spacetime_from_function(
    const Domain& domain, const TimeGrid& grid,
    const std::function<double(double, const std::vector<double>&)>& fn) {
  SpaceTimeField w;
  w.domain = domain;
  w.grid = grid;
  const Index total = domain.total_nodes();
  w.slices.resize(total, grid.intervals() + 1);
  for (int j = 0; j <= grid.intervals(); ++j) {
    for (Index i = 0; i < total; ++i) {
      const double v = fn(grid.nodes[j], domain.node_coordinates(i));
      if (!std::isfinite(v) || v < 0)
        throw std::invalid_argument("trajectory values must be finite and nonnegative");
      w.slices(i, j) = v;
    }
  }
  return w;
}

SpaceTimeField scaled(const SpaceTimeField& w, double factor) {
  if (!(factor >= 0)) throw std::invalid_argument("scale factor must be nonnegative");
  SpaceTimeField out = w;
  out.slices *= factor;
  return out;
}

}  // namespace supersol
