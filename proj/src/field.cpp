#include "supersol/field.hpp"

#include <cmath>
#include <stdexcept>

namespace supersol {

namespace {

constexpr double kRoundoffTol = 1e-14;

void enforce_nonnegative(Array& values, double clamp_tol, const char* what) {
  for (Index i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite value");
    if (v < 0) {
      if (v < -clamp_tol)
        throw std::invalid_argument(std::string(what) + ": negative value " +
                                    std::to_string(v));
      values[i] = 0;
    }
  }
}

std::vector<Index> node_multi_index(const Domain& d, Index flat) {
  std::vector<Index> idx(d.dimension);
  const Index n = d.nodes_per_axis();
  for (int a = d.dimension - 1; a >= 0; --a) {
    idx[a] = flat % n;
    flat /= n;
  }
  return idx;
}

Index flat_of(const Domain& d, const std::vector<Index>& idx) {
  const Index n = d.nodes_per_axis();
  Index flat = 0;
  for (int a = 0; a < d.dimension; ++a) flat = flat * n + idx[a];
  return flat;
}

}  // namespace

Field field_from_values(const Domain& domain, Array values) {
  if (values.size() != domain.total_nodes())
    throw std::invalid_argument("field values do not match the grid size");
  enforce_nonnegative(values, kRoundoffTol, "field");
  return Field{domain, std::move(values), std::nullopt, std::nullopt};
}

Field field_from_synthesis(const Domain& domain, Array values, double clamp_tol) {
  if (values.size() != domain.total_nodes())
    throw std::invalid_argument("field values do not match the grid size");
  enforce_nonnegative(values, clamp_tol, "synthesized field");
  return Field{domain, std::move(values), std::nullopt, std::nullopt};
}

Field make_field(const Domain& domain, const ProfileSpec& profile) {
  const Index total = domain.total_nodes();
  const int n = domain.dimension;

  if (const auto* e = std::get_if<EigenfunctionProfile>(&profile)) {
    if (domain.kind != DomainKind::dirichlet_box)
      throw std::invalid_argument("eigenfunction profiles require a dirichlet_box domain");
    if (e->amplitude < 0) throw std::invalid_argument("amplitude must be nonnegative");
    std::vector<int> modes = e->mode_indices;
    if (modes.empty()) modes.assign(n, 1);
    if (static_cast<int>(modes.size()) != n)
      throw std::invalid_argument("eigenfunction needs one mode index per axis");
    for (int k : modes)
      if (k < 1) throw std::invalid_argument("mode indices must be >= 1");

    Array values(total);
    for (Index i = 0; i < total; ++i) {
      const auto coords = domain.node_coordinates(i);
      double v = e->amplitude;
      for (int a = 0; a < n; ++a)
        v *= std::sin(modes[a] * M_PI * coords[a] / domain.side_lengths[a]);
      values[i] = v;
    }
    return field_from_values(domain, std::move(values));
  }

  if (const auto* g = std::get_if<GaussianProfile>(&profile)) {
    if (g->amplitude < 0) throw std::invalid_argument("amplitude must be nonnegative");
    if (!(g->width > 0)) throw std::invalid_argument("gaussian width must be positive");
    std::vector<double> center = g->center;
    if (center.empty()) {
      center.resize(n);
      for (int a = 0; a < n; ++a)
        center[a] = 0.5 * (domain.axis_min(a) + domain.axis_max(a));
    }
    if (static_cast<int>(center.size()) != n)
      throw std::invalid_argument("gaussian center needs one coordinate per axis");

    Array values(total);
    for (Index i = 0; i < total; ++i) {
      const auto coords = domain.node_coordinates(i);
      double r2 = 0;
      for (int a = 0; a < n; ++a) {
        const double d = coords[a] - center[a];
        r2 += d * d;
      }
      values[i] = g->amplitude * std::exp(-r2 / (g->width * g->width));
    }
    return field_from_values(domain, std::move(values));
  }

  if (const auto* s = std::get_if<PowerSingularityProfile>(&profile)) {
    if (s->amplitude < 0) throw std::invalid_argument("amplitude must be nonnegative");
    if (!(s->exponent > 0)) throw std::invalid_argument("singularity exponent must be positive");
    if (s->exponent >= n)
      throw std::invalid_argument(
          "not_integrable: |x - c|^-a lies outside L^1 for a >= dimension");
    std::vector<double> center = s->center;
    if (static_cast<int>(center.size()) != n)
      throw std::invalid_argument("singularity center needs one coordinate per axis");
    for (int a = 0; a < n; ++a)
      if (center[a] < domain.axis_min(a) || center[a] > domain.axis_max(a))
        throw std::invalid_argument("singularity center must lie inside the domain");

    Array values(total);
    Index singular_node = -1;
    for (Index i = 0; i < total; ++i) {
      const auto coords = domain.node_coordinates(i);
      double r2 = 0;
      for (int a = 0; a < n; ++a) {
        const double d = coords[a] - center[a];
        r2 += d * d;
      }
      if (r2 == 0) {
        singular_node = i;
        values[i] = 0;  // capped below
      } else {
        values[i] = s->amplitude * std::pow(std::sqrt(r2), -s->exponent);
      }
    }
    if (singular_node >= 0) {
      // Cap the singular node at the largest neighbouring sample.
      const auto idx = node_multi_index(domain, singular_node);
      double cap = 0;
      for (int a = 0; a < n; ++a) {
        for (int dir : {-1, 1}) {
          auto nb = idx;
          nb[a] += dir;
          if (nb[a] < 0 || nb[a] >= domain.nodes_per_axis()) continue;
          cap = std::max(cap, values[flat_of(domain, nb)]);
        }
      }
      values[singular_node] = cap;
    }
    Field f = field_from_values(domain, std::move(values));
    f.singular = SingularInfo{center, s->exponent, s->amplitude,
                              static_cast<double>(n) / s->exponent};
    return f;
  }

  if (const auto* c = std::get_if<ConstantProfile>(&profile)) {
    if (c->amplitude < 0) throw std::invalid_argument("amplitude must be nonnegative");
    return field_from_values(domain, Array::Constant(total, c->amplitude));
  }

  const auto& t = std::get<TableProfile>(profile);
  return field_from_values(domain, t.values);
}

Field pow(const Field& f, double e) {
  if (!(e >= 0)) throw std::invalid_argument("field power must be nonnegative");
  Array values = f.values.pow(e);
  Field out = field_from_synthesis(f.domain, std::move(values), 0.0);
  if (f.singular) {
    SingularInfo s = *f.singular;
    s.exponent *= e;
    s.amplitude = std::pow(s.amplitude, e);
    s.lq_upper_bound = s.exponent > 0 ? f.domain.dimension / s.exponent
                                      : std::numeric_limits<double>::infinity();
    out.singular = s;
  }
  return out;
}

namespace {

/// Exact \int |x - c|^{-b} dx over a 1D axis range, b < 1.
double axis_power_integral(double lo, double hi, double c, double b) {
  const double left = c - lo, right = hi - c;
  return (std::pow(left, 1 - b) + std::pow(right, 1 - b)) / (1 - b);
}

}  // namespace

double lq_norm(const Field& f, double q) {
  if (q < 1) throw std::invalid_argument("lq_norm requires q >= 1");
  const Domain& d = f.domain;

  if (std::isinf(q)) return f.values.abs().maxCoeff();

  // Integrable 1D singular profiles: the grid cap affects every finite q, so
  // integrate the analytic profile instead.
  if (f.singular && d.dimension == 1 && !std::isinf(q)) {
    const double b = f.singular->exponent * q;
    if (b >= 1) return std::numeric_limits<double>::infinity();
    const double integral =
        std::pow(f.singular->amplitude, q) *
        axis_power_integral(d.axis_min(0), d.axis_max(0), f.singular->center[0], b);
    return std::pow(integral, 1.0 / q);
  }

  const double vmax = f.values.abs().maxCoeff();
  if (vmax == 0) return 0;

  // Tensor-product trapezoid weights, evaluated with the max factored out so
  // large q cannot overflow.
  std::vector<Array> w(d.dimension);
  for (int a = 0; a < d.dimension; ++a) w[a] = d.axis_quadrature_weights(a);
  const Index n = d.nodes_per_axis();
  double sum = 0;
  for (Index i = 0; i < f.values.size(); ++i) {
    double weight = 1;
    Index rem = i;
    for (int a = d.dimension - 1; a >= 0; --a) {
      weight *= w[a][rem % n];
      rem /= n;
    }
    sum += weight * std::pow(std::abs(f.values[i]) / vmax, q);
  }
  return vmax * std::pow(sum, 1.0 / q);
}

CompareResult pointwise_compare(const Field& f, const Field& g, double tol) {
  if (!f.domain.same_grid(g.domain))
    throw std::invalid_argument("pointwise_compare requires matching grids");
  CompareResult r;
  r.dominated = true;
  double worst = -std::numeric_limits<double>::infinity();
  for (Index i = 0; i < f.values.size(); ++i) {
    const double excess = f.values[i] - g.values[i] - tol;
    if (excess > 0 && excess > worst) {
      worst = excess;
      r.worst_node = i;
      r.dominated = false;
    }
  }
  if (!r.dominated) r.gap = worst;
  return r;
}

}  // namespace supersol
