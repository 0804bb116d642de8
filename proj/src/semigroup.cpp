#include "supersol/semigroup.hpp"

#include <cmath>
#include <stdexcept>

namespace supersol {

namespace {

// Retained modes are damped below e^-30 at the spectral/kernel switchover, so
// both application routes agree there to round-off.
constexpr double kSwitchDecayLog = 30.0;

std::pair<Matrix, Matrix> dirichlet_basis(int intervals, int modes) {
  const int nodes = intervals + 1;
  Matrix synth(nodes, modes);
  Matrix analysis = Matrix::Zero(modes, nodes);
  for (int k = 1; k <= modes; ++k) {
    for (int j = 0; j < nodes; ++j) {
      const double s = std::sin(k * M_PI * static_cast<double>(j) / intervals);
      synth(j, k - 1) = s;
      if (j > 0 && j < intervals) analysis(k - 1, j) = 2.0 * s / intervals;
    }
  }
  return {std::move(synth), std::move(analysis)};
}

std::pair<Matrix, Matrix> periodic_basis(int nodes, int modes) {
  const int dim = 2 * modes - 1;
  Matrix synth(nodes, dim), analysis(dim, nodes);
  for (int j = 0; j < nodes; ++j) {
    synth(j, 0) = 1.0;
    analysis(0, j) = 1.0 / nodes;
  }
  for (int k = 1; k < modes; ++k) {
    for (int j = 0; j < nodes; ++j) {
      const double arg = 2.0 * M_PI * k * static_cast<double>(j) / nodes;
      const double c = std::cos(arg), s = std::sin(arg);
      synth(j, 2 * k - 1) = c;
      analysis(2 * k - 1, j) = 2.0 * c / nodes;
      synth(j, 2 * k) = s;
      analysis(2 * k, j) = 2.0 * s / nodes;
    }
  }
  return {std::move(synth), std::move(analysis)};
}

Array axis_eigenvalues(const Domain& d, int axis) {
  const double L = d.side_lengths[axis];
  if (d.kind == DomainKind::dirichlet_box) {
    Array lam(d.mode_cutoff);
    for (int k = 1; k <= d.mode_cutoff; ++k) {
      const double w = k * M_PI / L;
      lam[k - 1] = w * w;
    }
    return lam;
  }
  Array lam(2 * d.mode_cutoff - 1);
  lam[0] = 0.0;
  for (int k = 1; k < d.mode_cutoff; ++k) {
    const double w = 2.0 * M_PI * k / L;
    lam[2 * k - 1] = w * w;
    lam[2 * k] = w * w;
  }
  return lam;
}

std::vector<Index> node_dims(const Domain& d) {
  return std::vector<Index>(d.dimension, d.nodes_per_axis());
}

detail::KernelTable build_kernel_table(const Domain& d, int axis, double t) {
  const int n = d.nodes_per_axis();
  const double h = d.spacing(axis);
  const double L = d.side_lengths[axis];
  const double norm = 1.0 / std::sqrt(4.0 * M_PI * t);
  auto g = [&](double x) { return norm * std::exp(-x * x / (4.0 * t)); };
  const double support = std::sqrt(4.0 * t * 710.0);  // exp underflow radius

  detail::KernelTable tab;
  if (d.kind == DomainKind::whole_space_truncated) {
    tab.translation.resize(2 * n - 1);
    for (int k = -(n - 1); k <= n - 1; ++k) tab.translation[k + n - 1] = g(k * h);
    return tab;
  }
  if (d.kind == DomainKind::periodic_box) {
    const int mm = 1 + static_cast<int>(std::ceil((support + L) / L));
    tab.translation = Array::Zero(2 * n - 1);
    for (int k = -(n - 1); k <= n - 1; ++k) {
      double sum = 0;
      for (int m = -mm; m <= mm; ++m) sum += g(k * h - m * L);
      tab.translation[k + n - 1] = sum;
    }
    // Normalise the wrapped kernel so the zero mode is preserved exactly:
    // row sums are translation-invariant, one period covers each residue once.
    double row = 0;
    for (int k = 0; k < n; ++k) row += h * tab.translation[k + n - 1];
    tab.translation /= row;
    return tab;
  }
  // Dirichlet: period-2L image sums plus the reflected part.
  const int mm = 1 + static_cast<int>(std::ceil((support + 2 * L) / (2 * L)));
  tab.translation = Array::Zero(2 * n - 1);
  for (int k = -(n - 1); k <= n - 1; ++k) {
    double sum = 0;
    for (int m = -mm; m <= mm; ++m) sum += g(k * h - 2 * m * L);
    tab.translation[k + n - 1] = sum;
  }
  tab.reflection = Array::Zero(2 * n - 1);
  for (int k = 0; k <= 2 * (n - 1); ++k) {
    double sum = 0;
    for (int m = -mm; m <= mm; ++m) sum += g(k * h - 2 * m * L);
    tab.reflection[k] = sum;
  }
  tab.has_reflection = true;
  return tab;
}

const detail::KernelTable& cached_kernel_table(const SemigroupPlan& plan, double t,
                                               int axis) {
  auto& cache = *plan.kernels;
  std::lock_guard<std::mutex> lock(cache.mutex);
  const auto key = std::make_pair(t, axis);
  auto it = cache.tables.find(key);
  if (it == cache.tables.end()) {
    if (cache.tables.size() > 8192) cache.tables.clear();
    it = cache.tables.emplace(key, build_kernel_table(plan.domain, axis, t)).first;
  }
  return it->second;
}

Array kernel_apply_axis(const detail::KernelTable& tab, const Array& weights,
                        const Array& x, const std::vector<Index>& dims, int axis) {
  const Index n = dims[axis];
  Index outer = 1, inner = 1;
  for (int a = 0; a < axis; ++a) outer *= dims[a];
  for (int a = axis + 1; a < static_cast<int>(dims.size()); ++a) inner *= dims[a];

  Array result = Array::Zero(x.size());
  const double* trans = tab.translation.data();
  const Index offset = n - 1;
  const Index block = n * inner;
  for (Index o = 0; o < outer; ++o) {
    const double* xo = x.data() + o * block;
    double* ro = result.data() + o * block;
    for (Index j = 0; j < n; ++j) {
      const double wj = weights[j];
      if (inner == 1) {
        const double xj = xo[j] * wj;
        if (xj == 0) continue;
        if (tab.has_reflection) {
          const double* refl = tab.reflection.data();
          for (Index i = 0; i < n; ++i) {
            const double k = trans[i - j + offset] - refl[i + j];
            if (k > 0) ro[i] += k * xj;
          }
        } else {
          for (Index i = 0; i < n; ++i) ro[i] += trans[i - j + offset] * xj;
        }
      } else {
        Eigen::Map<const Array> xv(xo + j * inner, inner);
        for (Index i = 0; i < n; ++i) {
          double k = trans[i - j + offset];
          if (tab.has_reflection) k = std::max(k - tab.reflection[i + j], 0.0);
          if (k != 0) Eigen::Map<Array>(ro + i * inner, inner) += (k * wj) * xv;
        }
      }
    }
  }
  return result;
}

void check_whole_space_tail(const Domain& d, const Array& values) {
  const Index n = d.nodes_per_axis();
  for (Index i = 0; i < values.size(); ++i) {
    Index rem = i;
    bool boundary = false;
    for (int a = 0; a < d.dimension; ++a) {
      const Index idx = rem % n;
      rem /= n;
      if (idx == 0 || idx == n - 1) boundary = true;
    }
    if (boundary && std::abs(values[i]) > d.tail_tolerance)
      throw std::invalid_argument(
          "whole-space field violates the tail tolerance at the truncation boundary");
  }
}

// Gauss-Legendre 8-point rule on [-1, 1].
constexpr double kGL8x[8] = {-0.9602898564975363, -0.7966664774136267,
                             -0.5255324099163290, -0.1834346424956498,
                             0.1834346424956498,  0.5255324099163290,
                             0.7966664774136267,  0.9602898564975363};
constexpr double kGL8w[8] = {0.1012285362903763, 0.2223810344533745,
                             0.3137066458778873, 0.3626837833783620,
                             0.3626837833783620, 0.3137066458778873,
                             0.2223810344533745, 0.1012285362903763};

/// Sine coefficients of amp |x - c|^{-a} on [0, L] by adaptive analytic
/// quadrature; grid sampling would underestimate the mass near the singular
/// point.
Array singular_sine_coefficients(const Domain& d, const SingularInfo& s, int modes) {
  const double L = d.side_lengths[0];
  const double c = s.center[0];
  const double a = s.exponent;
  Array coeffs(modes);
  for (int k = 1; k <= modes; ++k) {
    const int panels = 48 + 2 * k;
    const double freq = k * M_PI / L;
    // After dist = xi^{1/(1-a)} the weight cancels: integrand is
    // (1/(1-a)) * sin(freq * (c +- dist)) per side.
    auto side = [&](double sign, double D) {
      if (D <= 0) return 0.0;
      const double expo = 1.0 / (1.0 - a);
      const double Xi = std::pow(D, 1.0 - a);
      double total = 0;
      for (int i = 0; i < panels; ++i) {
        const double lo = Xi * std::pow(static_cast<double>(i) / panels, 2.0);
        const double hi = Xi * std::pow(static_cast<double>(i + 1) / panels, 2.0);
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        double acc = 0;
        for (int gp = 0; gp < 8; ++gp) {
          const double xi = mid + half * kGL8x[gp];
          const double dist = std::pow(xi, expo);
          acc += kGL8w[gp] * std::sin(freq * (c + sign * dist));
        }
        total += half * acc;
      }
      return total * expo;
    };
    coeffs[k - 1] = (2.0 / L) * s.amplitude * (side(-1.0, c) + side(+1.0, L - c));
  }
  return coeffs;
}

}  // namespace

Index SemigroupPlan::total_modes() const {
  Index total = 1;
  for (Index m : spectral_dims) total *= m;
  return total;
}

SemigroupPlan make_plan(const Domain& domain) {
  SemigroupPlan plan;
  plan.domain = domain;
  plan.kernels = std::make_shared<detail::KernelCache>();

  // Below tau_identity the kernel is narrower than the grid can represent:
  // the trapezoid aliasing error exp(-t (2 pi / h)^2) only falls to 1e-12 at
  // t = log(1e12) h^2 / (4 pi^2), so S(t) is taken as the identity there.
  double h_max = 0;
  for (int a = 0; a < domain.dimension; ++a) h_max = std::max(h_max, domain.spacing(a));
  plan.tau_identity = std::log(1e12) / (4.0 * M_PI * M_PI) * h_max * h_max;

  if (domain.kind == DomainKind::whole_space_truncated) {
    plan.tau_positivity = std::numeric_limits<double>::infinity();
    return plan;
  }

  std::vector<Array> axis_lams(domain.dimension);
  for (int a = 0; a < domain.dimension; ++a) {
    auto [synth, analysis] = domain.kind == DomainKind::dirichlet_box
                                 ? dirichlet_basis(domain.grid_points, domain.mode_cutoff)
                                 : periodic_basis(domain.grid_points, domain.mode_cutoff);
    plan.axis_synthesis.push_back(std::move(synth));
    plan.axis_analysis.push_back(std::move(analysis));
    plan.spectral_dims.push_back(plan.axis_synthesis.back().cols());
    axis_lams[a] = axis_eigenvalues(domain, a);
  }

  plan.eigenvalues.resize(plan.total_modes());
  for (Index flat = 0; flat < plan.eigenvalues.size(); ++flat) {
    Index rem = flat;
    double lam = 0;
    for (int a = domain.dimension - 1; a >= 0; --a) {
      lam += axis_lams[a][rem % plan.spectral_dims[a]];
      rem /= plan.spectral_dims[a];
    }
    plan.eigenvalues[flat] = lam;
  }

  const double lam_max = plan.eigenvalues.maxCoeff();
  plan.tau_positivity = kSwitchDecayLog / lam_max;

  double gap = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < plan.eigenvalues.size(); ++i)
    if (plan.eigenvalues[i] > 0) gap = std::min(gap, plan.eigenvalues[i]);
  plan.spectral_gap = gap;
  plan.has_spectral_gap = domain.kind == DomainKind::dirichlet_box;
  return plan;
}

Array spectral_of_field(const SemigroupPlan& plan, const Field& f) {
  if (!plan.has_spectral_basis())
    throw std::invalid_argument("whole-space domains have no spectral basis");
  if (f.spectral) return *f.spectral;
  // Borderline profiles (exponent >= 1, integrable only in n >= 2) stay on
  // their capped grid representation.
  if (f.singular && f.singular->exponent < 1.0 && plan.domain.dimension == 1 &&
      plan.domain.kind == DomainKind::dirichlet_box)
    return singular_sine_coefficients(plan.domain, *f.singular, plan.domain.mode_cutoff);

  Array coeffs = f.values;
  std::vector<Index> dims = node_dims(plan.domain);
  for (int a = 0; a < plan.domain.dimension; ++a) {
    coeffs = detail::apply_axis_matrix(plan.axis_analysis[a], coeffs, dims, a);
    dims[a] = plan.spectral_dims[a];
  }
  return coeffs;
}

Field synthesize(const SemigroupPlan& plan, const Array& coefficients) {
  if (coefficients.size() != plan.total_modes())
    throw std::invalid_argument("coefficient vector does not match the mode set");
  Array values = coefficients;
  std::vector<Index> dims(plan.spectral_dims.begin(), plan.spectral_dims.end());
  for (int a = 0; a < plan.domain.dimension; ++a) {
    values = detail::apply_axis_matrix(plan.axis_synthesis[a], values, dims, a);
    dims[a] = plan.domain.nodes_per_axis();
  }
  const double scale = values.abs().maxCoeff();
  return field_from_synthesis(plan.domain, std::move(values), 1e-7 * (1.0 + scale));
}

Field with_spectral(const SemigroupPlan& plan, Field f) {
  if (!f.spectral) f.spectral = spectral_of_field(plan, f);
  return f;
}

Array kernel_apply(const SemigroupPlan& plan, const Array& values, double t) {
  Array out = values;
  const std::vector<Index> dims = node_dims(plan.domain);
  for (int a = 0; a < plan.domain.dimension; ++a) {
    const auto& tab = cached_kernel_table(plan, t, a);
    out = kernel_apply_axis(tab, plan.domain.axis_quadrature_weights(a), out, dims, a);
  }
  return out;
}

Field apply_semigroup(const SemigroupPlan& plan, const Field& f, double t) {
  if (!(t >= 0) || !std::isfinite(t))
    throw std::invalid_argument("semigroup time must be finite and nonnegative");
  if (!f.domain.same_grid(plan.domain))
    throw std::invalid_argument("field and plan domains do not match");
  if (plan.domain.kind == DomainKind::whole_space_truncated)
    check_whole_space_tail(plan.domain, f.values);

  if (t == 0 || t <= plan.tau_identity) return f;  // identity: below grid resolution

  if (plan.has_spectral_basis() && t >= plan.tau_positivity) {
    Array coeffs = spectral_of_field(plan, f);
    coeffs *= (-plan.eigenvalues * t).exp();
    Field out = synthesize(plan, coeffs);
    if (f.singular) out.values = out.values.max(0.0);
    return out;
  }

  Array values = kernel_apply(plan, f.values, t).max(0.0);
  return field_from_synthesis(plan.domain, std::move(values), 0.0);
}

double damped_sup_norm(const SemigroupPlan& plan, const Array& coefficients, double t) {
  Array damped = coefficients * (-plan.eigenvalues * t).exp();
  Array values = damped;
  std::vector<Index> dims(plan.spectral_dims.begin(), plan.spectral_dims.end());
  for (int a = 0; a < plan.domain.dimension; ++a) {
    values = detail::apply_axis_matrix(plan.axis_synthesis[a], values, dims, a);
    dims[a] = plan.domain.nodes_per_axis();
  }
  return values.abs().maxCoeff();
}

std::vector<std::pair<double, double>> sup_norm_trace(const SemigroupPlan& plan,
                                                      const Field& f,
                                                      const Array& time_grid) {
  if (time_grid.size() == 0) throw std::invalid_argument("empty time grid");
  for (Index i = 0; i < time_grid.size(); ++i) {
    if (!(time_grid[i] >= 0)) throw std::invalid_argument("time grid must be nonnegative");
    if (i > 0 && !(time_grid[i] > time_grid[i - 1]))
      throw std::invalid_argument("time grid must be strictly increasing");
  }

  std::optional<Array> coeffs;
  if (plan.has_spectral_basis()) coeffs = spectral_of_field(plan, f);

  std::vector<std::pair<double, double>> trace;
  trace.reserve(time_grid.size());
  for (Index i = 0; i < time_grid.size(); ++i) {
    const double t = time_grid[i];
    double sup;
    if (t == 0 || t <= plan.tau_identity) {
      sup = f.values.abs().maxCoeff();
    } else if (coeffs && t >= plan.tau_positivity) {
      sup = damped_sup_norm(plan, *coeffs, t);
    } else {
      sup = kernel_apply(plan, f.values, t).max(0.0).maxCoeff();
    }
    trace.emplace_back(t, sup);
  }
  return trace;
}

SmoothingProbe smoothing_probe(const SemigroupPlan& plan, const Field& f, double q,
                               double r, const Array& time_grid) {
  if (!(q >= 1)) throw std::invalid_argument("smoothing probe requires q >= 1");
  if (q > r) throw std::invalid_argument("smoothing probe requires q <= r");
  if (time_grid.size() == 0) throw std::invalid_argument("empty time grid");

  const double n = plan.domain.dimension;
  const double inv_r = std::isinf(r) ? 0.0 : 1.0 / r;
  const double ex = 0.5 * n * (1.0 / q - inv_r);  // ratio carries t^{+ex}
  const double norm_q = lq_norm(f, q);

  SmoothingProbe probe;
  for (Index i = 0; i < time_grid.size(); ++i) {
    const double t = time_grid[i];
    double ratio;
    if (norm_q == 0) {
      ratio = 0;
    } else if (std::isinf(norm_q)) {
      ratio = 0;  // unbounded reference norm: the estimate is vacuous
    } else if (t == 0) {
      ratio = ex > 0 ? 0.0 : lq_norm(f, r) / norm_q;
    } else {
      const Field st = apply_semigroup(plan, f, t);
      ratio = lq_norm(st, r) * std::pow(t, ex) / norm_q;
    }
    probe.ratios.emplace_back(t, ratio);
    probe.max_ratio = std::max(probe.max_ratio, ratio);
  }
  return probe;
}

JensenResult jensen_check(const SemigroupPlan& plan, const Field& f, double r, double t,
                          double tol_numeric) {
  if (!(r >= 1))
    throw std::invalid_argument("jensen_check requires r >= 1 (inequality direction)");
  if (!(t >= 0)) throw std::invalid_argument("jensen_check requires t >= 0");

  JensenResult res;
  if (t == 0 || r == 1) {  // equality cases
    res.holds = true;
    res.min_gap = 0;
    return res;
  }
  const Field sf = apply_semigroup(plan, f, t);
  const Field sfr = apply_semigroup(plan, pow(f, r), t);
  const Array gap = sfr.values - sf.values.pow(r);
  res.min_gap = gap.minCoeff(&res.worst_node);
  res.holds = res.min_gap >= -tol_numeric;
  return res;
}

}  // namespace supersol
