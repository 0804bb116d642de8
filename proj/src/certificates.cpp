#include "supersol/certificates.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace supersol {

namespace {

// Gauss-Legendre 4-point rule on [-1, 1]; composed over the (graded) time
// grid it integrates the rate functions far below certificate tolerances
// while the grading keeps integrable endpoint singularities benign.
constexpr double kGL4x[4] = {-0.8611363115940526, -0.3399810435848563,
                             0.3399810435848563, 0.8611363115940526};
constexpr double kGL4w[4] = {0.3478548451374538, 0.6521451548625461,
                             0.6521451548625461, 0.3478548451374538};

// First-mode domination of the box heat flow acting on the constant datum:
// sup S(u) 1 <= min(1, C e^{-lambda_1 u}) per axis with C = (4/pi) * 1.05
// (the 1.05 absorbs the higher odd harmonics once the exponential bound is
// active).
constexpr double kFirstModeConstant = 1.34;

double infinity() { return std::numeric_limits<double>::infinity(); }

/// ||S(t) field||_inf with the coefficient transform done once. Integrable 1D
/// power singularities switch to the self-similar closed form
/// amp (4t)^{-a/2} Gamma((1-a)/2) / sqrt(pi) below the spectral resolution
/// scale, where the capped grid values would undersell the profile.
class SupEvaluator {
 public:
  SupEvaluator(const SemigroupPlan& plan, Field field)
      : plan_(plan), field_(std::move(field)) {
    if (plan_.has_spectral_basis()) coeffs_ = spectral_of_field(plan_, field_);
    if (field_.singular && field_.singular->exponent < 1.0 &&
        plan_.domain.dimension == 1 &&
        plan_.domain.kind == DomainKind::dirichlet_box) {
      const double a = field_.singular->exponent;
      self_similar_scale_ =
          field_.singular->amplitude * std::tgamma(0.5 * (1.0 - a)) / std::sqrt(M_PI);
      self_similar_exponent_ = 0.5 * a;
    }
  }

  double operator()(double t) const {
    if (self_similar_scale_ > 0 && t > 0 && t < plan_.tau_positivity)
      return self_similar_scale_ * std::pow(4.0 * t, -self_similar_exponent_);
    if (t == 0 || t <= plan_.tau_identity) return field_.values.maxCoeff();
    if (coeffs_ && t >= plan_.tau_positivity) return damped_sup_norm(plan_, *coeffs_, t);
    return kernel_apply(plan_, field_.values, t).max(0.0).maxCoeff();
  }

  const Field& field() const { return field_; }

 private:
  const SemigroupPlan& plan_;
  Field field_;
  std::optional<Array> coeffs_;
  double self_similar_scale_ = 0;
  double self_similar_exponent_ = 0;
};

/// Upper bound for \int_T^inf ||S(s) psi||_inf^beta ds, beta > 0. Dirichlet
/// boxes use the spectral-gap decay of the flow; the truncated whole space
/// uses the kernel bound (4 pi s)^{-n/2} ||psi||_1. The torus keeps its mean,
/// so no bound exists there.
std::optional<double> tail_integral_bound(const SemigroupPlan& plan, double sup_at_T,
                                          double T, double beta, double psi_l1) {
  if (!(beta > 0)) return std::nullopt;
  if (sup_at_T == 0) return 0.0;
  const int n = plan.domain.dimension;
  if (plan.has_spectral_gap) {
    const double C = std::pow(kFirstModeConstant, n);
    const double lam = plan.spectral_gap;
    return std::pow(sup_at_T, beta) * (std::log(C) / lam + 1.0 / (beta * lam));
  }
  if (plan.domain.kind == DomainKind::whole_space_truncated) {
    const double nb2 = 0.5 * n * beta;
    if (nb2 <= 1) return std::nullopt;
    const double k = std::pow(4.0 * M_PI, -0.5 * n * beta) * std::pow(psi_l1, beta);
    return k * std::pow(T, 1.0 - nb2) / (nb2 - 1.0);
  }
  return std::nullopt;
}

}  // namespace

double cp_constant(double p) {
  if (!(p > 1)) throw std::invalid_argument("cp_constant requires p > 1");
  return std::pow(p - 1.0, p - 1.0) / std::pow(p, p);
}

double optimal_A(double p) {
  if (!(p > 1)) throw std::invalid_argument("optimal_A requires p > 1");
  return p / (p - 1.0);
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::supercritical: return "supercritical";
    case Regime::critical: return "critical";
    case Regime::subcritical: return "subcritical";
  }
  return "unknown";
}

Regime CriticalExponent::classify(double q, double rel_tol) const {
  const double scale = std::max(1.0, std::abs(q_c));
  if (std::abs(q - q_c) <= rel_tol * scale) return Regime::critical;
  return q > q_c ? Regime::supercritical : Regime::subcritical;
}

bool CriticalExponent::critical_condition_met(double q, double rel_tol) const {
  return classify(q, rel_tol) == Regime::critical && q_c > 1.0;
}

CriticalExponent critical_exponent(int n, double p) {
  if (n < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!(p > 1)) throw std::invalid_argument("critical exponent requires p > 1");
  return CriticalExponent{n, p, 0.5 * n * (p - 1.0)};
}

RegularityGauge RegularityGauge::power_gauge(const Field& phi, double q) {
  if (!(q >= 1)) throw std::invalid_argument("power gauge requires q >= 1");
  RegularityGauge gauge;
  gauge.psi = pow(phi, q);
  gauge.is_power = true;
  gauge.power_q = q;
  gauge.g = [q](double s) { return std::pow(std::max(s, 0.0), 1.0 / q); };
  return gauge;
}

Prop32Result build_prop32_supersolution(const SemigroupPlan& plan, const Field& phi,
                                        const Nonlinearity& f, const RegularityGauge& gauge,
                                        double A, double T, const Prop32Options& options) {
  if (!(A > 1)) throw std::invalid_argument("the constant A must exceed 1");
  if (!(T > 0)) throw std::invalid_argument("horizon must be positive");
  const bool global = std::isinf(T);
  const double grid_T = global ? options.grid_T : T;
  const TimeGrid grid = TimeGrid::graded(grid_T, options.intervals, options.gamma);
  const int J = grid.intervals();
  const Index total = plan.domain.total_nodes();

  Field psi = gauge.psi;
  if (plan.has_spectral_basis()) psi = with_spectral(plan, std::move(psi));

  // Fields S(t_j) phi and S(t_j) psi at the nodes.
  std::vector<Array> s_phi(J + 1), s_psi(J + 1);
  for (int j = 0; j <= J; ++j) {
    s_phi[j] = apply_semigroup(plan, phi, grid.nodes[j]).values;
    s_psi[j] = apply_semigroup(plan, psi, grid.nodes[j]).values;
  }

  // Gauge admissibility S(t) phi <= g(S(t) psi) on the sampled (t, node) pairs.
  for (int j = 0; j <= J; ++j) {
    for (Index i = 0; i < total; ++i) {
      const double lhs = s_phi[j][i];
      const double rhs = gauge.g(s_psi[j][i]);
      if (lhs > rhs + options.admissibility_tol) {
        std::ostringstream os;
        os << "gauge inadmissible: S(t) phi exceeds g(S(t) psi) by " << lhs - rhs
           << " at node " << i << ", t = " << grid.nodes[j];
        throw std::invalid_argument(os.str());
      }
    }
  }

  // Rate function h(t) = sup over nodes of f(A g(S(t) psi)) / S(t) psi, with
  // 0/0 read as 0 and x/0 (x > 0) as +inf.
  auto rate_at = [&](const Array& spsi) {
    double h = 0;
    for (Index i = 0; i < spsi.size(); ++i) {
      const double denom = spsi[i];
      const double numer = f(A * gauge.g(denom));
      if (denom <= options.denominator_floor) {
        if (numer > options.denominator_floor) return infinity();
        continue;
      }
      h = std::max(h, numer / denom);
    }
    return h;
  };

  Prop32Result res;
  res.h_nodes.resize(J + 1);
  res.H_nodes.assign(J + 1, 0.0);
  for (int j = 0; j <= J; ++j) res.h_nodes[j] = rate_at(s_psi[j]);

  bool rate_finite = true;
  for (int j = 1; j <= J; ++j) {
    const double lo = grid.nodes[j - 1], hi = grid.nodes[j];
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double inc = 0;
    for (int gp = 0; gp < 4; ++gp) {
      const double s = mid + half * kGL4x[gp];
      const double h = rate_at(apply_semigroup(plan, psi, s).values);
      if (!std::isfinite(h)) {
        rate_finite = false;
        break;
      }
      inc += kGL4w[gp] * h;
    }
    if (!rate_finite) break;
    res.H_nodes[j] = res.H_nodes[j - 1] + half * inc;
  }

  // Multiplier sup_x S(t) psi / g(S(t) psi) (nodes with S(t) psi = 0 carry no
  // constraint) and the certified inequality 1 + multiplier * H <= A.
  auto multiplier_at = [&](const Array& spsi) {
    double m = 0;
    for (Index i = 0; i < spsi.size(); ++i) {
      const double s = spsi[i];
      if (s <= options.denominator_floor) continue;
      const double gs = gauge.g(s);
      if (gs <= 0) return infinity();
      m = std::max(m, s / gs);
    }
    return m;
  };

  Certificate cert;
  cert.condition_id = global ? ConditionId::prop31 : ConditionId::prop32;
  cert.p = f.is_power_law() ? f.exponent() : std::numeric_limits<double>::quiet_NaN();
  cert.q = gauge.is_power ? gauge.power_q : std::numeric_limits<double>::quiet_NaN();
  cert.A = A;
  if (f.is_power_law()) cert.Cp = cp_constant(f.exponent());

  double margin = infinity();
  double first_fail = std::numeric_limits<double>::quiet_NaN();
  for (int j = 0; j <= J; ++j) {
    const double cond = 1.0 + multiplier_at(s_psi[j]) * res.H_nodes[j];
    const double m = A - cond;
    cert.trace.push_back({grid.nodes[j], cond});
    if (m < margin) margin = m;
    if (m < 0 && std::isnan(first_fail)) first_fail = grid.nodes[j];
  }

  if (!rate_finite) {
    cert.valid = false;
    cert.margin = -infinity();
    cert.diagnostic = "rate function h is not integrable on the grid";
  } else if (global) {
    // The rate vanished identically on the grid: monotonicity of f and the
    // decaying flow keep it zero beyond the horizon, so the reading is global
    // for any source.
    double h_max = 0;
    for (double h : res.h_nodes) h_max = std::max(h_max, h);
    const bool zero_rate = h_max == 0 && res.H_nodes[J] == 0;
    if (zero_rate) {
      cert.valid = margin >= 0;
      cert.margin = margin;
      cert.horizon = infinity();
    } else if (!f.is_power_law() || !gauge.is_power) {
      // Otherwise the tail needs the closed form h = A^p ||S psi||^{(p-q)/q}
      // of the power-law source under a power gauge.
      cert.valid = false;
      cert.margin = -infinity();
      cert.diagnostic = "global reading requires a power-law source and power gauge";
    } else {
      const double p = f.exponent(), q = gauge.power_q;
      const double beta = (p - q) / q;
      const double sup_T = s_psi[J].maxCoeff();
      const double psi_l1 = lq_norm(psi, 1.0);
      const auto tail = tail_integral_bound(plan, sup_T, grid_T, beta, psi_l1);
      if (!tail) {
        cert.valid = false;
        cert.margin = -infinity();
        cert.diagnostic = "no analytic tail bound available for this domain/exponent range";
      } else {
        const double tail_H = std::pow(A, p) * *tail;
        const double mult_T = std::pow(sup_T, (q - 1.0) / q);
        const double cond_inf = 1.0 + mult_T * (res.H_nodes[J] + tail_H);
        margin = std::min(margin, A - cond_inf);
        cert.valid = margin >= 0;
        cert.margin = margin;
        cert.horizon = infinity();
        if (!cert.valid) cert.first_failure_time = first_fail;
      }
    }
  } else {
    cert.valid = margin >= 0;
    cert.margin = margin;
    cert.horizon = grid_T;
    if (!cert.valid) {
      cert.first_failure_time = first_fail;
      std::ostringstream os;
      os << "certified inequality fails from t = " << first_fail;
      cert.diagnostic = os.str();
    }
  }

  // Assemble w(t) = S(t) phi + S(t) psi * H(t).
  res.w.domain = plan.domain;
  res.w.grid = grid;
  res.w.slices.resize(total, J + 1);
  for (int j = 0; j <= J; ++j)
    res.w.slices.col(j) = (s_phi[j] + res.H_nodes[j] * s_psi[j]).max(0.0).matrix();

  // Consistency gate: the built profile must satisfy the rate inequality
  // whenever the certificate claims validity.
  if (cert.valid && rate_finite) {
    const Certificate direct =
        verify_prop31(plan, phi, f, psi, res.h_nodes, res.H_nodes, grid);
    if (!direct.valid) {
      cert.valid = false;
      cert.diagnostic = "rate inequality verification failed: " + direct.diagnostic;
    }
  }

  res.certificate = std::move(cert);
  return res;
}

Certificate verify_prop31(const SemigroupPlan& plan, const Field& phi,
                          const Nonlinearity& f, const Field& psi,
                          const std::vector<double>& h_nodes,
                          const std::vector<double>& H_nodes, const TimeGrid& grid,
                          double tol) {
  const int J = grid.intervals();
  if (static_cast<int>(h_nodes.size()) != J + 1 ||
      static_cast<int>(H_nodes.size()) != J + 1)
    throw std::invalid_argument("rate samples must match the grid");

  Certificate cert;
  cert.condition_id = ConditionId::prop31;
  double margin = infinity();
  double first_fail = std::numeric_limits<double>::quiet_NaN();
  for (int j = 0; j <= J; ++j) {
    const Array spsi = apply_semigroup(plan, psi, grid.nodes[j]).values;
    const Array sphi = apply_semigroup(plan, phi, grid.nodes[j]).values;
    const double scale = 1.0 + spsi.maxCoeff() + sphi.maxCoeff();
    for (Index i = 0; i < spsi.size(); ++i) {
      const double w = sphi[i] + spsi[i] * H_nodes[j];
      const double lhs = f(w);
      double rhs;
      if (std::isinf(h_nodes[j]))
        rhs = spsi[i] > 0 ? infinity() : 0.0;
      else
        rhs = h_nodes[j] * spsi[i];
      const double m = rhs - lhs;
      if (m < margin) margin = m;
      if (m < -tol * scale && std::isnan(first_fail)) first_fail = grid.nodes[j];
    }
  }
  cert.margin = margin;
  cert.valid = std::isnan(first_fail);
  cert.horizon = cert.valid ? grid.T() : 0.0;
  cert.first_failure_time = first_fail;
  if (!cert.valid) {
    std::ostringstream os;
    os << "rate inequality fails from t = " << first_fail << " (margin " << margin << ")";
    cert.diagnostic = os.str();
  }
  return cert;
}

CondpResult condp_functional(const SemigroupPlan& plan, const Field& phi, double p,
                             double q, const TimeGrid& grid) {
  if (!(p > 1)) throw std::invalid_argument("condp requires p > 1");
  if (!(q >= 1)) throw std::invalid_argument("condp requires q >= 1");
  if (phi.singular && q >= phi.singular->lq_upper_bound)
    throw std::invalid_argument("phi^q is not integrable for this singular profile");

  const int J = grid.intervals();
  const double Cp = cp_constant(p);
  CondpResult res;
  res.flagged_q_above_p = q > p;

  auto base_certificate = [&](ConditionId id) {
    Certificate c;
    c.condition_id = id;
    c.p = p;
    c.q = q;
    c.A = optimal_A(p);
    c.Cp = Cp;
    return c;
  };

  if (phi.values.maxCoeff() == 0) {  // zero datum: P vanishes identically
    res.P_values.assign(J + 1, 0.0);
    res.P_sup = 0;
    res.global_bound = 0;
    res.valid_horizon = grid.T();
    res.certificate = base_certificate(ConditionId::condp);
    res.certificate.valid = true;
    res.certificate.horizon = grid.T();
    res.certificate.margin = Cp;
    res.global_certificate = base_certificate(ConditionId::global_condp);
    res.global_certificate.valid = true;
    res.global_certificate.horizon = infinity();
    res.global_certificate.margin = Cp;
    return res;
  }

  const Field psi = pow(phi, q);
  const SupEvaluator sup_psi(plan, psi);
  const double beta = (p - q) / q;       // inner integrand exponent
  const double pre = (q - 1.0) / q;      // prefactor exponent

  res.P_values.assign(J + 1, 0.0);
  double integral = 0;
  for (int j = 1; j <= J; ++j) {
    const double lo = grid.nodes[j - 1], hi = grid.nodes[j];
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int gp = 0; gp < 4; ++gp) {
      const double s = mid + half * kGL4x[gp];
      integral += half * kGL4w[gp] * std::pow(sup_psi(s), beta);
    }
    res.P_values[j] = std::pow(sup_psi(grid.nodes[j]), pre) * integral;
  }
  res.P_sup = 0;
  for (double v : res.P_values) res.P_sup = std::max(res.P_sup, v);

  res.certificate = base_certificate(ConditionId::condp);
  res.certificate.valid = res.P_sup <= Cp;
  res.certificate.horizon = grid.T();
  res.certificate.margin = Cp - res.P_sup;
  res.certificate.trace.reserve(J + 1);
  for (int j = 0; j <= J; ++j)
    res.certificate.trace.push_back({grid.nodes[j], res.P_values[j]});
  if (res.flagged_q_above_p)
    res.certificate.diagnostic =
        "q > p: the inner integrand grows as the sup norm decays";

  // Largest horizon with the running values below C_p (linear crossing).
  if (res.certificate.valid) {
    res.valid_horizon = grid.T();
  } else {
    res.valid_horizon = 0;
    for (int j = 1; j <= J; ++j) {
      if (res.P_values[j] > Cp) {
        // Interpolate the crossing between evaluated nodes only: unbounded
        // data can keep P above the constant all the way down to t = 0, so a
        // violation at the first positive node certifies nothing.
        if (j > 1) {
          const double p0 = res.P_values[j - 1], p1 = res.P_values[j];
          const double t0 = grid.nodes[j - 1], t1 = grid.nodes[j];
          res.valid_horizon = p1 > p0 ? t0 + (Cp - p0) * (t1 - t0) / (p1 - p0) : t0;
        }
        res.certificate.first_failure_time = grid.nodes[j];
        break;
      }
      res.valid_horizon = grid.nodes[j];
    }
  }

  // Global reading: prefactor is nonincreasing in t, so the tail of P is
  // bounded by the horizon values plus an analytic tail of the integral.
  res.global_certificate = base_certificate(ConditionId::global_condp);
  const double sup_T = sup_psi(grid.T());
  const auto tail =
      tail_integral_bound(plan, sup_T, grid.T(), beta, lq_norm(psi, 1.0));
  if (!tail) {
    res.global_certificate.valid = false;
    res.global_certificate.margin = -infinity();
    res.global_certificate.diagnostic =
        "no analytic tail bound available for this domain/exponent range";
  } else {
    res.global_bound =
        std::max(res.P_sup, std::pow(sup_T, pre) * (integral + *tail));
    res.global_certificate.valid = res.global_bound <= Cp;
    res.global_certificate.horizon = infinity();
    res.global_certificate.margin = Cp - res.global_bound;
  }
  return res;
}

double supercritical_existence_time(double norm_phi_q, int n, double p, double q,
                                    double A) {
  if (!(p > 1)) throw std::invalid_argument("requires p > 1");
  if (!(q >= 1)) throw std::invalid_argument("requires q >= 1");
  if (!(A > 1)) throw std::invalid_argument("requires A > 1");
  if (!(norm_phi_q >= 0)) throw std::invalid_argument("norm must be nonnegative");
  const double theta = 1.0 - 0.5 * n * (p - 1.0) / q;
  if (!(theta > 0))
    throw std::invalid_argument(
        "existence-time formula is void outside the supercritical range (theta <= 0)");
  if (norm_phi_q == 0) return infinity();
  const double rhs = (A - 1.0) / (std::pow(A, p) * std::pow(norm_phi_q, p - 1.0));
  return std::pow(rhs, 1.0 / theta);
}

Certificate subcritical_sufficient(const SemigroupPlan& plan, const Field& phi, double p,
                                   double q, const TimeGrid& grid) {
  if (!(p > 1)) throw std::invalid_argument("requires p > 1");
  if (!(q > 1)) throw std::invalid_argument("the sufficient condition requires q > 1");

  const Field psi = pow(phi, q);
  const SupEvaluator sup_psi(plan, psi);
  const double bound = std::pow(cp_constant(p), 1.0 / (p - 1.0));

  Certificate cert;
  cert.condition_id = ConditionId::subcritical_suff;
  cert.p = p;
  cert.q = q;
  cert.Cp = cp_constant(p);
  double worst = 0;
  for (int j = 0; j <= grid.intervals(); ++j) {
    const double t = grid.nodes[j];
    const double m =
        t == 0 ? 0.0
               : std::pow(t, 1.0 / (p - 1.0)) * std::pow(sup_psi(t), 1.0 / q);
    cert.trace.push_back({t, m});
    if (m > worst) worst = m;
    if (m > bound && std::isnan(cert.first_failure_time)) cert.first_failure_time = t;
  }
  cert.valid = worst <= bound;
  cert.margin = bound - worst;
  cert.horizon = cert.valid ? grid.T() : 0.0;
  if (!cert.valid) cert.diagnostic = "pointwise-decay condition exceeded";
  return cert;
}

NecessaryMonitor necessary_condition_monitor(const SemigroupPlan& plan, const Field& phi,
                                             double p, const Array& time_grid) {
  if (!(p > 1)) throw std::invalid_argument("requires p > 1");
  NecessaryMonitor mon;
  mon.bound = std::pow(1.0 / (p - 1.0), 1.0 / (p - 1.0));

  const SupEvaluator sup_phi(plan, phi);
  double worst = 0;
  for (Index i = 0; i < time_grid.size(); ++i) {
    const double t = time_grid[i];
    if (!(t >= 0)) throw std::invalid_argument("time grid must be nonnegative");
    const double nu = t == 0 ? 0.0 : std::pow(t, 1.0 / (p - 1.0)) * sup_phi(t);
    mon.trace.emplace_back(t, nu);
    worst = std::max(worst, nu);
    if (!mon.first_violation && nu > mon.bound * (1.0 + 1e-12))
      mon.first_violation = t;
  }

  mon.certificate.condition_id = ConditionId::necessary_cond;
  mon.certificate.p = p;
  mon.certificate.valid = !mon.first_violation.has_value();
  mon.certificate.margin = mon.bound - worst;
  mon.certificate.horizon =
      mon.certificate.valid ? time_grid[time_grid.size() - 1] : 0.0;
  if (mon.first_violation) {
    mon.certificate.first_failure_time = *mon.first_violation;
    mon.certificate.diagnostic =
        "necessary bound exceeded: no nonnegative integral solution exists on "
        "horizons containing this time";
  }
  for (const auto& [t, nu] : mon.trace) mon.certificate.trace.push_back({t, nu});
  return mon;
}

UffProbe uff_probe(const SemigroupPlan& plan, const Field& phi, double p, double q,
                   const Array& time_grid) {
  if (!(p > 1)) throw std::invalid_argument("requires p > 1");
  if (!(q >= 1)) throw std::invalid_argument("requires q >= 1");
  const double n = plan.domain.dimension;
  const double alpha = 1.0 / (p - 1.0) - n / (2.0 * p * q);
  if (!(alpha > 0))
    throw std::invalid_argument("uff probe is outside its intended range (alpha <= 0)");

  UffProbe probe;
  probe.alpha = alpha;
  const Field psi = pow(phi, q);
  for (Index i = 0; i < time_grid.size(); ++i) {
    const double t = time_grid[i];
    if (!(t > 0)) throw std::invalid_argument("uff probe needs strictly positive times");
    const Field spsi = apply_semigroup(plan, psi, t);
    const Field sphi = apply_semigroup(plan, phi, t);
    const double ta = std::pow(t, alpha);
    const double main = ta * std::pow(lq_norm(spsi, p), 1.0 / q);
    const double companion = ta * lq_norm(sphi, p * q);
    probe.trace.push_back({t, main, companion});
  }

  // Trend toward t = 0: compare the smallest-time value with the value one
  // order of magnitude later.
  const double t_min = probe.trace.front()[0];
  double ref = probe.trace.back()[1];
  for (const auto& row : probe.trace) {
    if (row[0] >= 8.0 * t_min) {
      ref = row[1];
      break;
    }
  }
  const double v0 = probe.trace.front()[1];
  probe.flag = (ref > 0 && v0 <= 0.7 * ref) ? TrendFlag::decreasing_to_zero
                                            : TrendFlag::stagnating;
  return probe;
}

}  // namespace supersol
