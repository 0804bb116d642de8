#pragma once

#include <functional>
#include <optional>

#include "supersol/duhamel.hpp"

namespace supersol {

/// Sharp constant C_p = (p-1)^{p-1} / p^p of the certificate functional.
double cp_constant(double p);

/// Argmax of (A-1) A^{-p} over A > 1, namely p/(p-1); the maximum value is
/// exactly cp_constant(p).
double optimal_A(double p);

enum class Regime { supercritical, critical, subcritical };

std::string to_string(Regime r);

struct CriticalExponent {
  int dimension = 1;
  double p = 2;
  double q_c = 0;  // n (p-1) / 2

  Regime classify(double q, double rel_tol = 1e-12) const;
  /// The critical classification carries the side condition q_c > 1.
  bool critical_condition_met(double q, double rel_tol = 1e-12) const;
};

CriticalExponent critical_exponent(int n, double p);

/// Regularity gauge: a monotone map g and companion datum psi with
/// S(t) phi <= g(S(t) psi). The default power gauge psi = phi^q, g(s) = s^{1/q}
/// realises exactly the semigroup convexity inequality.
struct RegularityGauge {
  Field psi;
  std::function<double(double)> g;
  bool is_power = false;
  double power_q = 1;  // g(s) = s^{1/power_q} when is_power

  static RegularityGauge power_gauge(const Field& phi, double q);
};

struct Prop32Options {
  int intervals = 64;
  double gamma = 2;
  double grid_T = 30;               // horizon of the evaluation grid when T = inf
  double admissibility_tol = 1e-8;  // slack for the gauge inequality samples
  double denominator_floor = 1e-300;
};

struct Prop32Result {
  SpaceTimeField w;       // S(t) phi + S(t) psi * H(t)
  Certificate certificate;
  std::vector<double> h_nodes;  // rate function at the grid nodes
  std::vector<double> H_nodes;  // running integral of the rate
};

/// Builds the gauge supersolution w(t) = S(t) phi + S(t) psi H(t) with
/// H(t) = \int_0^t h, h(t) = || f(A g(S(t) psi)) / S(t) psi ||_inf, and
/// certifies 1 + || S(t) psi / g(S(t) psi) ||_inf H(t) <= A through T.
/// Pass T = infinity for the global reading (Dirichlet spectral gap or
/// whole-space algebraic decay closes the tail analytically); the resulting
/// certificate then carries the integrable-rate condition id.
Prop32Result build_prop32_supersolution(const SemigroupPlan& plan, const Field& phi,
                                        const Nonlinearity& f, const RegularityGauge& gauge,
                                        double A, double T,
                                        const Prop32Options& options = {});

/// Direct nodewise verification of the rate inequality
/// f(S(t) phi + S(t) psi H(t)) <= h(t) S(t) psi behind the general
/// supersolution construction.
Certificate verify_prop31(const SemigroupPlan& plan, const Field& phi,
                          const Nonlinearity& f, const Field& psi,
                          const std::vector<double>& h_nodes,
                          const std::vector<double>& H_nodes, const TimeGrid& grid,
                          double tol = 1e-9);

struct CondpResult {
  std::vector<double> P_values;  // P at each grid node
  double P_sup = 0;
  double global_bound = std::numeric_limits<double>::infinity();
  Certificate certificate;         // finite-horizon reading
  Certificate global_certificate;  // T = infinity reading
  bool flagged_q_above_p = false;
  double valid_horizon = 0;  // largest t (interpolated) with running sup <= C_p
};

/// Evaluates P(phi, t) = ||S(t) phi^q||_inf^{(q-1)/q}
///   * \int_0^t ||S(s) phi^q||_inf^{(p-q)/q} ds over the grid.
/// Valid certificates require P_sup <= cp_constant(p). The global reading
/// augments the grid value with an analytic tail bound where the domain
/// provides one.
CondpResult condp_functional(const SemigroupPlan& plan, const Field& phi, double p,
                             double q, const TimeGrid& grid);

/// Largest T with 1 + A^p ||phi||_q^{p-1} T^theta <= A, theta = 1 - n(p-1)/(2q);
/// requires the supercritical range theta > 0.
double supercritical_existence_time(double norm_phi_q, int n, double p, double q,
                                    double A);

/// Sufficient condition for q > 1: max_t t^{1/(p-1)} ||S(t) phi^q||_inf^{1/q}
/// <= cp_constant(p)^{1/(p-1)}.
Certificate subcritical_sufficient(const SemigroupPlan& plan, const Field& phi, double p,
                                   double q, const TimeGrid& grid);

struct NecessaryMonitor {
  std::vector<std::pair<double, double>> trace;  // (t, nu(t))
  double bound = 0;                              // (1/(p-1))^{1/(p-1)}
  std::optional<double> first_violation;
  Certificate certificate;
};

/// nu(t) = t^{1/(p-1)} ||S(t) phi||_inf against the necessary bound; a
/// violation certifies nonexistence of any nonnegative integral solution on
/// horizons containing that time.
NecessaryMonitor necessary_condition_monitor(const SemigroupPlan& plan, const Field& phi,
                                             double p, const Array& time_grid);

enum class TrendFlag { decreasing_to_zero, stagnating };

struct UffProbe {
  double alpha = 0;
  // rows: (t, t^alpha ||S(t) phi^q||_p^{1/q}, t^alpha ||S(t) phi||_{pq})
  std::vector<std::array<double, 3>> trace;
  TrendFlag flag = TrendFlag::stagnating;
};

/// Compares the decay of t^alpha ||S(t) phi^q||_p^{1/q} (and the companion
/// t^alpha ||S(t) phi||_{pq}) toward t = 0, alpha = 1/(p-1) - n/(2pq) > 0.
UffProbe uff_probe(const SemigroupPlan& plan, const Field& phi, double p, double q,
                   const Array& time_grid);

}  // namespace supersol
