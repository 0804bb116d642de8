#include "supersol/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <optional>

#include "supersol/certificates.hpp"
#include "supersol/csv.hpp"
#include "supersol/oracle.hpp"

namespace supersol {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kDomainKeys = {
    "domain.kind",    "domain.dimension",     "domain.side_lengths",
    "domain.grid_points", "domain.modes",     "domain.tail_tolerance"};
const std::vector<std::string> kProfileKeys = {
    "profile.kind",  "profile.amplitude", "profile.mode_indices",
    "profile.center", "profile.width",    "profile.exponent",
    "profile.values_file"};
const std::vector<std::string> kTimeKeys = {"time.T", "time.J", "time.gamma"};
const std::vector<std::string> kNonlinearityKeys = {"nonlinearity.kind", "nonlinearity.p",
                                                    "nonlinearity.table"};
const std::vector<std::string> kCertificateKeys = {"certificate.q", "certificate.A"};
const std::vector<std::string> kSolveKeys = {"solve.tol",          "solve.max_iter",
                                             "solve.tol_mono",     "solve.overflow_cap",
                                             "solve.chain_k",      "solve.sandwich_tol"};
const std::vector<std::string> kOracleKeys = {"oracle.dt", "oracle.threshold"};

std::vector<std::string> concat(std::initializer_list<std::vector<std::string>> lists) {
  std::vector<std::string> out{"output.dir"};
  for (const auto& l : lists) out.insert(out.end(), l.begin(), l.end());
  return out;
}

const std::vector<std::string> kSummaryHeader = {"item", "p", "q", "A",
                                                 "T",    "valid", "value"};

std::vector<std::string> summary_row(const std::string& item, double p, double q,
                                     double A, double T, bool valid, double value) {
  return {item, sci(p), sci(q), sci(A), sci(T), valid ? "1" : "0", sci(value)};
}

void write_certificate_row(CsvWriter& w, const Certificate& c) {
  w.row({to_string(c.condition_id), sci(c.p), sci(c.q), sci(c.A), sci(c.horizon),
         c.valid ? "1" : "0", sci(c.margin)});
}

void write_certificate_summary(CsvWriter& w, const Certificate& c) {
  w.row(summary_row(to_string(c.condition_id), c.p, c.q, c.A, c.horizon, c.valid,
                    c.margin));
}

struct Setup {
  Domain domain;
  Field phi;
  SemigroupPlan plan;
};

Setup build_setup(const Config& cfg) {
  Setup s{domain_from_config(cfg), Field{}, SemigroupPlan{}};
  try {
    s.phi = make_field(s.domain, profile_from_config(cfg, s.domain));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid profile: ") + e.what());
  }
  s.plan = make_plan(s.domain);
  return s;
}

void write_field_csv(const fs::path& path, const Field& f) {
  std::vector<std::string> header{"node"};
  for (int a = 0; a < f.domain.dimension; ++a) header.push_back("x" + std::to_string(a));
  header.push_back("value");
  CsvWriter w(path, header);
  for (Index i = 0; i < f.values.size(); ++i) {
    std::vector<std::string> cells{std::to_string(i)};
    for (double c : f.domain.node_coordinates(i)) cells.push_back(sci(c));
    cells.push_back(sci(f.values[i]));
    w.row(cells);
  }
}

void write_spacetime_csv(const fs::path& path, const SpaceTimeField& w) {
  CsvWriter out(path, {"t", "node", "value"});
  for (int j = 0; j <= w.grid.intervals(); ++j)
    for (Index i = 0; i < w.slices.rows(); ++i)
      out.row({sci(w.grid.nodes[j]), std::to_string(i), sci(w.slices(i, j))});
}

void write_oracle_trace(const fs::path& path, const OracleRun& run) {
  CsvWriter out(path, {"t", "sup_norm", "dt_used"});
  for (const auto& row : run.sup_trace)
    out.row({sci(row[0]), sci(row[1]), sci(row[2])});
  // Outcome summary line.
  out.row({"outcome", to_string(run.outcome),
           sci(run.outcome == OracleOutcome::blow_up ? run.t_star_estimate()
                                                     : run.completed_T)});
}

/// Time grid for certificate evaluation: log prefix near t = 0 catches the
/// boundary-layer maxima of the prefactor.
TimeGrid certify_grid(const Config& cfg) {
  const double T = cfg.get_double("time.T");
  const int J = cfg.get_int("time.J", 256);
  try {
    return TimeGrid::log_prefixed(T, J);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid time grid: ") + e.what());
  }
}

struct CertifySweep {
  std::vector<Certificate> rows;
  double condp_local_horizon = 0;
  double condp_local_margin = 0;
  bool any_local_valid = false;
  std::optional<double> blowup_estimate;
};

/// All applicable certificates for one (phi, p, q) setup.
CertifySweep certify_all(const SemigroupPlan& plan, const Field& phi, double p, double q,
                         double A, const TimeGrid& grid, int prop32_intervals) {
  CertifySweep sweep;
  const double Cp = cp_constant(p);
  const Nonlinearity f = Nonlinearity::power_law(p);

  CondpResult condp = condp_functional(plan, phi, p, q, grid);
  Certificate condp_local = condp.certificate;
  condp_local.valid = condp.valid_horizon > 0;
  condp_local.horizon = condp.valid_horizon;
  double prefix_max = 0;
  for (int j = 0; j < static_cast<int>(condp.P_values.size()); ++j)
    if (grid.nodes[j] <= condp.valid_horizon)
      prefix_max = std::max(prefix_max, condp.P_values[j]);
  condp_local.margin = condp_local.valid ? Cp - prefix_max : condp.certificate.margin;
  sweep.rows.push_back(condp_local);
  sweep.rows.push_back(condp.global_certificate);
  sweep.condp_local_horizon = condp.valid_horizon;
  sweep.condp_local_margin = condp_local.margin;

  Prop32Options popt;
  popt.intervals = prop32_intervals;
  popt.grid_T = grid.T();
  const RegularityGauge gauge = RegularityGauge::power_gauge(phi, q);
  sweep.rows.push_back(
      build_prop32_supersolution(plan, phi, f, gauge, A, grid.T(), popt).certificate);
  sweep.rows.push_back(build_prop32_supersolution(
                           plan, phi, f, gauge, A,
                           std::numeric_limits<double>::infinity(), popt)
                           .certificate);

  if (q > 1) sweep.rows.push_back(subcritical_sufficient(plan, phi, p, q, grid));

  const CriticalExponent crit = critical_exponent(plan.domain.dimension, p);
  if (crit.classify(q) == Regime::supercritical) {
    Certificate sc;
    sc.condition_id = ConditionId::supercritical_smth;
    sc.p = p;
    sc.q = q;
    sc.A = A;
    sc.Cp = Cp;
    const double norm = lq_norm(phi, q);
    if (std::isfinite(norm)) {
      sc.horizon = supercritical_existence_time(norm, plan.domain.dimension, p, q, A);
      sc.valid = true;
      sc.margin = 0;  // the formula sits on the equality case
      sc.trace.push_back({0.0, norm});
    } else {
      sc.diagnostic = "||phi||_q is not finite";
    }
    sweep.rows.push_back(sc);
  }

  sweep.rows.push_back(necessary_condition_monitor(plan, phi, p, grid.nodes).certificate);

  for (const Certificate& c : sweep.rows) {
    const bool local = c.condition_id != ConditionId::global_condp &&
                       c.condition_id != ConditionId::necessary_cond;
    if (local && c.valid && c.horizon > 0) sweep.any_local_valid = true;
  }
  return sweep;
}

}  // namespace

int cmd_semigroup_probe(const Config& cfg, const fs::path& out_dir) {
  cfg.enforce_schema(
      concat({kDomainKeys, kProfileKeys,
              {"probe.times", "probe.q", "probe.r", "probe.jensen_r", "probe.jensen_t"}}),
      {"domain.kind", "domain.side_lengths", "profile.kind"});
  const Setup s = build_setup(cfg);
  fs::create_directories(out_dir);

  const std::vector<double> times_list =
      cfg.get_double_list("probe.times", {0.0, 0.1, 0.5, 1.0, 2.0});
  Array times(static_cast<Index>(times_list.size()));
  for (std::size_t i = 0; i < times_list.size(); ++i)
    times[static_cast<Index>(i)] = times_list[i];

  write_field_csv(out_dir / "field.csv", s.phi);

  const auto trace = sup_norm_trace(s.plan, s.phi, times);
  {
    CsvWriter w(out_dir / "sup_trace.csv", {"t", "value"});
    for (const auto& [t, v] : trace) w.row({sci(t), sci(v)});
  }

  const double q = cfg.get_double("probe.q", 1.0);
  const double r = cfg.get_double("probe.r", std::numeric_limits<double>::infinity());
  const SmoothingProbe probe = smoothing_probe(s.plan, s.phi, q, r, times);
  {
    CsvWriter w(out_dir / "smoothing.csv", {"t", "ratio"});
    for (const auto& [t, v] : probe.ratios) w.row({sci(t), sci(v)});
    w.row({"max", sci(probe.max_ratio)});  // summary row
  }

  const std::vector<double> jensen_r = cfg.get_double_list("probe.jensen_r", {1.5, 2.0, 3.0});
  const std::vector<double> jensen_t = cfg.get_double_list("probe.jensen_t", {0.01, 0.1, 1.0});
  double worst_gap = std::numeric_limits<double>::infinity();
  bool jensen_ok = true;
  {
    CsvWriter w(out_dir / "jensen.csv", {"r", "t", "min_gap", "holds"});
    for (double rr : jensen_r) {
      for (double tt : jensen_t) {
        const JensenResult res = jensen_check(s.plan, s.phi, rr, tt);
        w.row({sci(rr), sci(tt), sci(res.min_gap), res.holds ? "1" : "0"});
        worst_gap = std::min(worst_gap, res.min_gap);
        jensen_ok = jensen_ok && res.holds;
      }
    }
    w.row({"worst", "", sci(worst_gap), jensen_ok ? "1" : "0"});  // summary row
  }

  CsvWriter summary(out_dir / "summary.csv", kSummaryHeader);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  summary.row(summary_row("sup_trace_final", nan, nan, nan, times[times.size() - 1], true,
                          trace.back().second));
  summary.row(summary_row("smoothing_max_ratio", nan, q, r, times[times.size() - 1],
                          probe.max_ratio <= 1.0 + 1e-9, probe.max_ratio));
  summary.row(
      summary_row("jensen_min_gap", nan, nan, nan, nan, jensen_ok, worst_gap));
  return kExitOk;
}

int cmd_certify(const Config& cfg, const fs::path& out_dir) {
  cfg.enforce_schema(
      concat({kDomainKeys, kProfileKeys, kTimeKeys, kNonlinearityKeys, kCertificateKeys}),
      {"domain.kind", "domain.side_lengths", "profile.kind", "nonlinearity.p", "time.T"});
  const Setup s = build_setup(cfg);
  const Nonlinearity f = nonlinearity_from_config(cfg);
  if (!f.is_power_law()) throw ConfigError("certify requires a power-law nonlinearity");
  const double p = f.exponent();
  const double q = cfg.get_double("certificate.q", 1.0);
  const double A = cfg.get_double("certificate.A", optimal_A(p));
  const TimeGrid grid = certify_grid(cfg);
  fs::create_directories(out_dir);

  const CertifySweep sweep =
      certify_all(s.plan, s.phi, p, q, A, grid, cfg.get_int("time.J", 256) / 4);

  {
    CsvWriter w(out_dir / "certificates.csv",
                {"condition_id", "p", "q", "A", "T", "valid", "margin"});
    for (const Certificate& c : sweep.rows) write_certificate_row(w, c);
  }
  for (const Certificate& c : sweep.rows) {
    if (c.trace.empty()) continue;
    CsvWriter w(out_dir / (to_string(c.condition_id) + "_trace.csv"), {"t", "value"});
    for (const auto& row : c.trace) w.row({sci(row[0]), sci(row[1])});
  }

  CsvWriter summary(out_dir / "summary.csv", kSummaryHeader);
  for (const Certificate& c : sweep.rows) write_certificate_summary(summary, c);
  const CriticalExponent crit = critical_exponent(s.domain.dimension, p);
  summary.row(summary_row("regime_" + to_string(crit.classify(q)), p, q,
                          std::numeric_limits<double>::quiet_NaN(), crit.q_c, true,
                          crit.q_c));
  return sweep.any_local_valid ? kExitOk : kExitInvalidCertificate;
}

namespace {

struct IterateOutcome {
  int exit_code = kExitOk;
  std::optional<MonotoneSolveResult> solve;
  std::optional<SpaceTimeField> w0;
  std::optional<SubsolutionChain> chain;
  Certificate build_certificate;
  bool certified = false;
};

IterateOutcome run_iterate(const Config& cfg, const Setup& s, const Nonlinearity& f,
                           bool force) {
  IterateOutcome out;
  const TimeGrid grid = time_grid_from_config(cfg);
  const double q = cfg.get_double("certificate.q", 1.0);
  const double A = cfg.get_double(
      "certificate.A", f.is_power_law() ? optimal_A(f.exponent()) : 2.0);

  Prop32Options popt;
  popt.intervals = grid.intervals();
  popt.gamma = grid.gamma;
  const RegularityGauge gauge = RegularityGauge::power_gauge(s.phi, q);
  Prop32Result build =
      build_prop32_supersolution(s.plan, s.phi, f, gauge, A, grid.T(), popt);
  out.build_certificate = build.certificate;
  out.certified = build.certificate.valid;

  if (!out.certified && !force) {
    out.exit_code = kExitInvalidCertificate;
    return out;
  }

  MonotoneSolveOptions mopt;
  mopt.tol = cfg.get_double("solve.tol", 1e-6);
  mopt.max_iter = cfg.get_int("solve.max_iter", 30);
  mopt.tol_mono = cfg.get_double("solve.tol_mono", 1e-10);
  mopt.overflow_cap = cfg.get_double("solve.overflow_cap", 1e12);
  mopt.force = !out.certified;

  // Certified runs start from the built supersolution; uncertified
  // exploration starts from A * S(t) phi.
  out.w0 = out.certified ? build.w : scaled(semigroup_trajectory(s.plan, s.phi, grid), A);
  out.solve = monotone_solve(s.plan, s.phi, f, *out.w0, mopt);

  const int k_max = cfg.get_int("solve.chain_k", 1);
  out.chain = check_subsolution_chain(s.plan, s.phi, f, k_max, grid,
                                      mopt.overflow_cap);

  switch (out.solve->status) {
    case SolveStatus::converged: out.exit_code = kExitOk; break;
    case SolveStatus::not_a_supersolution: out.exit_code = kExitInvalidCertificate; break;
    default: out.exit_code = kExitNumericalFailure; break;
  }
  return out;
}

}  // namespace

int cmd_iterate(const Config& cfg, const fs::path& out_dir, bool force) {
  cfg.enforce_schema(
      concat({kDomainKeys, kProfileKeys, kTimeKeys, kNonlinearityKeys, kCertificateKeys,
              kSolveKeys}),
      {"domain.kind", "domain.side_lengths", "profile.kind", "nonlinearity.kind",
       "time.T"});
  const Setup s = build_setup(cfg);
  const Nonlinearity f = nonlinearity_from_config(cfg);
  fs::create_directories(out_dir);

  const IterateOutcome out = run_iterate(cfg, s, f, force);

  CsvWriter summary(out_dir / "summary.csv", kSummaryHeader);
  write_certificate_summary(summary, out.build_certificate);
  if (!out.solve) {
    summary.row(summary_row("monotone_solve", std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::quiet_NaN(), 0.0, false, 0.0));
    return out.exit_code;
  }

  write_spacetime_csv(out_dir / "solution.csv", out.solve->solution);
  write_spacetime_csv(out_dir / "supersolution.csv", *out.w0);
  {
    CsvWriter w(out_dir / "residuals.csv",
                {"iteration", "residual", "worst_monotonicity_gap"});
    const auto& rep = out.solve->report;
    for (std::size_t k = 0; k < rep.residual_history.size(); ++k)
      w.row({std::to_string(k + 1), sci(rep.residual_history[k]),
             sci(rep.monotonicity_violations[k])});
  }
  double worst_lower = std::numeric_limits<double>::infinity();
  double worst_upper = std::numeric_limits<double>::infinity();
  if (out.chain && !out.chain->members.empty()) {
    const SpaceTimeField& lower = out.chain->members.back();
    CsvWriter w(out_dir / "sandwich.csv",
                {"t", "min_solution_minus_subsolution", "min_supersolution_minus_solution"});
    for (int j = 0; j <= lower.grid.intervals(); ++j) {
      const double lo =
          (out.solve->solution.slices.col(j) - lower.slices.col(j)).array().minCoeff();
      const double hi =
          (out.w0->slices.col(j) - out.solve->solution.slices.col(j)).array().minCoeff();
      worst_lower = std::min(worst_lower, lo);
      worst_upper = std::min(worst_upper, hi);
      w.row({sci(lower.grid.nodes[j]), sci(lo), sci(hi)});
    }
  }

  const auto& rep = out.solve->report;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  summary.row(summary_row("monotone_solve", nan, nan, nan,
                          out.solve->solution.grid.T(), rep.converged,
                          rep.residual_history.empty() ? 0.0
                                                       : rep.residual_history.back()));
  summary.row(summary_row("sandwich_lower", nan, nan, nan, nan,
                          worst_lower >= -1e-6, worst_lower));
  summary.row(summary_row("sandwich_upper", nan, nan, nan, nan,
                          worst_upper >= -1e-6, worst_upper));
  if (!rep.diagnostic.empty()) std::cerr << rep.diagnostic << "\n";
  return out.exit_code;
}

int cmd_compare(const Config& cfg, const fs::path& out_dir, bool force) {
  cfg.enforce_schema(
      concat({kDomainKeys, kProfileKeys, kTimeKeys, kNonlinearityKeys, kCertificateKeys,
              kSolveKeys, kOracleKeys}),
      {"domain.kind", "domain.side_lengths", "profile.kind", "nonlinearity.kind",
       "time.T"});
  const Setup s = build_setup(cfg);
  const Nonlinearity f = nonlinearity_from_config(cfg);
  fs::create_directories(out_dir);

  const IterateOutcome out = run_iterate(cfg, s, f, force);
  CsvWriter summary(out_dir / "summary.csv", kSummaryHeader);
  write_certificate_summary(summary, out.build_certificate);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (!out.solve || out.solve->status != SolveStatus::converged) {
    summary.row(summary_row("monotone_solve", nan, nan, nan, 0.0, false, 0.0));
    return out.exit_code == kExitOk ? kExitNumericalFailure : out.exit_code;
  }
  const SpaceTimeField& u_d = out.solve->solution;

  OracleOptions oopt;
  oopt.dt = cfg.get_double("oracle.dt", 1e-3);
  oopt.blowup_threshold = cfg.get_double("oracle.threshold", 1e8);
  for (int j = 1; j <= u_d.grid.intervals(); ++j)
    oopt.sample_times.push_back(u_d.grid.nodes[j]);
  const OracleRun run = solve_reference(s.plan, s.phi, f, u_d.grid.T(), oopt);
  write_oracle_trace(out_dir / "oracle_trace.csv", run);

  if (run.outcome != OracleOutcome::completed) {
    summary.row(summary_row("oracle", nan, nan, nan, run.completed_T, false,
                            run.outcome == OracleOutcome::blow_up ? run.t_star_estimate()
                                                                  : 0.0));
    return kExitNumericalFailure;
  }

  double max_gap = 0;
  {
    CsvWriter w(out_dir / "compare.csv",
                {"t", "max_abs_gap", "sup_monotone", "sup_oracle"});
    for (int j = 0; j <= u_d.grid.intervals(); ++j) {
      const double t = u_d.grid.nodes[j];
      const Array uo = run.trajectory.at_time(t);
      const double gap = (u_d.slices.col(j).array() - uo).abs().maxCoeff();
      max_gap = std::max(max_gap, gap);
      w.row({sci(t), sci(gap), sci(u_d.slices.col(j).array().maxCoeff()),
             sci(uo.maxCoeff())});
    }
  }

  const double sandwich_tol = cfg.get_double("solve.sandwich_tol", 1e-5);
  const SpaceTimeField& lower = out.chain->members.back();
  const SandwichReport rep = sandwich_validate(run, lower, *out.w0, sandwich_tol);
  {
    CsvWriter w(out_dir / "sandwich.csv", {"side", "worst_gap", "at_time"});
    w.row({"lower", sci(rep.worst_lower_gap), sci(rep.worst_lower_time)});
    w.row({"upper", sci(rep.worst_upper_gap), sci(rep.worst_upper_time)});
  }

  summary.row(summary_row("oracle", nan, nan, nan, run.completed_T, true, max_gap));
  summary.row(summary_row("sandwich_lower", nan, nan, nan, rep.worst_lower_time,
                          rep.worst_lower_gap >= -sandwich_tol, rep.worst_lower_gap));
  summary.row(summary_row("sandwich_upper", nan, nan, nan, rep.worst_upper_time,
                          rep.worst_upper_gap >= -sandwich_tol, rep.worst_upper_gap));
  return rep.ok ? kExitOk : kExitNumericalFailure;
}

int cmd_scan(const Config& cfg, const fs::path& out_dir) {
  cfg.enforce_schema(
      concat({kDomainKeys, kProfileKeys, kTimeKeys, kNonlinearityKeys, kCertificateKeys,
              kOracleKeys,
              {"scan.amplitudes", "scan.p_values", "scan.q_values", "scan.oracle",
               "scan.oracle_T"}}),
      {"domain.kind", "domain.side_lengths", "profile.kind", "nonlinearity.p", "time.T"});
  const Domain domain = domain_from_config(cfg);
  const SemigroupPlan plan = make_plan(domain);
  const ProfileSpec base_profile = profile_from_config(cfg, domain);
  const double p_default = cfg.get_double("nonlinearity.p");
  const std::vector<double> amplitudes = cfg.get_double_list("scan.amplitudes", {});
  const std::vector<double> p_values = cfg.get_double_list("scan.p_values", {p_default});
  const std::vector<double> q_values =
      cfg.get_double_list("scan.q_values", {cfg.get_double("certificate.q", 1.0)});
  const bool with_oracle = cfg.get_bool("scan.oracle", false);
  const TimeGrid grid = certify_grid(cfg);
  fs::create_directories(out_dir);

  CsvWriter phase(out_dir / "phase.csv",
                  {"amplitude", "p", "q", "best_certificate", "horizon", "blowup_time"});

  struct Point {
    double amplitude;
    bool global_valid;
  };
  std::map<std::pair<double, double>, std::vector<Point>> by_pq;

  for (double p : p_values) {
    for (double q : q_values) {
      const double A = cfg.get_double("certificate.A", optimal_A(p));
      for (double amp : amplitudes) {
        const Field phi = make_field(domain, profile_with_amplitude(base_profile, amp));
        const CertifySweep sweep =
            certify_all(plan, phi, p, q, A, grid, cfg.get_int("time.J", 256) / 4);

        std::string best = "none";
        double horizon = 0;
        bool global_valid = false;
        for (const Certificate& c : sweep.rows) {
          if (!c.valid || c.condition_id == ConditionId::necessary_cond) continue;
          if (c.horizon > horizon ||
              (std::isinf(c.horizon) && !std::isinf(horizon))) {
            horizon = c.horizon;
            best = to_string(c.condition_id);
          }
          if (std::isinf(c.horizon)) global_valid = true;
        }
        by_pq[{p, q}].push_back({amp, global_valid});

        std::string blowup = "";
        if (with_oracle) {
          const double oracle_T = cfg.get_double("scan.oracle_T", grid.T());
          OracleOptions oopt;
          oopt.dt = cfg.get_double("oracle.dt", 1e-3);
          oopt.blowup_threshold = cfg.get_double("oracle.threshold", 1e8);
          const OracleRun run =
              solve_reference(plan, phi, Nonlinearity::power_law(p), oracle_T, oopt);
          blowup = run.outcome == OracleOutcome::blow_up ? sci(run.t_star_estimate()) : "";
        }
        phase.row({sci(amp), sci(p), sci(q), best, sci(horizon), blowup});
      }
    }
  }

  // Validity regions must be monotone in amplitude: once the global
  // certificate is lost it may not reappear for larger data.
  bool monotone = true;
  for (auto& [pq, points] : by_pq) {
    std::sort(points.begin(), points.end(),
              [](const Point& a, const Point& b) { return a.amplitude < b.amplitude; });
    bool lost = false;
    for (const Point& pt : points) {
      if (!pt.global_valid) lost = true;
      if (lost && pt.global_valid) monotone = false;
    }
  }

  CsvWriter summary(out_dir / "summary.csv", kSummaryHeader);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  summary.row(summary_row("scan_points", nan, nan, nan, nan, true,
                          static_cast<double>(amplitudes.size() * p_values.size() *
                                              q_values.size())));
  summary.row(summary_row("amplitude_boundary_monotone", nan, nan, nan, nan, monotone,
                          monotone ? 1.0 : 0.0));
  return monotone ? kExitOk : kExitNumericalFailure;
}

int run_command(const std::string& command, const fs::path& config_path,
                const fs::path& out_dir, bool force) {
  try {
    const Config cfg = Config::from_file(config_path);
    const fs::path out =
        out_dir.empty() ? fs::path(cfg.get_string("output.dir", "out")) : out_dir;
    if (command == "semigroup-probe") return cmd_semigroup_probe(cfg, out);
    if (command == "certify") return cmd_certify(cfg, out);
    if (command == "iterate") return cmd_iterate(cfg, out, force);
    if (command == "compare") return cmd_compare(cfg, out, force);
    if (command == "scan") return cmd_scan(cfg, out);
    std::cerr << "unknown command: " << command << "\n";
    return kExitConfigError;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
}

}  // namespace supersol
