#pragma once

#include "supersol/certificate.hpp"
#include "supersol/nonlinearity.hpp"
#include "supersol/spacetime.hpp"

namespace supersol {

struct ApplyFResult {
  SpaceTimeField field;
  bool overflowed = false;       // nonlinearity exceeded the cap: pre-blow-up flag
  double max_nonlinearity = 0;
};

/// The integral operator F[v](t) = S(t) phi + \int_0^t S(t-s) f(v(s)) ds,
/// discretised on v's graded grid by composite midpoint in s with v linearly
/// interpolated at interval midpoints. Slice 0 of the output is phi exactly.
ApplyFResult apply_F(const SemigroupPlan& plan, const Field& phi, const Nonlinearity& f,
                     const SpaceTimeField& v, double overflow_cap = 1e12);

/// Verifies F[w] <= w + tol at every node and time; the certificate records
/// validity, the minimum margin min(w - F[w]) and the first failing time.
Certificate check_supersolution(const SemigroupPlan& plan, const Field& phi,
                                const Nonlinearity& f, const SpaceTimeField& w,
                                double tol);

struct IterationReport {
  std::vector<double> residual_history;         // sup |F[w_k] - w_k| per step
  std::vector<double> monotonicity_violations;  // worst positive gap of w_{k+1} - w_k
  bool converged = false;
  int iterations_used = 0;
  bool overflowed = false;
  std::string diagnostic;
};

enum class SolveStatus {
  converged,
  max_iterations,
  monotonicity_abort,
  overflow,
  not_a_supersolution
};

struct MonotoneSolveOptions {
  double tol = 1e-6;              // sup-norm residual target
  int max_iter = 30;
  double tol_mono = 1e-10;        // allowed upward excursion per iteration
  double overflow_cap = 1e12;
  bool force = false;             // skip the supersolution precheck
  double supersolution_tol = 1e-6;
};

struct MonotoneSolveResult {
  SpaceTimeField solution;
  IterationReport report;
  SolveStatus status = SolveStatus::max_iterations;
};

/// Iterates w_{k+1} = F[w_k] from a supersolution w0 until the residual drops
/// below tol. Each step must keep the sequence nonincreasing up to tol_mono;
/// a larger upward excursion aborts (quadrature too coarse, or w0 not a
/// genuine supersolution).
MonotoneSolveResult monotone_solve(const SemigroupPlan& plan, const Field& phi,
                                   const Nonlinearity& f, const SpaceTimeField& w0,
                                   const MonotoneSolveOptions& options = {});

struct SubsolutionChain {
  std::vector<SpaceTimeField> members;  // F^k applied to S(.) phi, k = 0..k_max
  bool nondecreasing = true;
  double worst_gap = 0;                 // largest drop of member_{k+1} below member_k
  bool overflowed = false;              // chain growing past the cap: blow-up inside [0,T]
};

SubsolutionChain check_subsolution_chain(const SemigroupPlan& plan, const Field& phi,
                                         const Nonlinearity& f, int k_max,
                                         const TimeGrid& grid,
                                         double overflow_cap = 1e12,
                                         double tol = 1e-10);

}  // namespace supersol
