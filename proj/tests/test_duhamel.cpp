#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "supersol/duhamel.hpp"

using namespace supersol;

namespace {

Domain sine_domain(int grid = 512, int modes = 128) {
  return make_domain(DomainKind::dirichlet_box, 1, {M_PI}, grid, modes);
}

Domain torus(int grid = 64, int modes = 16) {
  return make_domain(DomainKind::periodic_box, 1, {2 * M_PI}, grid, modes);
}

SpaceTimeField constant_trajectory(const Domain& d, const TimeGrid& grid, double value) {
  return spacetime_from_function(d, grid,
                                 [value](double, const std::vector<double>&) { return value; });
}

Field random_smooth_field(const SemigroupPlan& plan, std::mt19937& rng, int kmax) {
  const Domain& d = plan.domain;
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const Array x = d.axis_coordinates(0);
  Array g = Array::Zero(d.total_nodes());
  for (int k = 1; k <= kmax; ++k)
    g += (unif(rng) / (k * k)) * (k * M_PI * x / d.side_lengths[0]).sin();
  return field_from_values(d, g.square());
}

}  // namespace

TEST_CASE("time grids") {
  const TimeGrid g = TimeGrid::graded(1.0, 64, 2.0);
  CHECK(g.nodes[0] == 0.0);
  CHECK(g.nodes[64] == 1.0);
  CHECK(g.nodes[1] == doctest::Approx(1.0 / 4096));
  CHECK(g.gamma == 2.0);
  CHECK_THROWS_AS(TimeGrid::graded(1.0, 64, 0.5), std::invalid_argument);

  const TimeGrid lg = TimeGrid::log_prefixed(10.0, 100);
  CHECK(lg.nodes[0] == 0.0);
  CHECK(lg.nodes[100] == 10.0);
  CHECK(lg.nodes[1] == doctest::Approx(10.0 * 1e-6).epsilon(1e-6));
}

TEST_CASE("apply_F with zero source is the linear flow") {
  const Domain d = sine_domain();
  const SemigroupPlan plan = make_plan(d);
  const Field phi = make_field(d, EigenfunctionProfile{{1}, 0.7});
  const TimeGrid grid = TimeGrid::graded(1.0, 32, 2.0);

  const SpaceTimeField linear = semigroup_trajectory(plan, phi, grid);
  // F[v] must ignore v entirely
  const SpaceTimeField junk = constant_trajectory(d, grid, 5.0);
  const ApplyFResult res = apply_F(plan, phi, Nonlinearity::zero(), junk);
  CHECK_FALSE(res.overflowed);
  CHECK((res.field.slices - linear.slices).array().abs().maxCoeff() < 1e-14);
}

TEST_CASE("zero is a fixed point when f(0) = 0") {
  const Domain d = sine_domain(64, 16);
  const SemigroupPlan plan = make_plan(d);
  const Field zero = make_field(d, ConstantProfile{0.0});
  const TimeGrid grid = TimeGrid::graded(1.0, 16, 2.0);
  const ApplyFResult res = apply_F(plan, zero, Nonlinearity::power_law(2.0),
                                   constant_trajectory(d, grid, 0.0));
  CHECK(res.field.slices.array().abs().maxCoeff() == 0.0);
}

TEST_CASE("torus constants: F[a](t) = a + a^2 t") {
  const Domain d = torus();
  const SemigroupPlan plan = make_plan(d);
  const double a = 0.3;
  const Field phi = make_field(d, ConstantProfile{a});
  const TimeGrid grid = TimeGrid::graded(1.0, 32, 2.0);
  const ApplyFResult res = apply_F(plan, phi, Nonlinearity::power_law(2.0),
                                   constant_trajectory(d, grid, a));
  for (int j = 0; j <= grid.intervals(); ++j) {
    const double expected = a + a * a * grid.nodes[j];
    CHECK(res.field.slices.col(j).array().maxCoeff() ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(res.field.slices.col(j).array().minCoeff() ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("slice zero is the initial field exactly") {
  const Domain d = sine_domain(64, 16);
  const SemigroupPlan plan = make_plan(d);
  const Field phi = make_field(d, GaussianProfile{{1.5}, 0.4, 1.0});
  const TimeGrid grid = TimeGrid::graded(0.5, 16, 2.0);
  const ApplyFResult res = apply_F(plan, phi, Nonlinearity::power_law(2.0),
                                   semigroup_trajectory(plan, phi, grid));
  CHECK((res.field.slices.col(0).array() - phi.values).abs().maxCoeff() == 0.0);
}

TEST_CASE("monotonicity of F on ordered inputs") {
  const Domain d = sine_domain();
  const SemigroupPlan plan = make_plan(d);
  const Field phi = make_field(d, EigenfunctionProfile{{1}, 0.4});
  const TimeGrid grid = TimeGrid::graded(1.0, 24, 2.0);
  const Nonlinearity f = Nonlinearity::power_law(2.0);

  std::mt19937 rng(101);
  std::uniform_real_distribution<double> unif(0.0, 0.5);
  for (int trial = 0; trial < 5; ++trial) {
    const Field base = random_smooth_field(plan, rng, 40);
    SpaceTimeField v1 = semigroup_trajectory(plan, base, grid);
    SpaceTimeField v2 = v1;
    for (int j = 0; j <= grid.intervals(); ++j)
      v2.slices.col(j).array() += unif(rng);  // nonneg shift per time
    const ApplyFResult F1 = apply_F(plan, phi, f, v1);
    const ApplyFResult F2 = apply_F(plan, phi, f, v2);
    CHECK((F1.field.slices - F2.field.slices).array().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("quadrature order on the torus closed form") {
  // u' = u^2, u(0) = 1 has u(t) = 1/(1-t); the residual of the sampled exact
  // solution under the discrete operator must shrink at the midpoint rule's
  // order when the grid doubles.
  const Domain d = torus();
  const SemigroupPlan plan = make_plan(d);
  const Field phi = make_field(d, ConstantProfile{1.0});
  const Nonlinearity f = Nonlinearity::power_law(2.0);

  auto residual = [&](int J) {
    const TimeGrid grid = TimeGrid::graded(0.5, J, 2.0);
    const SpaceTimeField u = spacetime_from_function(
        d, grid, [](double t, const std::vector<double>&) { return 1.0 / (1.0 - t); });
    const ApplyFResult Fu = apply_F(plan, phi, f, u);
    return (Fu.field.slices - u.slices).array().abs().maxCoeff();
  };

  const double r16 = residual(16), r32 = residual(32), r64 = residual(64);
  CHECK(r16 / r32 > 3.0);
  CHECK(r16 / r32 < 5.5);
  CHECK(r32 / r64 > 3.0);
  CHECK(r32 / r64 < 5.5);
}

TEST_CASE("check_supersolution") {
  const Domain d = sine_domain();
  const SemigroupPlan plan = make_plan(d);
  const Nonlinearity f = Nonlinearity::power_law(2.0);

  SUBCASE("an exact solution sits on the margin") {
    const Domain per = torus();
    const SemigroupPlan pplan = make_plan(per);
    const Field phi = make_field(per, ConstantProfile{1.0});
    const TimeGrid grid = TimeGrid::graded(0.5, 128, 2.0);
    const SpaceTimeField u = spacetime_from_function(
        per, grid, [](double t, const std::vector<double>&) { return 1.0 / (1.0 - t); });
    const Certificate cert = check_supersolution(pplan, phi, f, u, 1e-3);
    CHECK(cert.valid);
    CHECK(std::abs(cert.margin) < 1e-3);
    CHECK(cert.condition_id == ConditionId::supersolution_direct);
  }

  SUBCASE("doubled linear flow is a strict supersolution for small data") {
    const Field phi = make_field(d, EigenfunctionProfile{{1}, 0.2});
    const TimeGrid grid = TimeGrid::graded(1.0, 64, 2.0);
    const SpaceTimeField w = scaled(semigroup_trajectory(plan, phi, grid), 2.0);
    const Certificate cert = check_supersolution(plan, phi, f, w, 1e-9);
    CHECK(cert.valid);
    CHECK(cert.margin >= 0.0);
  }

  SUBCASE("zero is not a supersolution for nonzero data") {
    const Field phi = make_field(d, EigenfunctionProfile{{1}, 0.2});
    const TimeGrid grid = TimeGrid::graded(1.0, 16, 2.0);
    const SpaceTimeField w = constant_trajectory(d, grid, 0.0);
    const Certificate cert = check_supersolution(plan, phi, f, w, 1e-12);
    CHECK_FALSE(cert.valid);
    // fails from the initial slice on: w(0) = 0 sits below phi
    CHECK(cert.first_failure_time == 0.0);
    CHECK(cert.margin < 0.0);
  }
}

TEST_CASE("monotone_solve zero source converges immediately") {
  const Domain d = sine_domain();
  const SemigroupPlan plan = make_plan(d);
  const Field phi = make_field(d, EigenfunctionProfile{{1}, 0.5});
  const TimeGrid grid = TimeGrid::graded(1.0, 32, 2.0);
  const SpaceTimeField w0 = semigroup_trajectory(plan, phi, grid);
  const MonotoneSolveResult res =
      monotone_solve(plan, phi, Nonlinearity::zero(), w0);
  CHECK(res.status == SolveStatus::converged);
  CHECK(res.report.iterations_used == 1);
  CHECK(res.report.residual_history[0] < 1e-14);
}

TEST_CASE("monotone_solve certified sine case with sandwich") {
  const Domain d = sine_domain();
  const SemigroupPlan plan = make_plan(d);
  const Field phi = make_field(d, EigenfunctionProfile{{1}, 0.2});
  const Nonlinearity f = Nonlinearity::power_law(2.0);
  const TimeGrid grid = TimeGrid::graded(1.0, 64, 2.0);
  // 2 S(t) phi is a genuine supersolution here: 1 + 4a(1 - e^{-t}) <= 2
  const SpaceTimeField w0 = scaled(semigroup_trajectory(plan, phi, grid), 2.0);

  const MonotoneSolveResult res = monotone_solve(plan, phi, f, w0);
  REQUIRE(res.status == SolveStatus::converged);
  CHECK(res.report.converged);
  CHECK(res.report.iterations_used <= 30);
  CHECK(res.report.residual_history.back() <= 1e-6);
  for (double v : res.report.monotonicity_violations) CHECK(v <= 1e-10);
  // residuals decrease monotonically after the first step
  for (std::size_t k = 1; k < res.report.residual_history.size(); ++k)
    CHECK(res.report.residual_history[k] <= res.report.residual_history[k - 1] * 1.01);

  // sandwich: subsolution chain <= solution <= supersolution
  const SubsolutionChain chain = check_subsolution_chain(plan, phi, f, 2, grid);
  CHECK(chain.nondecreasing);
  CHECK_FALSE(chain.overflowed);
  for (const SpaceTimeField& member : chain.members)
    CHECK((res.solution.slices - member.slices).array().minCoeff() >= -1e-6);
  CHECK((w0.slices - res.solution.slices).array().minCoeff() >= -1e-6);

  // slice 0 of the converged solution is phi exactly
  CHECK((res.solution.slices.col(0).array() - phi.values).abs().maxCoeff() == 0.0);
}

TEST_CASE("monotone_solve recovers the torus blow-up solution from above") {
  // w0 = b/(1 - b t) with b < 2 satisfies F[w0] = 1 + b(1/(1-bt) - 1) =
  // w0 - (b - 1), a uniform-margin supersolution on [0, 0.5]; the iteration
  // limit is the minimal solution u(t) = 1/(1 - t).
  const Domain d = torus();
  const SemigroupPlan plan = make_plan(d);
  const Field phi = make_field(d, ConstantProfile{1.0});
  const Nonlinearity f = Nonlinearity::power_law(2.0);
  const TimeGrid grid = TimeGrid::graded(0.5, 256, 1.0);
  const double b = 1.9;
  const SpaceTimeField w0 = spacetime_from_function(
      d, grid, [b](double t, const std::vector<double>&) { return b / (1.0 - b * t); });

  MonotoneSolveOptions opt;
  opt.max_iter = 60;
  opt.tol = 1e-7;
  const MonotoneSolveResult res = monotone_solve(plan, phi, f, w0, opt);
  REQUIRE(res.status == SolveStatus::converged);
  const double u_end = res.solution.slices.col(grid.intervals()).array().maxCoeff();
  CHECK(u_end == doctest::Approx(2.0).epsilon(2e-3));
}

TEST_CASE("monotone_solve guards") {
  const Domain d = torus();
  const SemigroupPlan plan = make_plan(d);
  const Nonlinearity f = Nonlinearity::power_law(2.0);

  SUBCASE("refuses non-supersolutions unless forced") {
    const Field phi = make_field(d, ConstantProfile{1.0});
    const TimeGrid grid = TimeGrid::graded(0.5, 32, 2.0);
    const SpaceTimeField w0 = semigroup_trajectory(plan, phi, grid);  // subsolution
    const MonotoneSolveResult res = monotone_solve(plan, phi, f, w0);
    CHECK(res.status == SolveStatus::not_a_supersolution);
  }

  SUBCASE("aborts when the sequence stops being monotone") {
    // starting exactly on the solution, the quadrature error pushes the first
    // iterate slightly above w0 at some nodes
    const Field phi = make_field(d, ConstantProfile{1.0});
    const TimeGrid grid = TimeGrid::graded(0.5, 64, 2.0);
    const SpaceTimeField u = spacetime_from_function(
        d, grid, [](double t, const std::vector<double>&) { return 1.0 / (1.0 - t); });
    MonotoneSolveOptions opt;
    opt.supersolution_tol = 1e-2;  // let the precheck pass
    opt.tol_mono = 1e-10;
    const MonotoneSolveResult res = monotone_solve(plan, phi, f, u, opt);
    CHECK(res.status == SolveStatus::monotonicity_abort);
    CHECK_FALSE(res.report.diagnostic.empty());
  }

  SUBCASE("overflow is flagged as pre-blow-up, not thrown") {
    const Field phi = make_field(d, ConstantProfile{1e5});
    const TimeGrid grid = TimeGrid::graded(0.5, 16, 2.0);
    const SpaceTimeField w0 = scaled(semigroup_trajectory(plan, phi, grid), 2.0);
    MonotoneSolveOptions opt;
    opt.force = true;
    const MonotoneSolveResult res =
        monotone_solve(plan, phi, Nonlinearity::power_law(3.0), w0, opt);
    CHECK(res.status == SolveStatus::overflow);
    CHECK(res.report.overflowed);
  }
}

TEST_CASE("subsolution chain") {
  const Domain d = sine_domain();
  const SemigroupPlan plan = make_plan(d);
  const Field phi = make_field(d, EigenfunctionProfile{{1}, 0.2});
  const TimeGrid grid = TimeGrid::graded(1.0, 32, 2.0);

  SUBCASE("zero source: every member equals the linear flow") {
    const SubsolutionChain chain =
        check_subsolution_chain(plan, phi, Nonlinearity::zero(), 3, grid);
    for (std::size_t k = 1; k < chain.members.size(); ++k)
      CHECK((chain.members[k].slices - chain.members[0].slices).array().abs().maxCoeff() <
            1e-13);
  }

  SUBCASE("power source: strictly increasing chain") {
    const SubsolutionChain chain =
        check_subsolution_chain(plan, phi, Nonlinearity::power_law(2.0), 3, grid);
    CHECK(chain.nondecreasing);
    // the first correction is strictly positive away from the boundary
    const Index mid = d.total_nodes() / 2;
    CHECK(chain.members[1].slices(mid, grid.intervals()) >
          chain.members[0].slices(mid, grid.intervals()));
  }

  SUBCASE("blow-up data overflows the chain") {
    const Domain per = torus();
    const SemigroupPlan pplan = make_plan(per);
    const Field big = make_field(per, ConstantProfile{50.0});
    const TimeGrid tg = TimeGrid::graded(2.0, 32, 2.0);
    const SubsolutionChain chain =
        check_subsolution_chain(pplan, big, Nonlinearity::power_law(3.0), 8, tg);
    CHECK(chain.overflowed);
  }
}
