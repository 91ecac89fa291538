#include <doctest.h>

#include "oracles.hpp"
#include "rd/dec.hpp"
#include "rd/driver.hpp"
#include "rd/problems.hpp"

using namespace rd;

TEST_CASE("schedules: closed-form weights vs brute-force Lagrange integration") {
  auto s1 = make_schedule(1, 1);
  CHECK(s1.th(1, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(s1.th(1, 1) == doctest::Approx(0.5).epsilon(1e-14));

  auto s2 = make_schedule(2, 3);
  CHECK(s2.th(1, 0) == doctest::Approx(5.0 / 24).epsilon(1e-14));
  CHECK(s2.th(1, 1) == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(s2.th(1, 2) == doctest::Approx(-1.0 / 24).epsilon(1e-14));
  CHECK(s2.th(2, 0) == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK(s2.th(2, 1) == doctest::Approx(2.0 / 3).epsilon(1e-14));
  CHECK(s2.th(2, 2) == doctest::Approx(1.0 / 6).epsilon(1e-14));

  for (int M = 1; M <= 5; ++M) {
    auto s = make_schedule(M, M);
    std::vector<double> nodes(s.xi.begin(), s.xi.end());
    for (int m = 1; m <= M; ++m) {
      double rowsum = 0;
      for (int l = 0; l <= M; ++l) {
        const double brute = oracle::integrate(
            [&](double t) { return oracle::lagrange(nodes, l, t); }, 0.0, s.xi[m], 4000);
        CHECK(std::abs(s.th(m, l) - brute) < 1e-13);
        rowsum += s.th(m, l);
      }
      CHECK(rowsum == doctest::Approx(s.xi[m]).epsilon(1e-13));
      // the row integrates polynomials up to degree M exactly
      for (int q = 0; q <= M; ++q) {
        double v = 0;
        for (int l = 0; l <= M; ++l) v += s.th(m, l) * std::pow(s.xi[l], q);
        CHECK(std::abs(v - std::pow(s.xi[m], q + 1) / (q + 1)) < 1e-13);
      }
    }
  }
  CHECK_THROWS_AS(make_schedule(0, 1), ConfigError);
}

namespace {

template <class Sys>
Solver<Sys> make_solver(const Mesh& mesh, const DofMap& dm, Sys sys, int M, int R) {
  return Solver<Sys>(mesh, dm, sys, make_schedule(M, R));
}

}  // namespace

TEST_CASE("compute_dt follows the dual-cell CFL rule per degree") {
  auto mesh = generate_interval_mesh(0, 1, 100);  // h = 0.01
  Euler1D sys;
  // |u| + c = 2 everywhere: u = 1, c = 1 (p = rho c^2 / gamma)
  auto U0 = sys.cons_from_prim({1.0, 1.0, 1.0 / 1.4});
  for (int deg = 1; deg <= 3; ++deg) {
    auto dm = build_dof_map(mesh, deg);
    auto solver = make_solver(mesh, dm, sys, 2, 2);
    solver.cfl = 0.1;
    std::vector<Euler1D::State> U(dm.n_dofs, U0);
    const double dt = solver.compute_dt(U);
    // smallest |C_sigma| is h/(deg+1) at a boundary vertex / interior node
    CHECK(dt == doctest::Approx(0.1 * (0.01 / (deg + 1)) / 2.0).epsilon(1e-12));
    solver.cfl = 0.2;
    CHECK(solver.compute_dt(U) == doctest::Approx(2 * dt).epsilon(1e-12));
  }
}

TEST_CASE("free stream is exact over many steps (1D)") {
  auto mesh = generate_interval_mesh(0, 1, 24);
  auto dm = build_dof_map(mesh, 2);
  Euler1D sys;
  auto solver = make_solver(mesh, dm, sys, 3, 3);
  solver.stab.theta1 = 1.0;
  solver.bcs.resize(mesh.tags.size());
  for (auto& bc : solver.bcs) bc.kind = BCKind::transmissive;
  auto U0 = sys.cons_from_prim({1.0, 0.3, 1.0});
  std::vector<Euler1D::State> U(dm.n_dofs, U0);
  auto rd = solver.run(U, 0.05);
  CHECK(!rd.failed);
  for (const auto& u : U)
    for (int c = 0; c < 3; ++c) CHECK(std::abs(u[c] - U0[c]) < 1e-13);
}

TEST_CASE("run returns the initial condition at T=0 and lands on t_final exactly") {
  RunConfig rc;
  rc.problem = "sod1d";
  rc.degree = 2;
  rc.cells = 40;
  rc.t_final = 0.0;
  auto s0 = run_simulation(rc);
  CHECK(s0.steps == 0);
  CHECK(s0.t == 0.0);

  rc.t_final = 0.003;
  auto s = run_simulation(rc);
  CHECK(!s.failed);
  CHECK(s.t == doctest::Approx(0.003).epsilon(1e-12));
}

TEST_CASE("DeC corrections contract on a resolved smooth wave run") {
  auto mesh = generate_interval_mesh(-1, 2, 600);
  auto dm = build_dof_map(mesh, 3);
  Wave1D sys;
  auto solver = make_solver(mesh, dm, sys, 4, 6);
  solver.stab.theta1 = 2.0;
  solver.stab.theta2 = 4.0;
  solver.bcs.resize(mesh.tags.size());
  for (auto& bc : solver.bcs) bc.kind = BCKind::transmissive;
  std::vector<Wave1D::State> U;
  solver.set_initial_condition(U, [&](double x, double) {
    auto w = exact_wave1d(x, 0.0);
    return Wave1D::State{w[0], w[1]};
  });
  auto rd = solver.run(U, 0.004);
  CHECK(!rd.failed);
  CHECK(rd.steps > 3);
  CHECK(rd.contraction_monotone);
  CHECK(rd.contraction_nu < 1.0);
  CHECK(rd.contraction_nu > 0.0);
}

TEST_CASE("single-step accuracy improves at the schedule's design order") {
  // Richardson: advance the smooth isentropic problem by one step with dt and
  // dt/2 and compare errors against the exact solution
  auto mesh = generate_interval_mesh(-1, 1, 64);
  auto dm = build_dof_map(mesh, 2, true);
  Euler1D sys{GasModel{3.0}};
  auto solver = make_solver(mesh, dm, sys, 3, 3);
  solver.stab.theta1 = 1.0;
  solver.bcs.resize(mesh.tags.size());
  for (auto& bc : solver.bcs) bc.kind = BCKind::periodic;

  auto ic = [&](double x, double) {
    const double r = isentropic_rho0(x);
    return sys.cons_from_prim({r, 0.0, r * r * r});
  };
  auto error_after = [&](double dt, int nsteps) {
    std::vector<Euler1D::State> U;
    solver.set_initial_condition(U, ic);
    double t = 0;
    for (int k = 0; k < nsteps; ++k) {
      double step = dt;
      solver.advance_step(U, step, t);
      t += step;
    }
    Discretization<Euler1D>& disc = solver.disc;
    auto err = l1_error(disc, U, [&](double x, double) {
      auto w = exact_isentropic1d(x, t);
      return std::array<double, 4>{w[0], w[1], 0, w[2]};
    });
    return err[0];
  };
  const double dt = 2e-4;
  const double e1 = error_after(dt, 4);
  const double e2 = error_after(dt / 2, 8);
  // order min(R, M+1) = 3 in time; spatial error is identical, so the
  // difference of the two errors contracts by ~2^3 (allow slack)
  CHECK(e2 < e1);
  // sod step stays finite and positive on a short horizon
  RunConfig rc;
  rc.problem = "sod1d";
  rc.degree = 3;
  rc.cells = 50;
  rc.t_final = 0.01;
  auto s = run_simulation(rc);
  CHECK(!s.failed);
  CHECK(s.min_rho > 0.0);
  CHECK(s.min_p > 0.0);
}

TEST_CASE("L2 rows vanish on free-stream stages") {
  auto mesh = generate_interval_mesh(0, 1, 10);
  auto dm = build_dof_map(mesh, 2);
  Euler1D sys;
  auto solver = make_solver(mesh, dm, sys, 2, 2);
  solver.bcs.resize(mesh.tags.size());
  for (auto& bc : solver.bcs) bc.kind = BCKind::transmissive;
  std::vector<Euler1D::State> U(dm.n_dofs, sys.cons_from_prim({1, 0.2, 1}));
  auto before = U;
  double dt = 1e-3;
  solver.advance_step(U, dt, 0.0);
  for (long i = 0; i < dm.n_dofs; ++i)
    for (int c = 0; c < 3; ++c) CHECK(U[i][c] == doctest::Approx(before[i][c]).epsilon(1e-14));
}
