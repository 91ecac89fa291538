#include <doctest.h>

#include "oracles.hpp"
#include "rd/exact_riemann.hpp"
#include "rd/problems.hpp"

using namespace rd;

TEST_CASE("initial conditions match the benchmark tables") {
  const auto& sod = find_problem("sod1d");
  auto l = sod.ic(-0.5, 0);
  CHECK(l[0] == 1.0);
  CHECK(l[1] == 0.0);
  CHECK(l[3] == 1.0);
  auto r = sod.ic(0.5, 0);
  CHECK(r[0] == 0.125);
  CHECK(r[3] == doctest::Approx(0.1));

  const auto& wc = find_problem("woodward_colella");
  CHECK(wc.ic(0.5, 0)[3] == doctest::Approx(1e-2));
  CHECK(wc.ic(0.05, 0)[3] == doctest::Approx(1e3));
  CHECK(wc.ic(0.95, 0)[3] == doctest::Approx(1e2));

  const auto& so = find_problem("shu_osher");
  auto sl = so.ic(-4.5, 0);
  CHECK(sl[0] == doctest::Approx(3.857143));
  CHECK(sl[1] == doctest::Approx(2.629369));
  CHECK(sl[3] == doctest::Approx(10.333333));
  CHECK(so.ic(0.0, 0)[0] == doctest::Approx(1.0));

  // vortex: center density from the closed form, free stream in the far field
  const double g = 1.4, beta = 5.0;
  const double rho_c = std::pow(1.0 - (g - 1) * beta * beta / (8 * g * M_PI * M_PI) * std::exp(1.0),
                                1.0 / (g - 1));
  auto vc = vortex_prim(0, 0);
  CHECK(vc[0] == doctest::Approx(rho_c).epsilon(1e-13));
  auto vf = vortex_prim(9.0, -3.0);
  CHECK(vf[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(vf[1]) < 1e-9);
  CHECK(std::abs(vf[2]) < 1e-9);
  CHECK(vf[3] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("every registered problem has a boundary condition per mesh tag") {
  for (const auto& p : problem_registry()) {
    auto mesh = build_mesh(p.mesh);
    for (const auto& tag : mesh.tags) CHECK(p.bcs.count(tag) == 1);
    CHECK(p.t_final > 0.0);
    for (int deg = 1; deg <= 3; ++deg) {
      CHECK(p.M[deg] >= 1);
      CHECK(p.R[deg] >= 1);
      CHECK(p.theta1[deg] >= 0.0);
      CHECK(p.theta2[deg] >= 0.0);
    }
  }
}

TEST_CASE("wave exact solution: IC, finite speed, PDE plug-back") {
  for (double x : {-0.8, -0.2, 0.3, 0.5, 0.9, 1.7}) {
    auto w0 = exact_wave1d(x, 0.0);
    // fused-multiply contraction can leave a few ulps of the local magnitude
    CHECK(std::abs(w0[0]) <= 1e-13 * (1.0 + std::abs(w0[1])));
  }
  // the packet is compactly supported near x = 1/2; far points stay quiet
  CHECK(std::abs(exact_wave1d(2.0, 0.3)[0]) < 1e-30);
  CHECK(std::abs(exact_wave1d(-1.0, 0.3)[0]) < 1e-30);

  // u_t = a^2 v_x and v_t = u_x by central differences
  oracle::Rng rng(3);
  const double h = 1e-5;
  for (int it = 0; it < 100; ++it) {
    const double x = rng.in(-0.3, 1.3), t = rng.in(0.01, 0.5);
    auto ut = (1.0 / (2 * h)) * (Vec<2>(exact_wave1d(x, t + h)) - Vec<2>(exact_wave1d(x, t - h)));
    auto ux = (1.0 / (2 * h)) * (Vec<2>(exact_wave1d(x + h, t)) - Vec<2>(exact_wave1d(x - h, t)));
    const double scale = 1e4;  // the packet's derivatives are O(alpha^2)
    CHECK(std::abs(ut[0] - ux[1]) < 1e-4 * scale);
    CHECK(std::abs(ut[1] - ux[0]) < 1e-4 * scale);
  }
}

TEST_CASE("isentropic exact solution: t = 0 identity and plug-back residuals") {
  for (double x : {-0.9, -0.5, 0.0, 0.4, 0.8}) {
    auto w = exact_isentropic1d(x, 0.0);
    CHECK(w[0] == doctest::Approx(isentropic_rho0(x)).epsilon(1e-13));
    CHECK(std::abs(w[1]) < 1e-13);
  }
  oracle::Rng rng(19);
  const double t = 0.1;
  for (int it = 0; it < 1000; ++it) {
    const double x = rng.in(-1, 1);
    auto roots = isentropic_roots(x, t);
    const double g1 = x + std::sqrt(3.0) * isentropic_rho0(roots[0]) * t - roots[0];
    const double g2 = x - std::sqrt(3.0) * isentropic_rho0(roots[1]) * t - roots[1];
    CHECK(std::abs(g1) < 1e-12);
    CHECK(std::abs(g2) < 1e-12);
    auto w = exact_isentropic1d(x, t);
    CHECK(w[1] == doctest::Approx(std::sqrt(3.0) * (w[0] - isentropic_rho0(roots[0])))
                      .epsilon(1e-12)
                      .scale(1.0));
    CHECK(w[2] == doctest::Approx(w[0] * w[0] * w[0]).epsilon(1e-13));
  }
}

TEST_CASE("exact Riemann solver: Sod star state, monotone fan, RH relations") {
  const std::array<double, 3> wl{1, 0, 1}, wr{0.125, 0, 0.1};
  ExactRiemann er(wl, wr, 1.4);
  CHECK(er.p_star() == doctest::Approx(0.30313).epsilon(2e-4));

  // plug-back: the pressure function vanishes at p*
  auto fK = [&](double p, const std::array<double, 3>& w) {
    const double g = 1.4, rho = w[0], pk = w[2];
    const double c = std::sqrt(g * pk / rho);
    if (p > pk) {
      const double A = 2.0 / ((g + 1) * rho), B = (g - 1) / (g + 1) * pk;
      return (p - pk) * std::sqrt(A / (p + B));
    }
    return 2.0 * c / (g - 1) * (std::pow(p / pk, (g - 1) / (2 * g)) - 1.0);
  };
  CHECK(std::abs(fK(er.p_star(), wl) + fK(er.p_star(), wr) + (wr[1] - wl[1])) < 1e-12);

  // equal states: constant solution
  ExactRiemann same(wl, wl, 1.4);
  for (double xi : {-1.0, 0.0, 1.0}) {
    auto w = same.sample(xi);
    CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(w[1]) < 1e-12);
  }

  // density is monotone across the left rarefaction
  double prev = 2.0;
  for (double xi = -1.3; xi <= 0.0; xi += 0.01) {
    auto w = er.sample(xi);
    CHECK(w[0] <= prev + 1e-12);
    prev = w[0];
  }

  // Rankine-Hugoniot across the right shock
  const double g = 1.4;
  const double ps = er.p_star() / wr[2];
  const double cr = std::sqrt(g * wr[2] / wr[0]);
  const double s = wr[1] + cr * std::sqrt((g + 1) / (2 * g) * ps + (g - 1) / (2 * g));
  auto wstar = er.sample(s - 1e-9);
  auto flux = [&](const std::array<double, 3>& w) {
    const double rho = w[0], u = w[1], p = w[2];
    const double E = p / (g - 1) + 0.5 * rho * u * u;
    return std::array<double, 3>{rho * u, rho * u * u + p, u * (E + p)};
  };
  auto cons = [&](const std::array<double, 3>& w) {
    return std::array<double, 3>{w[0], w[0] * w[1],
                                 w[2] / (g - 1) + 0.5 * w[0] * w[1] * w[1]};
  };
  auto fl = flux(wstar), fr2 = flux(wr);
  auto ul = cons(wstar), ur2 = cons(wr);
  for (int c = 0; c < 3; ++c)
    CHECK(std::abs((fr2[c] - fl[c]) - s * (ur2[c] - ul[c])) < 1e-10);

  // vacuum detection
  CHECK_THROWS_AS(ExactRiemann({1, -20, 1}, {1, 20, 1}, 1.4), VacuumError);
}

TEST_CASE("dmr setup: shock line and time-dependent top state are consistent") {
  const auto& p = find_problem("dmr2d");
  // ahead of the shock foot on the bottom-right: pre-shock state
  CHECK(p.ic(3.0, 0.0)[0] == doctest::Approx(1.4));
  // behind the shock: post-shock density 8
  CHECK(p.ic(0.0, 0.5)[0] == doctest::Approx(8.0));
}
