#include <doctest.h>

#include "oracles.hpp"
#include "rd/physics.hpp"

using namespace rd;

TEST_CASE("euler flux, zero-velocity state has only the pressure term") {
  Euler2D sys;
  auto U = sys.cons_from_prim({1, 0, 0, 1});
  CHECK(U[3] == doctest::Approx(2.5).epsilon(1e-15));
  Euler2D::State f[2];
  sys.flux(U, f);
  CHECK(f[0][0] == 0.0);
  CHECK(f[0][1] == doctest::Approx(1.0));
  CHECK(f[0][2] == 0.0);
  CHECK(f[0][3] == 0.0);
}

TEST_CASE("euler flux matches the analytic columns on the Shu-Osher left state") {
  Euler1D sys;
  const double rho = 3.857143, u = 2.629369, p = 10.333333;
  auto U = sys.cons_from_prim({rho, u, p});
  Euler1D::State f[1];
  sys.flux(U, f);
  const double E = p / 0.4 + 0.5 * rho * u * u;
  CHECK(f[0][0] == doctest::Approx(rho * u).epsilon(1e-14));
  CHECK(f[0][1] == doctest::Approx(rho * u * u + p).epsilon(1e-14));
  CHECK(f[0][2] == doctest::Approx(u * (E + p)).epsilon(1e-14));
}

TEST_CASE("pressure and sound speed closed forms") {
  Euler1D sys;
  auto U = sys.cons_from_prim({1, 0, 1});  // Sod left
  CHECK(sys.sound_speed(U) == doctest::Approx(std::sqrt(1.4)).epsilon(1e-14));

  Euler1D g3{GasModel{3.0}};
  auto V = g3.cons_from_prim({1, 0, 1});  // p0 = rho^gamma at rho = 1
  CHECK(g3.pressure(V) == doctest::Approx(1.0).epsilon(1e-14));

  // E = p/(gamma-1) at zero velocity round-trips
  CHECK(V[2] == doctest::Approx(1.0 / 2.0).epsilon(1e-14));
}

TEST_CASE("invalid states throw") {
  Euler1D sys;
  CHECK_THROWS_AS(sys.sound_speed({-1.0, 0.0, 1.0}), InvalidStateError);
  Euler1D::State f[1];
  CHECK_THROWS_AS(sys.flux({1.0, 0.0, -3.0}, f), InvalidStateError);  // p < 0
}

TEST_CASE("conserved<->primitive round trip to 1e-14 relative") {
  oracle::Rng rng(42);
  Euler2D sys;
  Euler1D sys1;
  for (int i = 0; i < 10000; ++i) {
    const double rho = rng.in(0.1, 10), u = rng.in(-3, 3), v = rng.in(-3, 3), p = rng.in(0.1, 10);
    auto U = sys.cons_from_prim({rho, u, v, p});
    auto w = sys.prim_from_cons(U);
    auto U2 = sys.cons_from_prim(w);
    for (int c = 0; c < 4; ++c)
      CHECK(std::abs(U2[c] - U[c]) <= 1e-14 * (1.0 + std::abs(U[c])));

    auto V = sys1.cons_from_prim({rho, u, p});
    auto w1 = sys1.prim_from_cons(V);
    CHECK(w1[0] == doctest::Approx(rho).epsilon(1e-14));
    CHECK(w1[1] == doctest::Approx(u).epsilon(1e-14));
    CHECK(w1[2] == doctest::Approx(p).epsilon(1e-14));
  }
}

TEST_CASE("eigensystem: L R = I and R Lambda L reproduces the FD Jacobian") {
  oracle::Rng rng(7);
  Euler2D sys;
  double worst_lr = 0, worst_jac = 0;
  for (int it = 0; it < 200; ++it) {
    const double rho = rng.in(0.1, 10), u = rng.in(-3, 3), v = rng.in(-3, 3), p = rng.in(0.1, 10);
    auto U = sys.cons_from_prim({rho, u, v, p});
    const double th = rng.in(0, 2 * M_PI);
    const double n[2] = {std::cos(th), std::sin(th)};
    auto es = sys.eigensystem(U, n);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double s = 0;
        for (int k = 0; k < 4; ++k) s += es.left[i][k] * es.right[k][j];
        worst_lr = std::max(worst_lr, std::abs(s - (i == j ? 1.0 : 0.0)));
      }
    auto J = oracle::fd_jacobian<4>(
        [&](const std::array<double, 4>& W) {
          Euler2D::State f[2];
          sys.flux(W, f);
          std::array<double, 4> fn;
          for (int c = 0; c < 4; ++c) fn[c] = f[0][c] * n[0] + f[1][c] * n[1];
          return fn;
        },
        U);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double s = 0;
        for (int k = 0; k < 4; ++k) s += es.right[i][k] * es.lambda[k] * es.left[k][j];
        worst_jac = std::max(worst_jac, std::abs(s - J[i][j]));
      }
    // spectral radius bounds every eigenvalue
    const double sr = sys.spectral_radius(U, n);
    for (double lam : es.lambda) CHECK(sr >= std::abs(lam) - 1e-12);
  }
  CHECK(worst_lr < 1e-12);
  CHECK(worst_jac < 1e-8);
}

TEST_CASE("eigensystem 1D against FD Jacobian") {
  oracle::Rng rng(11);
  Euler1D sys;
  for (int it = 0; it < 200; ++it) {
    auto U = sys.cons_from_prim({rng.in(0.1, 10), rng.in(-3, 3), rng.in(0.1, 10)});
    const double n[1] = {1.0};
    auto es = sys.eigensystem(U, n);
    auto J = oracle::fd_jacobian<3>(
        [&](const std::array<double, 3>& W) {
          Euler1D::State f[1];
          sys.flux(W, f);
          return f[0];
        },
        U);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double lr = 0, rl = 0;
        for (int k = 0; k < 3; ++k) {
          lr += es.left[i][k] * es.right[k][j];
          rl += es.right[i][k] * es.lambda[k] * es.left[k][j];
        }
        CHECK(std::abs(lr - (i == j ? 1.0 : 0.0)) < 1e-12);
        CHECK(std::abs(rl - J[i][j]) < 1e-8);
      }
  }
}

TEST_CASE("characteristic direction falls back to the x-axis at rest") {
  Euler2D sys;
  auto U = sys.cons_from_prim({1, 0, 0, 1});
  double n[2];
  sys.limit_direction(U, n);
  CHECK(n[0] == 1.0);
  CHECK(n[1] == 0.0);
}

TEST_CASE("spectral radius closed forms") {
  Euler2D sys;
  const double n[2] = {1, 0};
  CHECK(sys.spectral_radius(sys.cons_from_prim({1, 0, 0, 1}), n) ==
        doctest::Approx(std::sqrt(1.4)).epsilon(1e-14));
  // u = 2, c = 1  =>  3
  CHECK(sys.spectral_radius(sys.cons_from_prim({1, 2, 0, 1.0 / 1.4}), n) ==
        doctest::Approx(3.0).epsilon(1e-13));
  // supersonic Shu-Osher left state: |u| + c
  Euler1D s1;
  auto U = s1.cons_from_prim({3.857143, 2.629369, 10.333333});
  const double c = std::sqrt(1.4 * 10.333333 / 3.857143);
  const double n1[1] = {1.0};
  CHECK(s1.spectral_radius(U, n1) == doctest::Approx(2.629369 + c).epsilon(1e-14));
}

TEST_CASE("wave system flux and eigenstructure") {
  CHECK(wave_flux({0, 1}, 1.0)[0] == doctest::Approx(-1.0));
  CHECK(wave_flux({0, 1}, 1.0)[1] == doctest::Approx(0.0));

  Wave1D sys{1.3};
  const double n[1] = {1.0};
  auto es = sys.eigensystem({0.3, -0.2}, n);
  CHECK(std::abs(es.lambda[0]) == doctest::Approx(1.3));
  CHECK(std::abs(es.lambda[1]) == doctest::Approx(1.3));
  CHECK(es.lambda[0] * es.lambda[1] < 0);  // one left- and one right-going family
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double lr = 0;
      for (int k = 0; k < 2; ++k) lr += es.left[i][k] * es.right[k][j];
      CHECK(std::abs(lr - (i == j ? 1.0 : 0.0)) < 1e-14);
    }
  // R Lambda L equals the flux Jacobian [[0, -a^2], [-1, 0]]
  const double A[2][2] = {{0, -1.3 * 1.3}, {-1, 0}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double s = 0;
      for (int k = 0; k < 2; ++k) s += es.right[i][k] * es.lambda[k] * es.left[k][j];
      CHECK(s == doctest::Approx(A[i][j]).epsilon(1e-14));
    }
}
