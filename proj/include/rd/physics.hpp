#pragma once

#include <algorithm>
#include <cmath>

#include "rd/state.hpp"

namespace rd {

struct GasModel {
  double gamma = 1.4;
};

template <int N>
struct EigenSystem {
  // right[i][j]: i-th component of the j-th right eigenvector;
  // left[i][j]:  j-th component of the i-th left eigenvector, so L*R = I.
  double right[N][N];
  double left[N][N];
  double lambda[N];
};

// ---------------------------------------------------------------------------
// Compressible Euler equations, 2D.  U = (rho, rho*u, rho*v, E).
// ---------------------------------------------------------------------------
struct Euler2D {
  static constexpr int dim = 2;
  static constexpr int ncomp = 4;
  static constexpr bool has_pressure = true;
  using State = Vec<4>;

  GasModel gas;

  double pressure(const State& U) const {
    return (gas.gamma - 1.0) * (U[3] - 0.5 * (U[1] * U[1] + U[2] * U[2]) / U[0]);
  }

  bool admissible(const State& U) const {
    return U[0] > 0.0 && pressure(U) > 0.0 && finite(U);
  }

  /// Assembly-level validity: finite values with a usable (nonzero) density.
  /// Tiny negative transients near vacuum ride through the dissipation rather
  /// than aborting the step; the public flux/sound_speed ops stay strict.
  bool density_ok(const State& U) const { return U[0] != 0.0 && finite(U); }

  /// Flux columns without the validity gate (pressure enters algebraically).
  void flux_raw(const State& U, State f[2]) const {
    const double rho = U[0], u = U[1] / rho, v = U[2] / rho, E = U[3];
    const double p = pressure(U);
    f[0] = {U[1], U[1] * u + p, U[2] * u, u * (E + p)};
    f[1] = {U[2], U[1] * v, U[2] * v + p, v * (E + p)};
  }

  /// Dissipation/CFL wave-speed bound with a floored sound speed; stays
  /// finite and nonnegative across near-vacuum transients.
  double speed_bound(const State& U) const {
    const double r = std::abs(U[0]);
    return std::hypot(U[1], U[2]) / r + std::sqrt(gas.gamma * std::max(pressure(U), 0.0) / r);
  }

  void require_valid(const State& U, int element = -1) const {
    if (!(U[0] > 0.0))
      throw InvalidStateError("non-positive density rho=" + std::to_string(U[0]), element);
    const double p = pressure(U);
    if (!(p > 0.0))
      throw InvalidStateError("non-positive pressure p=" + std::to_string(p), element);
  }

  double sound_speed(const State& U) const {
    require_valid(U);
    return std::sqrt(gas.gamma * pressure(U) / U[0]);
  }

  /// Flux columns (f1, f2) exactly as in the conservation-law statement.
  void flux(const State& U, State f[2]) const {
    require_valid(U);
    const double rho = U[0], u = U[1] / rho, v = U[2] / rho, E = U[3];
    const double p = pressure(U);
    f[0] = {U[1], U[1] * u + p, U[2] * u, u * (E + p)};
    f[1] = {U[2], U[1] * v, U[2] * v + p, v * (E + p)};
  }

  /// |u.n| + c, the spectral radius of the directional flux Jacobian.
  double spectral_radius(const State& U, const double n[2]) const {
    const double un = (U[1] * n[0] + U[2] * n[1]) / U[0];
    return std::abs(un) + sound_speed(U);
  }

  /// |u| + c, a direction-free bound on all wave speeds.
  double max_speed(const State& U) const {
    const double s = std::hypot(U[1], U[2]) / U[0];
    return s + sound_speed(U);
  }

  State cons_from_prim(const Vec<4>& w) const {
    const double rho = w[0], u = w[1], v = w[2], p = w[3];
    return {rho, rho * u, rho * v, p / (gas.gamma - 1.0) + 0.5 * rho * (u * u + v * v)};
  }

  Vec<4> prim_from_cons(const State& U) const {
    return {U[0], U[1] / U[0], U[2] / U[0], pressure(U)};
  }

  /// Characteristic projection direction per §-average state: mean velocity,
  /// falling back to the x-axis when it (numerically) vanishes.
  void limit_direction(const State& Ubar, double n[2]) const {
    const double u = Ubar[1] / Ubar[0], v = Ubar[2] / Ubar[0];
    const double s = std::hypot(u, v);
    if (s < 1e-12) {
      n[0] = 1.0;
      n[1] = 0.0;
    } else {
      n[0] = u / s;
      n[1] = v / s;
    }
  }

  EigenSystem<4> eigensystem(const State& U, const double n[2]) const {
    require_valid(U);
    const double rho = U[0], u = U[1] / rho, v = U[2] / rho;
    const double p = pressure(U);
    const double c = std::sqrt(gas.gamma * p / rho);
    const double H = (U[3] + p) / rho;
    const double q2 = u * u + v * v;
    const double nx = n[0], ny = n[1];
    const double un = u * nx + v * ny;
    const double ut = -u * ny + v * nx;
    const double b1 = (gas.gamma - 1.0) / (c * c);
    const double b2 = 0.5 * b1 * q2;

    EigenSystem<4> es;
    const double R[4][4] = {
        {1, 1, 0, 1},
        {u - c * nx, u, -ny, u + c * nx},
        {v - c * ny, v, nx, v + c * ny},
        {H - c * un, 0.5 * q2, ut, H + c * un}};
    const double L[4][4] = {
        {0.5 * (b2 + un / c), 0.5 * (-b1 * u - nx / c), 0.5 * (-b1 * v - ny / c), 0.5 * b1},
        {1 - b2, b1 * u, b1 * v, -b1},
        {-ut, -ny, nx, 0},
        {0.5 * (b2 - un / c), 0.5 * (-b1 * u + nx / c), 0.5 * (-b1 * v + ny / c), 0.5 * b1}};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        es.right[i][j] = R[i][j];
        es.left[i][j] = L[i][j];
      }
    es.lambda[0] = un - c;
    es.lambda[1] = un;
    es.lambda[2] = un;
    es.lambda[3] = un + c;
    return es;
  }
};

// ---------------------------------------------------------------------------
// Compressible Euler equations, 1D.  U = (rho, rho*u, E).
// ---------------------------------------------------------------------------
struct Euler1D {
  static constexpr int dim = 1;
  static constexpr int ncomp = 3;
  static constexpr bool has_pressure = true;
  using State = Vec<3>;

  GasModel gas;

  double pressure(const State& U) const {
    return (gas.gamma - 1.0) * (U[2] - 0.5 * U[1] * U[1] / U[0]);
  }

  bool admissible(const State& U) const {
    return U[0] > 0.0 && pressure(U) > 0.0 && finite(U);
  }

  bool density_ok(const State& U) const { return U[0] != 0.0 && finite(U); }

  void flux_raw(const State& U, State f[1]) const {
    const double u = U[1] / U[0];
    const double p = pressure(U);
    f[0] = {U[1], U[1] * u + p, u * (U[2] + p)};
  }

  double speed_bound(const State& U) const {
    const double r = std::abs(U[0]);
    return std::abs(U[1]) / r + std::sqrt(gas.gamma * std::max(pressure(U), 0.0) / r);
  }

  void require_valid(const State& U, int element = -1) const {
    if (!(U[0] > 0.0))
      throw InvalidStateError("non-positive density rho=" + std::to_string(U[0]), element);
    const double p = pressure(U);
    if (!(p > 0.0))
      throw InvalidStateError("non-positive pressure p=" + std::to_string(p), element);
  }

  double sound_speed(const State& U) const {
    require_valid(U);
    return std::sqrt(gas.gamma * pressure(U) / U[0]);
  }

  void flux(const State& U, State f[1]) const {
    require_valid(U);
    const double u = U[1] / U[0];
    const double p = pressure(U);
    f[0] = {U[1], U[1] * u + p, u * (U[2] + p)};
  }

  double spectral_radius(const State& U, const double n[1]) const {
    return std::abs(U[1] / U[0] * n[0]) + sound_speed(U);
  }

  double max_speed(const State& U) const {
    return std::abs(U[1] / U[0]) + sound_speed(U);
  }

  State cons_from_prim(const Vec<3>& w) const {
    return {w[0], w[0] * w[1], w[2] / (gas.gamma - 1.0) + 0.5 * w[0] * w[1] * w[1]};
  }

  Vec<3> prim_from_cons(const State& U) const {
    return {U[0], U[1] / U[0], pressure(U)};
  }

  void limit_direction(const State&, double n[1]) const { n[0] = 1.0; }

  EigenSystem<3> eigensystem(const State& U, const double n[1]) const {
    require_valid(U);
    const double rho = U[0], u = U[1] / rho;
    const double p = pressure(U);
    const double c = std::sqrt(gas.gamma * p / rho);
    const double H = (U[2] + p) / rho;
    const double b1 = (gas.gamma - 1.0) / (c * c);
    const double b2 = 0.5 * b1 * u * u;

    EigenSystem<3> es;
    const double R[3][3] = {{1, 1, 1}, {u - c, u, u + c}, {H - u * c, 0.5 * u * u, H + u * c}};
    const double L[3][3] = {
        {0.5 * (b2 + u / c), 0.5 * (-b1 * u - 1 / c), 0.5 * b1},
        {1 - b2, b1 * u, -b1},
        {0.5 * (b2 - u / c), 0.5 * (-b1 * u + 1 / c), 0.5 * b1}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        es.right[i][j] = R[i][j];
        es.left[i][j] = L[i][j];
      }
    // A(U).n = n*A(U) in 1D: eigenvectors unchanged, eigenvalues scale with n.
    es.lambda[0] = n[0] * (u - c);
    es.lambda[1] = n[0] * u;
    es.lambda[2] = n[0] * (u + c);
    return es;
  }
};

// ---------------------------------------------------------------------------
// Linear wave system, 1D:  u_t - a^2 v_x = 0,  v_t - u_x = 0.
// ---------------------------------------------------------------------------
struct Wave1D {
  static constexpr int dim = 1;
  static constexpr int ncomp = 2;
  static constexpr bool has_pressure = false;
  using State = Vec<2>;

  double a = 1.0;

  bool admissible(const State& U) const { return finite(U); }
  bool density_ok(const State& U) const { return finite(U); }
  void require_valid(const State&, int = -1) const {}

  void flux(const State& W, State f[1]) const { f[0] = {-a * a * W[1], -W[0]}; }
  void flux_raw(const State& W, State f[1]) const { flux(W, f); }

  double spectral_radius(const State&, const double[1]) const { return a; }
  double max_speed(const State&) const { return a; }
  double speed_bound(const State&) const { return a; }

  State cons_from_prim(const Vec<2>& w) const { return w; }
  Vec<2> prim_from_cons(const State& U) const { return U; }

  void limit_direction(const State&, double n[1]) const { n[0] = 1.0; }

  EigenSystem<2> eigensystem(const State&, const double n[1]) const {
    EigenSystem<2> es;
    es.right[0][0] = a;
    es.right[0][1] = -a;
    es.right[1][0] = 1;
    es.right[1][1] = 1;
    es.left[0][0] = 0.5 / a;
    es.left[0][1] = 0.5;
    es.left[1][0] = -0.5 / a;
    es.left[1][1] = 0.5;
    es.lambda[0] = -a * n[0];
    es.lambda[1] = a * n[0];
    return es;
  }
};

/// Flux of the wave system as a free function (matches the spec surface).
inline Vec<2> wave_flux(const Vec<2>& W, double a) {
  return {-a * a * W[1], -W[0]};
}

}  // namespace rd
