#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rd/assembly.hpp"

namespace rd {

enum class SystemKind { euler1d, euler2d, wave1d };

struct MeshRecipe {
  enum class Kind { interval, rect, step, dmr, disk, file } kind = Kind::interval;
  double a = 0.0, b = 1.0;        // interval / rect x-range
  double y0 = 0.0, y1 = 1.0;      // rect y-range
  int n = 100;                    // 1D cells
  int nx = 0, ny = 0;             // 2D quads
  double radius = 0.0;
  int n_theta = 0, n_rings = 0;
  double jitter = 0.0;
  std::string path;
};

struct BCDef {
  BCKind kind = BCKind::transmissive;
  // prescribed primitive exterior state (rho,u,v,p), possibly time-dependent
  std::function<std::array<double, 4>(double, double, double)> prim;
};

/// Benchmark definition: initial/boundary data, gas model, final time and the
/// per-degree stabilization and (M,R) defaults.
struct ProblemDef {
  std::string name;
  std::string description;
  SystemKind system = SystemKind::euler1d;
  double gamma = 1.4;
  double wave_speed = 1.0;
  bool periodic = false;
  MeshRecipe mesh;
  double t_final = 1.0;
  std::function<std::array<double, 4>(double, double)> ic;  // primitive
  std::map<std::string, BCDef> bcs;
  std::array<double, 4> theta1{0, 0, 0, 0};  // index by degree
  std::array<double, 4> theta2{0, 0, 0, 0};
  std::array<int, 4> M{0, 2, 3, 4};
  std::array<int, 4> R{0, 2, 3, 4};
  enum class Oracle { none, wave, isentropic, riemann, vortex } oracle = Oracle::none;
};

const std::vector<ProblemDef>& problem_registry();
const ProblemDef& find_problem(const std::string& name);
Mesh build_mesh(const MeshRecipe& r);

// --- exact solutions -------------------------------------------------------

/// d'Alembert solution of the wave test (alpha = beta = 100, a = 1).
std::array<double, 2> exact_wave1d(double x, double t);

/// Smooth isentropic flow (gamma = 3): characteristic equations solved by
/// safeguarded Newton to 1e-13. Returns primitives (rho, u, p).
std::array<double, 3> exact_isentropic1d(double x, double t);
/// The characteristic foot points (x1, x2) used by exact_isentropic1d.
std::array<double, 2> isentropic_roots(double x, double t);
double isentropic_rho0(double x);

/// Stationary vortex state (time-invariant), primitive (rho, u, v, p).
std::array<double, 4> vortex_prim(double x, double y, double gamma = 1.4);

}  // namespace rd
