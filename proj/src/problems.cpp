#include "rd/problems.hpp"

#include <cmath>

namespace rd {

namespace {

constexpr double kWaveAlpha = 100.0, kWaveBeta = 100.0;

double wave_v0(double x) {
  // v(x,0) = d/dx [ exp(-beta (x-1/2)^2) sin(alpha x) ]
  const double e = std::exp(-kWaveBeta * (x - 0.5) * (x - 0.5));
  return e * (kWaveAlpha * std::cos(kWaveAlpha * x) -
              2.0 * kWaveBeta * (x - 0.5) * std::sin(kWaveAlpha * x));
}

}  // namespace

std::array<double, 2> exact_wave1d(double x, double t) {
  // q_t = u, q_x = v with u(x,0) = 0: both characteristic families carry v0/2
  const double a = 1.0;
  const double vm = wave_v0(x - a * t), vp = wave_v0(x + a * t);
  return {0.5 * a * (vp - vm), 0.5 * (vm + vp)};
}

double isentropic_rho0(double x) { return 1.0 + 0.9999995 * std::sin(M_PI * x); }

namespace {

double isentropic_rho0p(double x) { return 0.9999995 * M_PI * std::cos(M_PI * x); }

// root of g(y) = x + s*sqrt(3)*t*rho0(y) - y, monotone decreasing in y for
// t below the characteristic-crossing time
double isentropic_root(double x, double t, double s) {
  const double k = s * std::sqrt(3.0) * t;
  double lo = x - 2.0 * std::abs(k) - 1e-12, hi = x + 2.0 * std::abs(k) + 1e-12;
  auto g = [&](double y) { return x + k * isentropic_rho0(y) - y; };
  double y = x + k * isentropic_rho0(x);  // one fixed-point sweep as the seed
  for (int it = 0; it < 100; ++it) {
    const double gy = g(y);
    if (std::abs(gy) < 1e-14) return y;
    if (gy > 0)
      lo = std::max(lo, y);
    else
      hi = std::min(hi, y);
    const double dg = k * isentropic_rho0p(y) - 1.0;
    double yn = y - gy / dg;
    if (!(yn > lo && yn < hi)) yn = 0.5 * (lo + hi);
    if (std::abs(yn - y) < 1e-15 * (1.0 + std::abs(y))) return yn;
    y = yn;
  }
  if (std::abs(g(y)) > 1e-10)
    throw std::runtime_error("isentropic oracle: Newton failed (t too large?)");
  return y;
}

}  // namespace

std::array<double, 2> isentropic_roots(double x, double t) {
  return {isentropic_root(x, t, +1.0), isentropic_root(x, t, -1.0)};
}

std::array<double, 3> exact_isentropic1d(double x, double t) {
  const auto r = isentropic_roots(x, t);
  const double rho = 0.5 * (isentropic_rho0(r[0]) + isentropic_rho0(r[1]));
  const double u = std::sqrt(3.0) * (rho - isentropic_rho0(r[0]));
  return {rho, u, rho * rho * rho};
}

std::array<double, 4> vortex_prim(double x, double y, double gamma) {
  const double beta = 5.0;
  const double r2 = x * x + y * y;
  const double e1 = std::exp(0.5 * (1.0 - r2));
  const double dT = -(gamma - 1.0) * beta * beta / (8.0 * gamma * M_PI * M_PI) * e1 * e1;
  const double rho = std::pow(1.0 + dT, 1.0 / (gamma - 1.0));
  const double u = -y * beta / (2.0 * M_PI) * e1;
  const double v = x * beta / (2.0 * M_PI) * e1;
  return {rho, u, v, std::pow(rho, gamma)};
}

Mesh build_mesh(const MeshRecipe& r) {
  switch (r.kind) {
    case MeshRecipe::Kind::interval:
      return generate_interval_mesh(r.a, r.b, r.n);
    case MeshRecipe::Kind::rect:
      return generate_rect_triangulation(r.a, r.b, r.y0, r.y1, r.nx, r.ny,
                                         RectPattern::alternating, r.jitter);
    case MeshRecipe::Kind::step:
      return generate_step_mesh(r.nx, r.ny);
    case MeshRecipe::Kind::dmr:
      return generate_dmr_mesh(r.nx, r.ny);
    case MeshRecipe::Kind::disk:
      return generate_disk_mesh(r.radius, r.n_theta, r.n_rings);
    case MeshRecipe::Kind::file:
      return read_gmsh_ascii(r.path);
  }
  throw ConfigError("unknown mesh recipe");
}

namespace {

std::array<double, 4> const_prim(double rho, double u, double v, double p) {
  return {rho, u, v, p};
}

// Mach 10 oblique-shock state for the double Mach reflection setup
const std::array<double, 4> kDmrPost = {8.0, 8.25 * std::sqrt(3.0) / 2.0, -8.25 * 0.5, 116.5};
const std::array<double, 4> kDmrPre = {1.4, 0.0, 0.0, 1.0};

double dmr_shock_x(double y, double t) {
  return 1.0 / 6.0 + (y + 20.0 * t) / std::sqrt(3.0);
}

std::vector<ProblemDef> build_registry() {
  std::vector<ProblemDef> reg;

  {
    ProblemDef p;
    p.name = "wave1d";
    p.description = "1D wave system, smooth packet, convergence benchmark (T=0.5)";
    p.system = SystemKind::wave1d;
    p.mesh = {MeshRecipe::Kind::interval, -1.0, 2.0, 0, 1, 600};
    p.t_final = 0.5;
    p.ic = [](double x, double) {
      return std::array<double, 4>{0.0, wave_v0(x), 0.0, 0.0};
    };
    p.bcs["left"] = {BCKind::transmissive, {}};
    p.bcs["right"] = {BCKind::transmissive, {}};
    p.theta1 = {0, 0.2, 0.1, 2.0};
    p.theta2 = {0, 0.0, 0.0, 4.0};
    p.oracle = ProblemDef::Oracle::wave;
    reg.push_back(p);
  }
  {
    ProblemDef p;
    p.name = "isentropic1d";
    p.description = "smooth isentropic flow, gamma=3, periodic (T=0.1)";
    p.system = SystemKind::euler1d;
    p.gamma = 3.0;
    p.periodic = true;
    p.mesh = {MeshRecipe::Kind::interval, -1.0, 1.0, 0, 1, 200};
    p.t_final = 0.1;
    p.ic = [](double x, double) {
      const double rho = isentropic_rho0(x);
      return std::array<double, 4>{rho, 0.0, 0.0, rho * rho * rho};
    };
    p.bcs["left"] = {BCKind::periodic, {}};
    p.bcs["right"] = {BCKind::periodic, {}};
    p.theta1 = {0, 1.0, 1.0, 3.0};
    p.theta2 = {0, 0.0, 0.0, 10.0};
    p.oracle = ProblemDef::Oracle::isentropic;
    reg.push_back(p);
  }
  {
    ProblemDef p;
    p.name = "sod1d";
    p.description = "Sod shock tube (T=0.16)";
    p.system = SystemKind::euler1d;
    p.mesh = {MeshRecipe::Kind::interval, -0.5, 0.5, 0, 1, 400};
    p.t_final = 0.16;
    p.ic = [](double x, double) {
      return x < 0.0 ? const_prim(1, 0, 0, 1) : const_prim(0.125, 0, 0, 0.1);
    };
    p.bcs["left"] = {BCKind::transmissive, {}};
    p.bcs["right"] = {BCKind::transmissive, {}};
    p.theta1 = {0, 1.0, 1.0, 3.0};
    p.theta2 = {0, 0.0, 0.0, 10.0};
    p.oracle = ProblemDef::Oracle::riemann;
    reg.push_back(p);
  }
  {
    ProblemDef p;
    p.name = "woodward_colella";
    p.description = "Woodward-Colella interacting blast waves (T=0.038)";
    p.system = SystemKind::euler1d;
    p.mesh = {MeshRecipe::Kind::interval, 0.0, 1.0, 0, 1, 400};
    p.t_final = 0.038;
    p.ic = [](double x, double) {
      if (x <= 0.1) return const_prim(1, 0, 0, 1e3);
      if (x < 0.9) return const_prim(1, 0, 0, 1e-2);
      return const_prim(1, 0, 0, 1e2);
    };
    p.bcs["left"] = {BCKind::wall, {}};
    p.bcs["right"] = {BCKind::wall, {}};
    p.theta1 = {0, 1.0, 1.0, 3.0};
    p.theta2 = {0, 0.0, 0.0, 10.0};
    reg.push_back(p);
  }
  {
    ProblemDef p;
    p.name = "shu_osher";
    p.description = "Shu-Osher shock/entropy-wave interaction (T=1.8)";
    p.system = SystemKind::euler1d;
    p.mesh = {MeshRecipe::Kind::interval, -5.0, 5.0, 0, 1, 400};
    p.t_final = 1.8;
    p.ic = [](double x, double) {
      if (x <= -4.0) return const_prim(3.857143, 2.629369, 0, 10.333333);
      return const_prim(1.0 + 0.2 * std::sin(5.0 * x), 0, 0, 1.0);
    };
    p.bcs["left"] = {BCKind::transmissive, {}};
    p.bcs["right"] = {BCKind::transmissive, {}};
    p.theta1 = {0, 1.0, 1.0, 3.0};
    p.theta2 = {0, 0.0, 0.0, 10.0};
    reg.push_back(p);
  }
  {
    ProblemDef p;
    p.name = "vortex2d";
    p.description = "stationary isentropic vortex on a disk of radius 10 (T=10)";
    p.system = SystemKind::euler2d;
    p.mesh = {MeshRecipe::Kind::disk};
    p.mesh.radius = 10.0;
    p.mesh.n_theta = 32;
    p.mesh.n_rings = 10;
    p.t_final = 10.0;
    p.ic = [](double x, double y) { return vortex_prim(x, y); };
    p.bcs["farfield"] = {BCKind::inflow,
                         [](double, double, double) { return const_prim(1, 0, 0, 1); }};
    p.theta1 = {0, 0.1, 0.01, 0.001};
    p.oracle = ProblemDef::Oracle::vortex;
    reg.push_back(p);
  }
  {
    ProblemDef p;
    p.name = "sod2d";
    p.description = "cylindrical Sod problem on [-1,1]^2 (T=0.25)";
    p.system = SystemKind::euler2d;
    p.mesh = {MeshRecipe::Kind::rect, -1.0, 1.0, -1.0, 1.0};
    p.mesh.nx = p.mesh.ny = 42;
    p.t_final = 0.25;
    p.ic = [](double x, double y) {
      return std::hypot(x, y) <= 0.5 ? const_prim(1, 0, 0, 1) : const_prim(0.125, 0, 0, 0.1);
    };
    for (const char* tag : {"left", "right", "bottom", "top"})
      p.bcs[tag] = {BCKind::transmissive, {}};
    p.theta1 = {0, 0.1, 0.01, 0.001};
    reg.push_back(p);
  }
  {
    ProblemDef p;
    p.name = "step2d";
    p.description = "Mach 3 channel with a forward-facing step (T=4)";
    p.system = SystemKind::euler2d;
    p.mesh = {MeshRecipe::Kind::step};
    p.mesh.nx = 70;
    p.mesh.ny = 25;
    p.t_final = 4.0;
    p.ic = [](double, double) { return const_prim(1.4, 3.0, 0.0, 1.0); };
    p.bcs["inflow"] = {BCKind::inflow,
                       [](double, double, double) { return const_prim(1.4, 3, 0, 1); }};
    p.bcs["outflow"] = {BCKind::transmissive, {}};
    p.bcs["wall"] = {BCKind::wall, {}};
    p.theta1 = {0, 0.1, 0.3, 0.05};
    reg.push_back(p);
  }
  {
    ProblemDef p;
    p.name = "dmr2d";
    p.description = "double Mach reflection, Mach 10 shock on a 30-degree ramp (T=0.2)";
    p.system = SystemKind::euler2d;
    p.mesh = {MeshRecipe::Kind::dmr};
    p.mesh.nx = 100;
    p.mesh.ny = 25;
    p.t_final = 0.2;
    p.ic = [](double x, double y) { return x < dmr_shock_x(y, 0.0) ? kDmrPost : kDmrPre; };
    p.bcs["inflow"] = {BCKind::inflow, [](double, double, double) { return kDmrPost; }};
    p.bcs["outflow"] = {BCKind::transmissive, {}};
    p.bcs["wall"] = {BCKind::wall, {}};
    p.bcs["top"] = {BCKind::inflow, [](double x, double, double t) {
                      return x < dmr_shock_x(1.0, t) ? kDmrPost : kDmrPre;
                    }};
    p.theta1 = {0, 0.1, 0.01, 0.001};
    reg.push_back(p);
  }
  return reg;
}

}  // namespace

const std::vector<ProblemDef>& problem_registry() {
  static const std::vector<ProblemDef> reg = build_registry();
  return reg;
}

const ProblemDef& find_problem(const std::string& name) {
  for (const auto& p : problem_registry())
    if (p.name == name) return p;
  throw ConfigError("unknown problem: " + name);
}

}  // namespace rd
