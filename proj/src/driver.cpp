#include "rd/driver.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace rd {

void RunConfig::apply(const std::string& key, const std::string& value) {
  try {
    if (key == "problem")
      problem = value;
    else if (key == "degree")
      degree = std::stoi(value);
    else if (key == "cells")
      cells = std::stoi(value);
    else if (key == "nx")
      nx = std::stoi(value);
    else if (key == "ny")
      ny = std::stoi(value);
    else if (key == "mesh")
      mesh_file = value;
    else if (key == "cfl")
      cfl = std::stod(value);
    else if (key == "M")
      M = std::stoi(value);
    else if (key == "R")
      R = std::stoi(value);
    else if (key == "theta1")
      theta1 = std::stod(value);
    else if (key == "theta2")
      theta2 = std::stod(value);
    else if (key == "tfinal")
      t_final = std::stod(value);
    else if (key == "out")
      out_dir = value;
    else if (key == "every")
      output_every = std::stoi(value);
    else if (key == "limiter")
      limiter = value;
    else if (key == "lxf")
      lxf = value;
    else
      throw ConfigError("unknown config key: " + key);
  } catch (const std::invalid_argument&) {
    throw ConfigError("bad value for " + key + ": " + value);
  }
}

void RunConfig::validate() const {
  if (degree < 1 || degree > 3) throw ConfigError("degree must be 1, 2 or 3");
  if (!(cfl > 0)) throw ConfigError("CFL must be positive");
  if (limiter != "characteristic" && limiter != "scalar" && limiter != "none")
    throw ConfigError("limiter must be 'characteristic', 'scalar' or 'none'");
  if (lxf != "subcell" && lxf != "classic") throw ConfigError("lxf must be 'subcell' or 'classic'");
  if (!mesh_file.empty() && !std::filesystem::exists(mesh_file))
    throw ConfigError("mesh file does not exist: " + mesh_file);
}

void apply_config_file(RunConfig& rc, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto z = s.find_last_not_of(" \t\r");
      return (a == std::string::npos) ? std::string{} : s.substr(a, z - a + 1);
    };
    rc.apply(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

namespace {

MeshRecipe apply_mesh_overrides(const ProblemDef& pd, const RunConfig& rc) {
  MeshRecipe r = pd.mesh;
  if (!rc.mesh_file.empty()) {
    r.kind = MeshRecipe::Kind::file;
    r.path = rc.mesh_file;
    return r;
  }
  if (rc.cells > 0) r.n = rc.cells;
  if (rc.nx > 0) {
    if (r.kind == MeshRecipe::Kind::disk)
      r.n_theta = rc.nx;
    else
      r.nx = rc.nx;
  }
  if (rc.ny > 0) {
    if (r.kind == MeshRecipe::Kind::disk)
      r.n_rings = rc.ny;
    else
      r.ny = rc.ny;
  }
  return r;
}

template <class Sys>
std::vector<std::string> var_names() {
  if constexpr (Sys::ncomp == 2) return {"u", "v"};
  if constexpr (Sys::ncomp == 3) return {"rho", "u", "p"};
  return {"rho", "u", "v", "p"};
}

template <class Sys>
typename Sys::State prim_to_state(const Sys& sys, const std::array<double, 4>& w) {
  if constexpr (Sys::ncomp == 2) {
    return sys.cons_from_prim({w[0], w[1]});
  } else if constexpr (Sys::ncomp == 3) {
    return sys.cons_from_prim({w[0], w[1], w[3]});
  } else {
    return sys.cons_from_prim(w);
  }
}

/// Exact primitive solution of the problem's oracle at time t, padded to 4.
std::array<double, 4> oracle_prim(const ProblemDef& pd, double x, double y, double t) {
  switch (pd.oracle) {
    case ProblemDef::Oracle::wave: {
      auto w = exact_wave1d(x, t);
      return {w[0], w[1], 0, 0};
    }
    case ProblemDef::Oracle::isentropic: {
      auto w = exact_isentropic1d(x, t);
      return {w[0], w[1], 0, w[2]};
    }
    case ProblemDef::Oracle::vortex:
      return vortex_prim(x, y, pd.gamma);
    default:
      break;
  }
  throw ConfigError("problem has no exact-solution oracle");
}

template <class Sys>
RunSummary run_impl(const ProblemDef& pd, const RunConfig& rc, const Mesh& mesh, Sys sys) {
  RunSummary out;
  out.problem = pd.name;
  out.degree = rc.degree;

  const DofMap dm = build_dof_map(mesh, rc.degree, pd.periodic);
  const int M = rc.M > 0 ? rc.M : pd.M[rc.degree];
  const int R = rc.R > 0 ? rc.R : pd.R[rc.degree];
  Solver<Sys> solver(mesh, dm, sys, make_schedule(M, R));
  solver.cfl = rc.cfl;
  solver.variant = (rc.lxf == "classic") ? LxFVariant::classic : LxFVariant::subcell;
  solver.limiter.mode = (rc.limiter == "scalar")   ? LimiterConfig::Mode::scalar
                        : (rc.limiter == "none")   ? LimiterConfig::Mode::none
                                                   : LimiterConfig::Mode::characteristic;
  solver.stab.theta1 = std::isnan(rc.theta1) ? pd.theta1[rc.degree] : rc.theta1;
  solver.stab.theta2 = std::isnan(rc.theta2) ? pd.theta2[rc.degree] : rc.theta2;

  solver.bcs.resize(mesh.tags.size());
  for (size_t tid = 0; tid < mesh.tags.size(); ++tid) {
    const auto it = pd.bcs.find(mesh.tags[tid]);
    if (it == pd.bcs.end())
      throw ConfigError("no boundary condition for tag '" + mesh.tags[tid] + "'");
    BoundaryCondition<Sys> bc;
    bc.kind = it->second.kind;
    if (bc.kind == BCKind::inflow) {
      auto prim = it->second.prim;
      const Sys s = sys;
      bc.state = [prim, s](double x, double y, double t) {
        return prim_to_state(s, prim(x, y, t));
      };
    }
    solver.bcs[tid] = bc;
  }

  typename Solver<Sys>::Field U;
  solver.set_initial_condition(U, [&](double x, double y) {
    return prim_to_state(sys, pd.ic(x, y));
  });
  if constexpr (Sys::has_pressure) {
    double pmax = 0.0;
    for (const auto& x : dm.coords) pmax = std::max(pmax, pd.ic(x[0], x[1])[3]);
    solver.limiter.pressure_floor = 1e-8 * pmax;
  }

  const double T = std::isnan(rc.t_final) ? pd.t_final : rc.t_final;

  out.var_names = var_names<Sys>();
  std::ofstream diag;
  if (!rc.out_dir.empty()) {
    std::filesystem::create_directories(rc.out_dir);
    diag.open(rc.out_dir + "/diagnostics.csv");
    diag << "step,t";
    for (int c = 0; c < Sys::ncomp; ++c) diag << ",total_" << c;
    diag << ",min_rho,min_p\n";
  }

  auto nodal_table = [&](const typename Solver<Sys>::Field& F) {
    std::vector<std::vector<double>> cols(Sys::ncomp, std::vector<double>(dm.n_dofs, 0.0));
    typename Sys::State coef[MAX_LOC], V[MAX_LOC];
    for (int e = 0; e < mesh.n_elems(); ++e) {
      const int* gd = dm.dofs(e);
      for (int i = 0; i < dm.nloc; ++i) coef[i] = F[gd[i]];
      solver.disc.nodal_values(e, coef, V);
      for (int i = 0; i < dm.nloc; ++i) {
        std::array<double, Sys::ncomp> p{};
        if (solver.disc.sys.admissible(V[i]))
          p = primitive_of(solver.disc.sys, V[i]);
        else
          for (int c = 0; c < Sys::ncomp; ++c) p[c] = V[i][c];  // raw, for failure dumps
        for (int c = 0; c < Sys::ncomp; ++c) cols[c][gd[i]] = p[c];
      }
    }
    return cols;
  };

  auto write_state = [&](const std::string& stem, const typename Solver<Sys>::Field& F) {
    if (rc.out_dir.empty()) return;
    auto cols = nodal_table(F);
    if (mesh.dim == 1)
      write_solution_csv(rc.out_dir + "/" + stem + ".csv", dm.coords, out.var_names, cols);
    else
      write_solution_vtk(rc.out_dir + "/" + stem + ".vtk", mesh, dm, dm.coords, out.var_names,
                         cols);
  };

  auto on_step = [&](long step, double t, const typename Solver<Sys>::Field& F) {
    if (diag.is_open()) {
      auto tot = solver.conserved_totals(F);
      diag << step << "," << format_double(t);
      for (double v : tot) diag << "," << format_double(v);
      diag << "\n";
    }
    if (rc.output_every > 0 && step % rc.output_every == 0) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "solution_%06ld", step);
      write_state(buf, F);
    }
  };

  auto rd = solver.run(U, T, 0.0, on_step);
  out.steps = rd.steps;
  out.t = rd.t;
  out.failed = rd.failed;
  out.error = rd.error;
  out.min_rho = rd.min_rho;
  out.min_p = rd.min_p;
  out.max_rho = rd.max_rho;
  out.initial_totals = rd.initial_totals;
  out.final_totals = rd.final_totals;
  out.contraction_nu = rd.contraction_nu;
  out.contraction_monotone = rd.contraction_monotone;
  out.n_elements = mesh.n_elems();
  out.n_dofs = dm.n_dofs;
  for (int e = 0; e < mesh.n_elems(); ++e) out.h = std::max(out.h, mesh.elem_longest_edge(e));

  double denom = 0.0;
  for (double v : rd.initial_totals) denom = std::max(denom, std::abs(v));
  for (size_t c = 0; c < rd.initial_totals.size(); ++c) {
    const double d = std::abs(rd.final_totals[c] - rd.initial_totals[c]) /
                     std::max(std::abs(rd.initial_totals[c]), denom);
    out.conservation_drift = std::max(out.conservation_drift, d);
  }

  out.points.assign(dm.coords.begin(), dm.coords.end());
  out.values = nodal_table(U);
  write_state("solution_final", U);

  if (!out.failed && pd.oracle != ProblemDef::Oracle::none) {
    if (pd.oracle == ProblemDef::Oracle::riemann) {
      // self-similar solution around the diaphragm at x = 0
      auto wl = pd.ic(mesh.verts.front()[0], 0.0);
      auto wr = pd.ic(mesh.verts.back()[0], 0.0);
      ExactRiemann er({wl[0], wl[1], wl[3]}, {wr[0], wr[1], wr[3]}, pd.gamma);
      const double t = out.t;
      out.l1_errors = l1_error(solver.disc, U, [&](double x, double) {
        auto w = t > 0 ? er.sample(x / t) : std::array<double, 3>{0, 0, 0};
        return std::array<double, 4>{w[0], w[1], 0, w[2]};
      });
    } else {
      const double t = out.t;
      out.l1_errors = l1_error(solver.disc, U,
                                  [&](double x, double y) { return oracle_prim(pd, x, y, t); });
    }
  }
  return out;
}

}  // namespace

RunSummary run_simulation(const RunConfig& rc) {
  rc.validate();
  const ProblemDef& pd = find_problem(rc.problem);
  const Mesh mesh = build_mesh(apply_mesh_overrides(pd, rc));
  switch (pd.system) {
    case SystemKind::euler1d:
      return run_impl(pd, rc, mesh, Euler1D{GasModel{pd.gamma}});
    case SystemKind::euler2d:
      return run_impl(pd, rc, mesh, Euler2D{GasModel{pd.gamma}});
    case SystemKind::wave1d:
      return run_impl(pd, rc, mesh, Wave1D{pd.wave_speed});
  }
  throw ConfigError("unknown system kind");
}

ConvergenceReport convergence_study(const RunConfig& base, const std::vector<int>& resolutions) {
  const ProblemDef& pd = find_problem(base.problem);
  ConvergenceReport rep;
  rep.problem = base.problem;
  rep.degree = base.degree;

  std::vector<ConvergenceRow> rows;
  for (int res : resolutions) {
    RunConfig rc = base;
    if (pd.mesh.kind == MeshRecipe::Kind::interval) {
      rc.cells = res;
    } else {
      rc.nx = res;
      const int ny0 = (pd.mesh.kind == MeshRecipe::Kind::disk) ? pd.mesh.n_rings : pd.mesh.ny;
      const int nx0 = (pd.mesh.kind == MeshRecipe::Kind::disk) ? pd.mesh.n_theta : pd.mesh.nx;
      rc.ny = std::max(1, static_cast<int>(std::lround(static_cast<double>(res) * ny0 / nx0)));
    }
    ConvergenceRow row;
    row.resolution = res;
    try {
      auto s = run_simulation(rc);
      if (s.failed) throw std::runtime_error(s.error);
      rep.vars = s.var_names;
      row.h = s.h;
      row.err = s.l1_errors;
    } catch (const std::exception& e) {
      row.failed = true;
      row.h = 0.0;
    }
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const ConvergenceRow& a, const ConvergenceRow& b) {
    return a.resolution < b.resolution;
  });
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].failed || rows[i - 1].failed) continue;
    rows[i].slope.resize(rows[i].err.size());
    for (size_t v = 0; v < rows[i].err.size(); ++v)
      rows[i].slope[v] = std::log(rows[i - 1].err[v] / rows[i].err[v]) /
                         std::log(rows[i - 1].h / rows[i].h);
  }
  // least-squares slope of log(err) vs log(h)
  if (!rows.empty() && !rows.front().err.empty()) {
    const size_t nv = rows.front().err.size();
    rep.least_squares_slope.assign(nv, 0.0);
    for (size_t v = 0; v < nv; ++v) {
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      int n = 0;
      for (const auto& r : rows) {
        if (r.failed || r.err.size() <= v || r.err[v] <= 0) continue;
        const double x = std::log(r.h), y = std::log(r.err[v]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
      }
      if (n >= 2) rep.least_squares_slope[v] = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
  }
  rep.rows = std::move(rows);
  return rep;
}

std::string report_to_string(const ConvergenceReport& rep) {
  std::ostringstream os;
  os << "# problem=" << rep.problem << " degree=" << rep.degree << "\n";
  os << "cells";
  for (const auto& v : rep.vars) os << "  L1[" << v << "]  slope";
  os << "\n";
  for (const auto& r : rep.rows) {
    os << r.resolution;
    if (r.failed) {
      os << "  FAILED";
    } else {
      for (size_t v = 0; v < r.err.size(); ++v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "  %.6e", r.err[v]);
        os << buf;
        if (v < r.slope.size())
          std::snprintf(buf, sizeof(buf), "  %.2f", r.slope[v]);
        else
          std::snprintf(buf, sizeof(buf), "  -");
        os << buf;
      }
    }
    os << "\n";
  }
  os << "# least-squares order:";
  for (double s : rep.least_squares_slope) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), " %.3f", s);
    os << buf;
  }
  os << "\n";
  return os.str();
}

void write_report_csv(const ConvergenceReport& rep, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << "cells,h";
  for (const auto& v : rep.vars) out << ",l1_" << v << ",slope_" << v;
  out << "\n";
  for (const auto& r : rep.rows) {
    out << r.resolution << "," << format_double(r.h);
    for (size_t v = 0; v < rep.vars.size(); ++v) {
      if (r.failed || v >= r.err.size()) {
        out << ",,";
        continue;
      }
      out << "," << format_double(r.err[v]) << ",";
      if (v < r.slope.size()) out << format_double(r.slope[v]);
    }
    out << "\n";
  }
}

}  // namespace rd
