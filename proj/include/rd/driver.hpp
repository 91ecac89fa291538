#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "rd/dec.hpp"
#include "rd/exact_riemann.hpp"
#include "rd/io.hpp"
#include "rd/problems.hpp"

namespace rd {

struct RunConfig {
  std::string problem;
  int degree = 1;
  int cells = 0;  // 1D override
  int nx = 0, ny = 0;
  std::string mesh_file;
  double cfl = 0.1;
  int M = 0, R = 0;  // 0: per-degree problem default
  double theta1 = NAN, theta2 = NAN;
  double t_final = NAN;
  std::string out_dir;
  int output_every = 0;
  std::string limiter = "characteristic";  // or "scalar"
  std::string lxf = "subcell";             // or "classic"

  void apply(const std::string& key, const std::string& value);
  void validate() const;
};

/// key=value file, one entry per line, '#' comments. Flags override the file.
void apply_config_file(RunConfig& rc, const std::string& path);

struct RunSummary {
  std::string problem;
  int degree = 1;
  long steps = 0;
  double t = 0.0;
  bool failed = false;
  std::string error;
  double min_rho = 0.0, min_p = 0.0, max_rho = 0.0;
  std::vector<double> initial_totals, final_totals;
  double conservation_drift = 0.0;  // max relative component drift
  double contraction_nu = 0.0;
  bool contraction_monotone = true;
  std::vector<std::string> var_names;
  std::vector<double> l1_errors;  // vs the problem's oracle, per variable
  long n_elements = 0, n_dofs = 0;
  double h = 0.0;  // representative mesh size (max element edge)
  // final solution sampled at the dof nodes (primitive variables)
  std::vector<std::array<double, 2>> points;
  std::vector<std::vector<double>> values;  // one vector per var_name
};

RunSummary run_simulation(const RunConfig& rc);

template <class Sys>
std::array<double, Sys::ncomp> primitive_of(const Sys& sys, const typename Sys::State& U) {
  auto p = sys.prim_from_cons(U);
  std::array<double, Sys::ncomp> out{};
  for (int c = 0; c < Sys::ncomp; ++c) out[c] = p[c];
  return out;
}

/// L1 norm of (U_h - exact) in primitive variables, one entry per variable,
/// by element quadrature of exactness 2*degree + 2. `exact` returns primitives
/// padded to 4 entries in the (rho, u, v, p) layout (wave: (u, v, ., .)).
template <class Sys>
std::vector<double> l1_error(const Discretization<Sys>& disc,
                             const std::vector<typename Sys::State>& U,
                             const std::function<std::array<double, 4>(double, double)>& exact) {
  constexpr int NC = Sys::ncomp;
  const int n = disc.nloc();
  const auto rule = volume_quadrature(Sys::dim, 2 * disc.dm->degree + 2);
  std::vector<double> tab(static_cast<size_t>(rule.size()) * n);
  for (int q = 0; q < rule.size(); ++q)
    bernstein_eval(Sys::dim, disc.dm->degree, rule.pts[q].data(),
                   &tab[static_cast<size_t>(q) * n]);

  std::vector<double> err(NC, 0.0);
  for (int e = 0; e < disc.mesh->n_elems(); ++e) {
    const int* gd = disc.dm->dofs(e);
    const auto& el = disc.mesh->elems[e];
    for (int q = 0; q < rule.size(); ++q) {
      typename Sys::State Uq{};
      const double* phi = &tab[static_cast<size_t>(q) * n];
      for (int j = 0; j < n; ++j) axpy(phi[j], U[gd[j]], Uq);
      double x = 0, y = 0;
      for (int k = 0; k <= Sys::dim; ++k) {
        x += rule.pts[q][k] * disc.mesh->verts[el[k]][0];
        y += rule.pts[q][k] * disc.mesh->verts[el[k]][1];
      }
      const auto ph = primitive_of(disc.sys, Uq);
      const auto pe4 = exact(x, y);
      std::array<double, NC> pe{};
      if constexpr (NC == 2) {
        pe = {pe4[0], pe4[1]};
      } else if constexpr (NC == 3) {
        pe = {pe4[0], pe4[1], pe4[3]};
      } else {
        pe = pe4;
      }
      const double w = disc.geom[e].jac * rule.w[q];
      for (int c = 0; c < NC; ++c) err[c] += w * std::abs(ph[c] - pe[c]);
    }
  }
  return err;
}

struct ConvergenceRow {
  int resolution = 0;  // cells (1D) or elements (2D)
  double h = 0.0;
  std::vector<double> err;
  std::vector<double> slope;  // vs previous row
  bool failed = false;
};

struct ConvergenceReport {
  std::string problem;
  int degree = 0;
  std::vector<std::string> vars;
  std::vector<ConvergenceRow> rows;          // sorted by decreasing h
  std::vector<double> least_squares_slope;   // per variable
};

/// Runs the problem on a sequence of 1D cell counts (or 2D mesh scalings) and
/// tabulates L1 errors and consecutive slopes.
ConvergenceReport convergence_study(const RunConfig& base, const std::vector<int>& resolutions);

std::string report_to_string(const ConvergenceReport& rep);
void write_report_csv(const ConvergenceReport& rep, const std::string& path);

}  // namespace rd
