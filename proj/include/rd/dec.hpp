#pragma once

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

#include "rd/assembly.hpp"
#include "rd/limiter.hpp"

namespace rd {

inline int num_threads() {
  static int n = [] {
    if (const char* s = std::getenv("RD_NUM_THREADS")) return std::max(1, std::atoi(s));
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
  }();
  return n;
}

/// Static-partition element loop. Workers write to disjoint slots only, and
/// every reduction happens afterwards in index order, so results do not
/// depend on the thread count. The first worker exception is rethrown.
template <class F>
void parallel_for(int n, F&& f) {
  const int nt = std::min(num_threads(), std::max(1, n));
  if (nt <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  std::mutex mx;
  std::exception_ptr eptr;
  for (int t = 0; t < nt; ++t) {
    const int lo = static_cast<int>(static_cast<long>(n) * t / nt);
    const int hi = static_cast<int>(static_cast<long>(n) * (t + 1) / nt);
    pool.emplace_back([lo, hi, &f, &mx, &eptr] {
      try {
        for (int i = lo; i < hi; ++i) f(i);
      } catch (...) {
        std::lock_guard<std::mutex> g(mx);
        if (!eptr) eptr = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (eptr) std::rethrow_exception(eptr);
}

// ---------------------------------------------------------------------------

/// Sub-timestep fractions xi_m and the exact time-integration weights
/// theta_{m,l} = int_0^{xi_m} ell_l(s) ds for the Lagrange basis ell_l on the
/// (equispaced) xi nodes.
struct DeCSchedule {
  int M = 1, R = 1;
  std::vector<double> xi;     // M+1 entries, xi_0 = 0, xi_M = 1
  std::vector<double> theta;  // rows m=1..M, each M+1 wide

  double th(int m, int l) const { return theta[static_cast<size_t>(m - 1) * (M + 1) + l]; }
};

inline DeCSchedule make_schedule(int M, int R) {
  if (M < 1 || R < 1) throw ConfigError("schedule needs M >= 1, R >= 1");
  DeCSchedule s;
  s.M = M;
  s.R = R;
  s.xi.resize(M + 1);
  for (int m = 0; m <= M; ++m) s.xi[m] = static_cast<double>(m) / M;
  s.theta.assign(static_cast<size_t>(M) * (M + 1), 0.0);
  for (int l = 0; l <= M; ++l) {
    // monomial coefficients of ell_l
    std::vector<double> c{1.0};
    for (int j = 0; j <= M; ++j) {
      if (j == l) continue;
      std::vector<double> nc(c.size() + 1, 0.0);
      const double d = s.xi[l] - s.xi[j];
      for (size_t k = 0; k < c.size(); ++k) {
        nc[k] += c[k] * (-s.xi[j]) / d;
        nc[k + 1] += c[k] / d;
      }
      c = std::move(nc);
    }
    for (int m = 1; m <= M; ++m) {
      double v = 0.0, p = s.xi[m];
      for (size_t k = 0; k < c.size(); ++k) {
        v += c[k] * p / (k + 1.0);
        p *= s.xi[m];
      }
      s.theta[static_cast<size_t>(m - 1) * (M + 1) + l] = v;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------

struct StepDiag {
  std::vector<double> correction_diff;  // ||U^{(r+1)} - U^{(r)}||_1, r = 0..R-1
  double min_rho = 0.0, min_p = 0.0, max_rho = 0.0;
  bool retried = false;
};

struct RunDiagnostics {
  long steps = 0;
  double t = 0.0;
  double min_rho = 1e300, min_p = 1e300, max_rho = -1e300;
  bool failed = false;
  std::string error;
  std::vector<double> initial_totals, final_totals;
  // DeC contraction across the whole run: worst ratio of successive correction
  // increments (r >= 2), and whether they decreased monotonically on every step
  double contraction_nu = 0.0;
  bool contraction_monotone = true;
};

template <class Sys>
class Solver {
 public:
  using State = typename Sys::State;
  using Field = std::vector<State>;
  static constexpr int NC = Sys::ncomp;

  Discretization<Sys> disc;
  BCSet<Sys> bcs;
  DeCSchedule sched;
  double cfl = 0.1;
  LxFVariant variant = LxFVariant::subcell;
  LimiterConfig limiter;
  StabilizationConfig stab;

  Solver(const Mesh& mesh, const DofMap& dm, Sys sys, DeCSchedule s)
      : disc(mesh, dm, sys), sched(std::move(s)) {
    const int M = sched.M;
    const long nd = disc.n_dofs();
    stages_.assign(M + 1, Field(nd));
    new_stage_.assign(M, Field(nd));
    elemres_.assign(M + 1, {});
    extra_.assign(M + 1, Field(nd));
    for (auto& er : elemres_)
      er.assign(static_cast<size_t>(disc.mesh->n_elems()) * disc.nloc(), State{});
    minp_.assign(M + 1, std::vector<double>(disc.mesh->n_elems(), 1e300));
    scratch_.assign(static_cast<size_t>(disc.mesh->n_elems()) * disc.nloc(), State{});
  }

  double compute_dt(const Field& U) const {
    const int n = disc.nloc();
    double dt = 1e300;
    State coef[MAX_LOC], V[MAX_LOC];
    for (int e = 0; e < disc.mesh->n_elems(); ++e) {
      const int* gd = disc.dm->dofs(e);
      for (int i = 0; i < n; ++i) coef[i] = U[gd[i]];
      disc.nodal_values(e, coef, V);
      for (int i = 0; i < n; ++i) {
        const double spd = disc.max_speed_checked(V[i], e);
        if (spd > 0.0) dt = std::min(dt, disc.dxsig[gd[i]] / spd);
      }
    }
    return cfl * dt;
  }

  /// One DeC time step. Throws InvalidStateError if the state goes bad even
  /// after one dt/2 retry.
  StepDiag advance_step(Field& U, double& dt, double t) {
    Field backup = U;
    try {
      return try_step(U, dt, t);
    } catch (const InvalidStateError&) {
      U = backup;
      dt *= 0.5;
      StepDiag d = try_step(U, dt, t);  // second failure propagates
      d.retried = true;
      return d;
    }
  }

  RunDiagnostics run(Field& U, double t_final, double t0 = 0.0,
                     const std::function<void(long, double, const Field&)>& on_step = {}) {
    RunDiagnostics rd;
    rd.t = t0;
    rd.initial_totals = conserved_totals(U);
    while (rd.t < t_final - 1e-14 * std::max(1.0, std::abs(t_final))) {
      double dt;
      try {
        dt = compute_dt(U);
        if (rd.t + dt > t_final) dt = t_final - rd.t;
        StepDiag sd = advance_step(U, dt, rd.t);
        rd.min_rho = std::min(rd.min_rho, sd.min_rho);
        rd.min_p = std::min(rd.min_p, sd.min_p);
        rd.max_rho = std::max(rd.max_rho, sd.max_rho);
        track_contraction(sd, rd);
      } catch (const std::exception& err) {
        rd.failed = true;
        rd.error = err.what();
        break;
      }
      rd.t += dt;
      ++rd.steps;
      if (on_step) on_step(rd.steps, rd.t, U);
    }
    rd.final_totals = conserved_totals(U);
    return rd;
  }

  std::vector<double> conserved_totals(const Field& U) const {
    std::vector<double> tot(NC, 0.0);
    for (long i = 0; i < disc.n_dofs(); ++i)
      for (int c = 0; c < NC; ++c) tot[c] += disc.csig[i] * U[i][c];
    return tot;
  }

  /// Interpolating initial data: nodal point values -> Bernstein coefficients.
  template <class IC>
  void set_initial_condition(Field& U, IC&& prim_at) const {
    U.assign(disc.n_dofs(), State{});
    const int n = disc.nloc();
    State vals[MAX_LOC], coef[MAX_LOC];
    for (int e = 0; e < disc.mesh->n_elems(); ++e) {
      const int* gd = disc.dm->dofs(e);
      for (int i = 0; i < n; ++i) {
        const auto& x = disc.dm->coords[gd[i]];
        vals[i] = prim_at(x[0], x[1]);
      }
      disc.coefficients_from_values(vals, coef);
      for (int i = 0; i < n; ++i) U[gd[i]] = coef[i];
    }
  }

  /// Row m of the L2 operator for the current stages (mass term against the
  /// pinned m=0 stage plus theta-weighted spatial residuals), element-local
  /// and already limited; jump and boundary contributions are added by the
  /// caller from the `extra` arrays.
  void l2_row_element(int e, int m, State* out) const {
    const int n = disc.nloc();
    const int* gd = disc.dm->dofs(e);
    const double jac = disc.geom[e].jac;
    State ubar{};
    for (int i = 0; i < n; ++i) {
      State v{};
      for (int j = 0; j < n; ++j) {
        const double mij = jac * disc.bs.mass_ref[i][j];
        const State& d1 = stages_[m][gd[j]];
        const State& d0 = stages_[0][gd[j]];
        for (int c = 0; c < NC; ++c) v[c] += mij * (d1[c] - d0[c]);
      }
      for (int l = 0; l <= sched.M; ++l) {
        const double w = dt_ * sched.th(m, l);
        if (w == 0.0) continue;
        axpy(w, elemres_[l][static_cast<size_t>(e) * n + i], v);
      }
      out[i] = v;
      axpy(1.0 / n, stages_[m][gd[i]], ubar);
    }
    if (limiter.mode == LimiterConfig::Mode::none) return;
    // characteristic (or scalar-fallback) limiting of the element residual
    bool scalar = limiter.mode == LimiterConfig::Mode::scalar;
    if constexpr (Sys::has_pressure) {
      if (!scalar && limiter.pressure_floor > 0.0 &&
          minp_[m][e] < limiter.pressure_floor)
        scalar = true;
    }
    if (!scalar) scalar = !limit_characteristic(disc.sys, ubar, n, out, limiter.blending);
    if (scalar) limit_scalar<NC>(n, out);
  }

  const std::vector<Field>& stages() const { return stages_; }

 private:
  std::vector<Field> stages_;      // m = 0..M
  std::vector<Field> new_stage_;   // m = 1..M (offset by one)
  std::vector<std::vector<State>> elemres_;  // per stage: n_elems * nloc
  std::vector<Field> extra_;       // per stage: jump + boundary, per dof
  std::vector<std::vector<double>> minp_;    // per stage: min nodal pressure per element
  double dt_ = 0.0;

  void eval_spatial(int stage, double t_stage) {
    auto& er = elemres_[stage];
    const auto& U = stages_[stage];
    const int n = disc.nloc();
    parallel_for(disc.mesh->n_elems(), [&](int e) {
      State coef[MAX_LOC];
      const int* gd = disc.dm->dofs(e);
      for (int i = 0; i < n; ++i) coef[i] = U[gd[i]];
      disc.spatial_residual(e, coef, &er[static_cast<size_t>(e) * n], variant);
      if constexpr (Sys::has_pressure) {
        State V[MAX_LOC];
        disc.nodal_values(e, coef, V);
        double mp = 1e300;
        for (int i = 0; i < n; ++i) mp = std::min(mp, disc.sys.pressure(V[i]));
        minp_[stage][e] = mp;
      }
    });

    auto& ex = extra_[stage];
    std::fill(ex.begin(), ex.end(), State{});
    disc.assemble_jump(U, stab.theta1, stab.theta2, ex);
    disc.assemble_boundary(U, bcs, t_stage, ex);
  }

  StepDiag try_step(Field& U, double dt, double t) {
    const int M = sched.M;
    const int n = disc.nloc();
    dt_ = dt;
    for (int m = 0; m <= M; ++m) stages_[m] = U;
    eval_spatial(0, t);
    for (int m = 1; m <= M; ++m) {
      elemres_[m] = elemres_[0];
      extra_[m] = extra_[0];
      minp_[m] = minp_[0];
    }

    StepDiag diag;
    for (int r = 0; r < sched.R; ++r) {
      if (r > 0)
        for (int m = 1; m <= M; ++m) eval_spatial(m, t + sched.xi[m] * dt);

      for (int m = 1; m <= M; ++m) {
        auto& nu = new_stage_[m - 1];
        std::fill(nu.begin(), nu.end(), State{});
        parallel_for(disc.mesh->n_elems(), [&](int e) {
          State out[MAX_LOC];
          l2_row_element(e, m, out);
          for (int i = 0; i < n; ++i)
            elemres_scratch(e, i) = out[i];  // staged for an ordered gather
        });
        // ordered gather: dof order, element-major accumulation
        for (int e = 0; e < disc.mesh->n_elems(); ++e) {
          const int* gd = disc.dm->dofs(e);
          for (int i = 0; i < n; ++i) axpy(1.0, elemres_scratch(e, i), nu[gd[i]]);
        }
        const auto& ex = extra_;
        for (long i = 0; i < disc.n_dofs(); ++i) {
          State l2 = nu[i];
          for (int l = 0; l <= M; ++l) {
            const double w = dt * sched.th(m, l);
            if (w != 0.0) axpy(w, ex[l][i], l2);
          }
          const double inv = 1.0 / disc.csig[i];
          for (int c = 0; c < NC; ++c) l2[c] = stages_[m][i][c] - inv * l2[c];
          nu[i] = l2;
        }
      }
      double diff = 0.0;
      for (int m = 1; m <= M; ++m) {
        const auto& nu = new_stage_[m - 1];
        for (long i = 0; i < disc.n_dofs(); ++i) {
          double s = 0.0;
          for (int c = 0; c < NC; ++c) s += std::abs(nu[i][c] - stages_[m][i][c]);
          diff += disc.csig[i] * s;
        }
        stages_[m] = nu;
      }
      diag.correction_diff.push_back(diff);
    }

    finalize_step(diag);
    U = stages_[M];
    return diag;
  }

  // per-element scratch for the limited row residuals
  State& elemres_scratch(int e, int i) { return scratch_[static_cast<size_t>(e) * disc.nloc() + i]; }

  void finalize_step(StepDiag& diag) {
    const int n = disc.nloc();
    const auto& U = stages_[sched.M];
    double min_rho = 1e300, min_p = 1e300, max_rho = -1e300;
    State coef[MAX_LOC], V[MAX_LOC];
    for (int e = 0; e < disc.mesh->n_elems(); ++e) {
      const int* gd = disc.dm->dofs(e);
      for (int i = 0; i < n; ++i) coef[i] = U[gd[i]];
      disc.nodal_values(e, coef, V);
      for (int i = 0; i < n; ++i) {
        if (!finite(V[i]))
          throw InvalidStateError("non-finite state after step in element " + std::to_string(e),
                                  e);
        if constexpr (Sys::has_pressure) {
          min_rho = std::min(min_rho, V[i][0]);
          max_rho = std::max(max_rho, V[i][0]);
          min_p = std::min(min_p, disc.sys.pressure(V[i]));
        }
      }
    }
    diag.min_rho = min_rho;
    diag.min_p = min_p;
    diag.max_rho = max_rho;
  }

  void track_contraction(const StepDiag& sd, RunDiagnostics& rd) const {
    const auto& d = sd.correction_diff;
    const double floor_ = 1e-14 * (std::abs(d.empty() ? 0.0 : d[0]) + 1e-300);
    for (size_t r = 2; r < d.size(); ++r) {
      if (d[r - 1] <= floor_ || d[r] <= floor_) break;  // converged to roundoff
      const double ratio = d[r] / d[r - 1];
      rd.contraction_nu = std::max(rd.contraction_nu, ratio);
      if (ratio >= 1.0) rd.contraction_monotone = false;
    }
  }

  std::vector<State> scratch_;  // per-element row residuals before the gather
};

}  // namespace rd
