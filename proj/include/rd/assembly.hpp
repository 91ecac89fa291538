#pragma once

#include <functional>
#include <vector>

#include "rd/basis.hpp"
#include "rd/dofmap.hpp"
#include "rd/mesh.hpp"
#include "rd/physics.hpp"
#include "rd/subcell.hpp"

namespace rd {

enum class BCKind { transmissive, wall, inflow, periodic };

template <class Sys>
struct BoundaryCondition {
  BCKind kind = BCKind::transmissive;
  // prescribed exterior state for inflow/farfield boundaries; may depend on time
  std::function<typename Sys::State(double x, double y, double t)> state;
};

template <class Sys>
using BCSet = std::vector<BoundaryCondition<Sys>>;  // indexed by mesh tag id

enum class LxFVariant { subcell, classic };

/// Per-(mesh, dofmap, system) tabulations and the spatial residual operators.
template <class Sys>
struct Discretization {
  using State = typename Sys::State;
  static constexpr int NC = Sys::ncomp;
  static constexpr int DIM = Sys::dim;

  const Mesh* mesh = nullptr;
  const DofMap* dm = nullptr;
  Sys sys;
  BasisSet bs;
  SubcellRef sc;

  struct ElemGeom {
    double jac;         // measure / reference measure (1D: h, 2D: 2|K|)
    double measure;     // |K|
    double hmax;        // longest edge
    double glam[3][2];  // gradients of the barycentric coordinates
  };
  std::vector<ElemGeom> geom;

  // per element, per sub-cell, per sub-cell vertex: G = |K_i| * grad(hat) (2D only)
  std::vector<double> subg;

  std::vector<double> csig;   // global dual-cell measures |C_sigma|
  std::vector<double> dxsig;  // CFL length scale per dof

  struct EdgePre {
    double h;     // jump length scale
    double meas;  // integration measure (2D: edge length; 1D: 1)
    int left, right;
    int ndof;
    std::array<int, 2 * MAX_LOC> gdof;
    // [q][dof][2]: jumps of grad(phi) and of hess(phi).n across the edge
    std::vector<double> jgrad;
    std::vector<double> jhess;
    int nq;
  };
  std::vector<EdgePre> edges;

  struct FacePre {
    int elem, tag;
    std::array<double, 2> normal;
    int nq;
    std::vector<std::array<double, 2>> xq;
    std::vector<double> wq;   // quadrature weight x face measure
    std::vector<double> phi;  // [q][nloc]
  };
  std::vector<FacePre> faces;

  Discretization(const Mesh& m, const DofMap& d, Sys s)
      : mesh(&m), dm(&d), sys(s), bs(make_basis_set(m.dim, d.degree)),
        sc(make_subcells(m.dim, d.degree)) {
    build_geometry();
    build_measures();
    build_edges();
    build_faces();
  }

  int nloc() const { return dm->nloc; }
  long n_dofs() const { return dm->n_dofs; }

  // -------------------------------------------------------------------------

  /// Point values of U_h at the element's basis nodes.
  void nodal_values(int /*e*/, const State* coef, State* out) const {
    const int n = nloc();
    for (int i = 0; i < n; ++i) {
      State s{};
      for (int j = 0; j < n; ++j) axpy(bs.node_matrix[i][j], coef[j], s);
      out[i] = s;
    }
  }

  /// Bernstein coefficients interpolating prescribed nodal point values.
  void coefficients_from_values(const State* vals, State* coef) const {
    const int n = nloc();
    for (int i = 0; i < n; ++i) {
      State s{};
      for (int j = 0; j < n; ++j) axpy(bs.interp_matrix[i][j], vals[j], s);
      coef[i] = s;
    }
  }

  /// Galerkin flux terms by quadrature:
  ///   int_dK phi F(U_h).n dg - int_K grad(phi).F(U_h) dx.
  void galerkin_flux_residual(int e, const State* coef, State* res) const {
    const int n = nloc();
    const auto& g = geom[e];
    for (int i = 0; i < n; ++i) res[i] = State{};

    State F[2];
    for (int q = 0; q < bs.vol.size(); ++q) {
      State U{};
      for (int j = 0; j < n; ++j) axpy(bs.vval(q, j), coef[j], U);
      flux_checked(U, F, e);
      const double w = g.jac * bs.vol.w[q];
      for (int i = 0; i < n; ++i) {
        const double* db = bs.vdb(q, i);
        double gp[2] = {0, 0};
        for (int k = 0; k <= DIM; ++k) {
          gp[0] += db[k] * g.glam[k][0];
          gp[1] += db[k] * g.glam[k][1];
        }
        for (int c = 0; c < NC; ++c) {
          double s = gp[0] * F[0][c];
          if constexpr (DIM == 2) s += gp[1] * F[1][c];
          res[i][c] -= w * s;
        }
      }
    }
    for (int f = 0; f < bs.n_faces; ++f) {
      double nrm[2], fmeas;
      face_normal(e, f, nrm, fmeas);
      for (int q = 0; q < bs.face.size(); ++q) {
        State U{};
        for (int j = 0; j < n; ++j) axpy(bs.fval(f, q, j), coef[j], U);
        flux_checked(U, F, e);
        State Fn{};
        for (int c = 0; c < NC; ++c) {
          Fn[c] = nrm[0] * F[0][c];
          if constexpr (DIM == 2) Fn[c] += nrm[1] * F[1][c];
        }
        const double w = bs.face.w[q] * fmeas;
        for (int i = 0; i < n; ++i) axpy(w * bs.fval(f, q, i), Fn, res[i]);
      }
    }
  }

  /// Classic local Lax-Friedrichs nodal residual: Galerkin terms plus
  /// alpha_K (U_sigma - Ubar) with the arithmetic dof average.
  void lxf_classic_residual(int e, const State* coef, State* res) const {
    const int n = nloc();
    galerkin_flux_residual(e, coef, res);
    State V[MAX_LOC];
    nodal_values(e, coef, V);
    double alpha = 0.0;
    State ubar{};
    for (int i = 0; i < n; ++i) {
      alpha = std::max(alpha, max_speed_checked(V[i], e));
      axpy(1.0 / n, coef[i], ubar);
    }
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < NC; ++c) res[i][c] += alpha * (coef[i][c] - ubar[c]);
  }

  /// Sub-cell reformulated Lax-Friedrichs residual: per sub-cell first-order
  /// Galerkin with the piecewise-linear flux of nodal point values, plus the
  /// per-sub-cell dissipation, combined with the conservation weights.
  void lxf_subcell_residual(int e, const State* coef, State* res) const {
    const int n = nloc();
    State V[MAX_LOC];
    nodal_values(e, coef, V);
    State F[MAX_LOC][2];
    double spd[MAX_LOC];
    for (int i = 0; i < n; ++i) {
      flux_checked(V[i], F[i], e);
      spd[i] = max_speed_checked(V[i], e);
    }
    for (int i = 0; i < n; ++i) res[i] = State{};

    const int ncell = static_cast<int>(sc.cells.size());
    const double* G = subg.empty() ? nullptr : &subg[static_cast<size_t>(e) * ncell * 6];
    for (int ci = 0; ci < ncell; ++ci) {
      const auto& cell = sc.cells[ci];
      State tot{};
      double alpha = 0.0;
      State ubar{};
      if constexpr (DIM == 1) {
        const int a = cell.v[0], b = cell.v[1];
        for (int c = 0; c < NC; ++c) tot[c] = F[b][0][c] - F[a][0][c];
        alpha = std::max(spd[a], spd[b]);
        for (int c = 0; c < NC; ++c) ubar[c] = 0.5 * (coef[a][c] + coef[b][c]);
        const double w = cell.weight;
        for (int k = 0; k < 2; ++k) {
          const int v = cell.v[k];
          for (int c = 0; c < NC; ++c)
            res[v][c] += w * (0.5 * tot[c] + alpha * (coef[v][c] - ubar[c]));
        }
      } else {
        const double* Gc = G + ci * 6;
        for (int k = 0; k < 3; ++k) {
          const int v = cell.v[k];
          for (int c = 0; c < NC; ++c)
            tot[c] += Gc[2 * k] * F[v][0][c] + Gc[2 * k + 1] * F[v][1][c];
          alpha = std::max(alpha, spd[v]);
          axpy(1.0 / 3.0, coef[v], ubar);
        }
        const double w = cell.weight;
        for (int k = 0; k < 3; ++k) {
          const int v = cell.v[k];
          for (int c = 0; c < NC; ++c)
            res[v][c] += w * (tot[c] / 3.0 + alpha * (coef[v][c] - ubar[c]));
        }
      }
    }
  }

  void spatial_residual(int e, const State* coef, State* res, LxFVariant variant) const {
    if (variant == LxFVariant::subcell)
      lxf_subcell_residual(e, coef, res);
    else
      lxf_classic_residual(e, coef, res);
  }

  /// Gradient/second-derivative jump penalties of one interior edge,
  /// accumulated into the global per-dof array.
  void edge_jump(const EdgePre& ep, const std::vector<State>& U, double th1, double th2,
                 std::vector<State>& out) const {
    const double c1 = th1 * ep.h * ep.h;
    const double c2 = (dm->degree >= 2) ? th2 * ep.h * ep.h * ep.h * ep.h : 0.0;
    for (int q = 0; q < ep.nq; ++q) {
      const double w = (DIM == 1) ? 1.0 : bs.face.w[q] * ep.meas;
      const double* jg = &ep.jgrad[static_cast<size_t>(q) * ep.ndof * 2];
      // [grad U] at the quadrature point, from the same jump tables
      double JU[NC][2] = {};
      for (int d = 0; d < ep.ndof; ++d) {
        const State& u = U[ep.gdof[d]];
        for (int c = 0; c < NC; ++c) {
          JU[c][0] += u[c] * jg[2 * d];
          JU[c][1] += u[c] * jg[2 * d + 1];
        }
      }
      for (int d = 0; d < ep.ndof; ++d) {
        State& o = out[ep.gdof[d]];
        for (int c = 0; c < NC; ++c)
          o[c] += c1 * w * (JU[c][0] * jg[2 * d] + JU[c][1] * jg[2 * d + 1]);
      }
      if (c2 > 0.0) {
        const double* jh = &ep.jhess[static_cast<size_t>(q) * ep.ndof * 2];
        double JH[NC][2] = {};
        for (int d = 0; d < ep.ndof; ++d) {
          const State& u = U[ep.gdof[d]];
          for (int c = 0; c < NC; ++c) {
            JH[c][0] += u[c] * jh[2 * d];
            JH[c][1] += u[c] * jh[2 * d + 1];
          }
        }
        for (int d = 0; d < ep.ndof; ++d) {
          State& o = out[ep.gdof[d]];
          for (int c = 0; c < NC; ++c)
            o[c] += c2 * w * (JH[c][0] * jh[2 * d] + JH[c][1] * jh[2 * d + 1]);
        }
      }
    }
  }

  void assemble_jump(const std::vector<State>& U, double th1, double th2,
                     std::vector<State>& out) const {
    if (th1 == 0.0 && th2 == 0.0) return;
    for (const auto& ep : edges) edge_jump(ep, U, th1, th2, out);
  }

  /// Weak boundary residual of one face: int phi (Fn(U,g) - F(U).n) with a
  /// local Lax-Friedrichs numerical flux against the ghost state.
  void boundary_face_residual(const FacePre& fp, const std::vector<State>& U,
                              const BCSet<Sys>& bcs, double t, std::vector<State>& out) const {
    const auto& bc = bcs.at(fp.tag);
    if (bc.kind == BCKind::transmissive || bc.kind == BCKind::periodic) return;
    const int n = nloc();
    const int* gd = dm->dofs(fp.elem);
    const double* nrm = fp.normal.data();
    State F[2], Fg[2];
    for (int q = 0; q < fp.nq; ++q) {
      State Uq{};
      const double* phi = &fp.phi[static_cast<size_t>(q) * n];
      for (int j = 0; j < n; ++j) axpy(phi[j], U[gd[j]], Uq);
      State g;
      if (bc.kind == BCKind::wall) {
        g = Uq;
        if constexpr (DIM == 1) {
          g[1] = -g[1];
        } else {
          const double mn = g[1] * nrm[0] + g[2] * nrm[1];
          g[1] -= 2.0 * mn * nrm[0];
          g[2] -= 2.0 * mn * nrm[1];
        }
      } else {
        g = bc.state(fp.xq[q][0], fp.xq[q][1], t);
      }
      flux_checked(Uq, F, fp.elem);
      flux_checked(g, Fg, fp.elem);
      const double alpha = std::max(sys.speed_bound(Uq), sys.speed_bound(g));
      State d{};
      for (int c = 0; c < NC; ++c) {
        double dn = (Fg[0][c] - F[0][c]) * nrm[0];
        if constexpr (DIM == 2) dn += (Fg[1][c] - F[1][c]) * nrm[1];
        d[c] = 0.5 * dn - 0.5 * alpha * (g[c] - Uq[c]);
      }
      for (int j = 0; j < n; ++j)
        if (phi[j] != 0.0) axpy(fp.wq[q] * phi[j], d, out[gd[j]]);
    }
  }

  void assemble_boundary(const std::vector<State>& U, const BCSet<Sys>& bcs, double t,
                         std::vector<State>& out) const {
    for (const auto& fp : faces) boundary_face_residual(fp, U, bcs, t, out);
  }

  // -------------------------------------------------------------------------

  void flux_checked(const State& U, State* F, int e) const {
    if (!sys.density_ok(U))
      throw InvalidStateError("invalid state in element " + std::to_string(e), e);
    sys.flux_raw(U, F);
  }

  double max_speed_checked(const State& U, int e) const {
    if (!sys.density_ok(U))
      throw InvalidStateError("invalid state in element " + std::to_string(e), e);
    return sys.speed_bound(U);
  }

  void face_normal(int e, int f, double nrm[2], double& fmeas) const {
    if constexpr (DIM == 1) {
      nrm[0] = (f == 0) ? -1.0 : 1.0;
      nrm[1] = 0.0;
      fmeas = 1.0;
    } else {
      auto fv = mesh->face_verts(e, f);
      const auto& p = mesh->verts[fv[0]];
      const auto& q = mesh->verts[fv[1]];
      const double dx = q[0] - p[0], dy = q[1] - p[1];
      fmeas = std::hypot(dx, dy);
      nrm[0] = dy / fmeas;
      nrm[1] = -dx / fmeas;
    }
  }

 private:
  void build_geometry() {
    const int ne = mesh->n_elems();
    geom.resize(ne);
    for (int e = 0; e < ne; ++e) {
      auto& g = geom[e];
      g.measure = mesh->elem_measure(e);
      g.hmax = mesh->elem_longest_edge(e);
      for (auto& row : g.glam) row[0] = row[1] = 0.0;
      if constexpr (DIM == 1) {
        g.jac = g.measure;
        g.glam[0][0] = -1.0 / g.measure;
        g.glam[1][0] = 1.0 / g.measure;
      } else {
        g.jac = 2.0 * g.measure;
        const auto& el = mesh->elems[e];
        const auto &A = mesh->verts[el[0]], &B = mesh->verts[el[1]], &C = mesh->verts[el[2]];
        const double a2 = g.jac;  // 2 |K|
        g.glam[0][0] = (B[1] - C[1]) / a2;
        g.glam[0][1] = (C[0] - B[0]) / a2;
        g.glam[1][0] = (C[1] - A[1]) / a2;
        g.glam[1][1] = (A[0] - C[0]) / a2;
        g.glam[2][0] = (A[1] - B[1]) / a2;
        g.glam[2][1] = (B[0] - A[0]) / a2;
      }
    }
    if constexpr (DIM == 2) {
      const int ncell = static_cast<int>(sc.cells.size());
      const auto* nodes = node_bary(2, dm->degree);
      subg.resize(static_cast<size_t>(ne) * ncell * 6);
      for (int e = 0; e < ne; ++e) {
        const auto& el = mesh->elems[e];
        auto phys = [&](int i) {
          std::array<double, 2> p{0, 0};
          for (int k = 0; k < 3; ++k) {
            p[0] += nodes[i][k] * mesh->verts[el[k]][0];
            p[1] += nodes[i][k] * mesh->verts[el[k]][1];
          }
          return p;
        };
        for (int ci = 0; ci < ncell; ++ci) {
          const auto& cell = sc.cells[ci];
          const auto P0 = phys(cell.v[0]), P1 = phys(cell.v[1]), P2 = phys(cell.v[2]);
          double* G = &subg[(static_cast<size_t>(e) * ncell + ci) * 6];
          // G_v = |K_i| grad(hat_v); for CCW sub-cells this is rot90(opposite edge)/2
          G[0] = 0.5 * (P1[1] - P2[1]);
          G[1] = 0.5 * (P2[0] - P1[0]);
          G[2] = 0.5 * (P2[1] - P0[1]);
          G[3] = 0.5 * (P0[0] - P2[0]);
          G[4] = 0.5 * (P0[1] - P1[1]);
          G[5] = 0.5 * (P1[0] - P0[0]);
        }
      }
    }
  }

  void build_measures() {
    csig.assign(dm->n_dofs, 0.0);
    std::vector<double> hinc(dm->n_dofs, 0.0);
    for (int e = 0; e < mesh->n_elems(); ++e) {
      const int* gd = dm->dofs(e);
      for (int i = 0; i < nloc(); ++i) {
        csig[gd[i]] += geom[e].jac * bs.csigma_ref[i];
        hinc[gd[i]] = std::max(hinc[gd[i]], geom[e].hmax);
      }
    }
    for (long i = 0; i < dm->n_dofs; ++i)
      if (!(csig[i] > 0.0))
        throw ConfigError("non-positive dual-cell measure at dof " + std::to_string(i));
    dxsig.resize(dm->n_dofs);
    for (long i = 0; i < dm->n_dofs; ++i)
      dxsig[i] = (DIM == 1) ? csig[i] : csig[i] / hinc[i];
  }

  // gradient and hessian.n of every local shape function at a face point
  void side_tables(int e, int f, double s, double* grad /*nloc*2*/,
                   double* hessn /*nloc*2*/, const double nrm[2]) const {
    double b[3];
    face_point_bary(DIM, f, s, b);
    double dv[MAX_LOC][3], d2[MAX_LOC][9];
    bernstein_dbary(DIM, dm->degree, b, dv);
    bernstein_d2bary(DIM, dm->degree, b, d2);
    const auto& g = geom[e];
    for (int i = 0; i < nloc(); ++i) {
      double gx = 0, gy = 0;
      for (int k = 0; k <= DIM; ++k) {
        gx += dv[i][k] * g.glam[k][0];
        gy += dv[i][k] * g.glam[k][1];
      }
      grad[2 * i] = gx;
      grad[2 * i + 1] = gy;
      double hx = 0, hy = 0;
      for (int j = 0; j <= DIM; ++j)
        for (int k = 0; k <= DIM; ++k) {
          const double d = d2[i][3 * j + k];
          if (d == 0.0) continue;
          const double gkn = g.glam[k][0] * nrm[0] + g.glam[k][1] * nrm[1];
          hx += d * g.glam[j][0] * gkn;
          hy += d * g.glam[j][1] * gkn;
        }
      hessn[2 * i] = hx;
      hessn[2 * i + 1] = hy;
    }
  }

  void build_edges() {
    const int n = nloc();
    edges.reserve(mesh->edges.size());
    for (const auto& me : mesh->edges) {
      EdgePre ep;
      ep.h = me.h;
      ep.left = me.left;
      ep.right = me.right;
      ep.nq = (DIM == 1) ? 1 : bs.face.size();
      ep.meas = (DIM == 1) ? 1.0 : me.h;

      // union of the two elements' dofs; left contributes +, right -
      const int* gl = dm->dofs(me.left);
      const int* gr = dm->dofs(me.right);
      ep.ndof = 0;
      int pos_l[MAX_LOC], pos_r[MAX_LOC];
      for (int i = 0; i < n; ++i) pos_l[i] = ep.ndof, ep.gdof[ep.ndof++] = gl[i];
      for (int i = 0; i < n; ++i) {
        int found = -1;
        for (int j = 0; j < n; ++j)
          if (gr[i] == gl[j]) {
            found = j;
            break;
          }
        pos_r[i] = (found >= 0) ? found : ep.ndof;
        if (found < 0) ep.gdof[ep.ndof++] = gr[i];
      }

      ep.jgrad.assign(static_cast<size_t>(ep.nq) * ep.ndof * 2, 0.0);
      ep.jhess.assign(static_cast<size_t>(ep.nq) * ep.ndof * 2, 0.0);
      const double nrm[2] = {me.normal[0], me.normal[1]};

      // match the two local face parametrizations through the global edge
      auto fvl = mesh->face_verts(me.left, me.face_left);
      auto fvr = mesh->face_verts(me.right, me.face_right);
      double grad[2 * MAX_LOC], hess[2 * MAX_LOC];
      for (int q = 0; q < ep.nq; ++q) {
        const double s = (DIM == 1) ? 0.0 : bs.face.pts[q][1];
        double* jg = &ep.jgrad[static_cast<size_t>(q) * ep.ndof * 2];
        double* jh = &ep.jhess[static_cast<size_t>(q) * ep.ndof * 2];

        side_tables(me.left, me.face_left, s, grad, hess, nrm);
        for (int i = 0; i < n; ++i) {
          jg[2 * pos_l[i]] += grad[2 * i];
          jg[2 * pos_l[i] + 1] += grad[2 * i + 1];
          jh[2 * pos_l[i]] += hess[2 * i];
          jh[2 * pos_l[i] + 1] += hess[2 * i + 1];
        }
        double sr = s;
        if (DIM == 2 && fvr[0] == fvl[0] && fvr[1] == fvl[1])
          ;  // same orientation (cannot happen for two CCW triangles, kept for safety)
        else if (DIM == 2)
          sr = 1.0 - s;
        side_tables(me.right, me.face_right, sr, grad, hess, nrm);
        for (int i = 0; i < n; ++i) {
          jg[2 * pos_r[i]] -= grad[2 * i];
          jg[2 * pos_r[i] + 1] -= grad[2 * i + 1];
          jh[2 * pos_r[i]] -= hess[2 * i];
          jh[2 * pos_r[i] + 1] -= hess[2 * i + 1];
        }
      }
      edges.push_back(std::move(ep));
    }
  }

  void build_faces() {
    const int n = nloc();
    faces.reserve(mesh->bfaces.size());
    for (const auto& bf : mesh->bfaces) {
      FacePre fp;
      fp.elem = bf.elem;
      fp.tag = bf.tag;
      double nrm[2], fmeas;
      face_normal(bf.elem, bf.local_face, nrm, fmeas);
      fp.normal = {nrm[0], nrm[1]};
      fp.nq = (DIM == 1) ? 1 : bs.face.size();
      fp.phi.resize(static_cast<size_t>(fp.nq) * n);
      fp.xq.resize(fp.nq);
      fp.wq.resize(fp.nq);
      for (int q = 0; q < fp.nq; ++q) {
        double b[3];
        const double s = (DIM == 1) ? 0.0 : bs.face.pts[q][1];
        face_point_bary(DIM, bf.local_face, s, b);
        bernstein_eval(DIM, dm->degree, b, &fp.phi[static_cast<size_t>(q) * n]);
        const auto& el = mesh->elems[bf.elem];
        fp.xq[q] = {0.0, 0.0};
        for (int k = 0; k <= DIM; ++k) {
          fp.xq[q][0] += b[k] * mesh->verts[el[k]][0];
          fp.xq[q][1] += b[k] * mesh->verts[el[k]][1];
        }
        fp.wq[q] = (DIM == 1) ? 1.0 : bs.face.w[q] * fmeas;
      }
      faces.push_back(std::move(fp));
    }
  }
};

}  // namespace rd
