#include <doctest.h>

#include "oracles.hpp"
#include "rd/assembly.hpp"
#include "rd/dec.hpp"
#include "rd/limiter.hpp"

using namespace rd;

namespace {

// degree-k flux interpolant through the nodal point values, integrated exactly:
// int_K div F^(k) = sum_j coef_j . int_K grad(phi_j)
template <class Sys>
typename Sys::State divergence_of_flux_interpolant(const Discretization<Sys>& disc, int e,
                                                   const typename Sys::State* coef) {
  using State = typename Sys::State;
  const int n = disc.nloc();
  State V[MAX_LOC];
  disc.nodal_values(e, coef, V);
  State F[MAX_LOC][2];
  for (int i = 0; i < n; ++i) disc.sys.flux(V[i], F[i]);
  // flux control points of the interpolant (per direction, per component)
  State C[MAX_LOC][2];
  for (int i = 0; i < n; ++i)
    for (int d = 0; d < Sys::dim; ++d) {
      State s{};
      for (int j = 0; j < n; ++j) axpy(disc.bs.interp_matrix[i][j], F[j][d], s);
      C[i][d] = s;
    }
  // int grad(phi_i) over the element by (exact) volume quadrature
  State out{};
  const auto& g = disc.geom[e];
  for (int q = 0; q < disc.bs.vol.size(); ++q) {
    const double w = g.jac * disc.bs.vol.w[q];
    for (int i = 0; i < n; ++i) {
      const double* db = disc.bs.vdb(q, i);
      double gx = 0, gy = 0;
      for (int k = 0; k <= Sys::dim; ++k) {
        gx += db[k] * g.glam[k][0];
        gy += db[k] * g.glam[k][1];
      }
      for (int c = 0; c < Sys::ncomp; ++c) {
        out[c] += w * gx * C[i][0][c];
        if constexpr (Sys::dim == 2) out[c] += w * gy * C[i][1][c];
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("free stream: all residual variants vanish on an irregular mesh") {
  auto mesh = generate_rect_triangulation(0, 1, 0, 1, 6, 5, RectPattern::alternating, 0.2);
  for (int deg = 1; deg <= 3; ++deg) {
    auto dm = build_dof_map(mesh, deg);
    Discretization<Euler2D> disc(mesh, dm, Euler2D{});
    std::vector<Euler2D::State> U(dm.n_dofs, Euler2D{}.cons_from_prim({1.4, 0.7, -0.3, 2.0}));
    Euler2D::State coef[MAX_LOC], res[MAX_LOC];
    for (int e = 0; e < mesh.n_elems(); ++e) {
      for (int i = 0; i < dm.nloc; ++i) coef[i] = U[dm.dofs(e)[i]];
      disc.lxf_subcell_residual(e, coef, res);
      for (int i = 0; i < dm.nloc; ++i) CHECK(norm1(res[i]) < 1e-12);
      disc.lxf_classic_residual(e, coef, res);
      for (int i = 0; i < dm.nloc; ++i) CHECK(norm1(res[i]) < 1e-12);
      disc.galerkin_flux_residual(e, coef, res);
      for (int i = 0; i < dm.nloc; ++i) CHECK(norm1(res[i]) < 1e-12);
    }
    // jump term vanishes for a globally uniform (hence linear) field
    std::vector<Euler2D::State> out(dm.n_dofs, Euler2D::State{});
    disc.assemble_jump(U, 1.0, 1.0, out);
    for (const auto& r : out) CHECK(norm1(r) < 1e-12);
  }
}

TEST_CASE("galerkin residual: conservation and linear-flux exactness") {
  auto mesh = generate_rect_triangulation(0, 1, 0, 1, 3, 3, RectPattern::alternating, 0.15);
  oracle::Rng rng(31);
  for (int deg = 1; deg <= 3; ++deg) {
    auto dm = build_dof_map(mesh, deg);
    Discretization<Euler2D> disc(mesh, dm, Euler2D{});
    for (int e = 0; e < mesh.n_elems(); ++e) {
      Euler2D::State coef[MAX_LOC], res[MAX_LOC];
      for (int i = 0; i < dm.nloc; ++i) {
        coef[i] = Euler2D{}.cons_from_prim(
            {rng.in(0.8, 1.2), rng.in(-0.2, 0.2), rng.in(-0.2, 0.2), rng.in(0.8, 1.2)});
      }
      disc.galerkin_flux_residual(e, coef, res);
      // sum over dofs equals the boundary flux integral computed with the
      // scheme's face rule (the volume terms cancel by partition of unity)
      Euler2D::State sum{};
      for (int i = 0; i < dm.nloc; ++i) sum += res[i];
      Euler2D::State bnd{};
      auto fine = edge_quadrature(2 * deg + 1);
      for (int f = 0; f < 3; ++f) {
        double nrm[2], fmeas;
        disc.face_normal(e, f, nrm, fmeas);
        for (int q = 0; q < fine.size(); ++q) {
          double b[3], phi[MAX_LOC];
          face_point_bary(2, f, fine.pts[q][1], b);
          bernstein_eval(2, deg, b, phi);
          Euler2D::State Uq{};
          for (int j = 0; j < dm.nloc; ++j) axpy(phi[j], coef[j], Uq);
          Euler2D::State F[2];
          Euler2D{}.flux(Uq, F);
          for (int c = 0; c < 4; ++c)
            bnd[c] += fine.w[q] * fmeas * (F[0][c] * nrm[0] + F[1][c] * nrm[1]);
        }
      }
      for (int c = 0; c < 4; ++c) CHECK(sum[c] == doctest::Approx(bnd[c]).epsilon(1e-11));
    }
  }

  // linear solution of the linear wave system on B1: residual is exact, check
  // against the closed-form value int phi_sigma div F dx with constant div F
  auto m1 = generate_interval_mesh(0, 2, 4);
  auto dm1 = build_dof_map(m1, 1);
  Discretization<Wave1D> d1(m1, dm1, Wave1D{1.0});
  // W = (u, v) = (0.3 + x, -0.1 + 2x): F = (-a^2 v, -u), div F = (-2a^2, -1)
  std::vector<Wave1D::State> W(dm1.n_dofs);
  for (long i = 0; i < dm1.n_dofs; ++i) {
    const double x = dm1.coords[i][0];
    W[i] = {0.3 + x, -0.1 + 2 * x};
  }
  for (int e = 0; e < m1.n_elems(); ++e) {
    Wave1D::State coef[2] = {W[dm1.dofs(e)[0]], W[dm1.dofs(e)[1]]};
    Wave1D::State res[2];
    d1.galerkin_flux_residual(e, coef, res);
    const double h = m1.elem_measure(e);
    // int phi div F = (h/2) * divF for each hat function
    CHECK(res[0][0] == doctest::Approx(0.5 * h * -2.0).epsilon(1e-13));
    CHECK(res[0][1] == doctest::Approx(0.5 * h * -1.0).epsilon(1e-13));
    CHECK(res[1][0] == doctest::Approx(0.5 * h * -2.0).epsilon(1e-13));
    CHECK(res[1][1] == doctest::Approx(0.5 * h * -1.0).epsilon(1e-13));
  }
}

TEST_CASE("sub-cell residual: element sum telescopes to the interpolated-flux divergence") {
  auto mesh = generate_rect_triangulation(0, 1, 0, 1, 3, 2, RectPattern::alternating, 0.2);
  oracle::Rng rng(101);
  for (int deg = 2; deg <= 3; ++deg) {
    auto dm = build_dof_map(mesh, deg);
    Discretization<Euler2D> disc(mesh, dm, Euler2D{});
    for (int e = 0; e < mesh.n_elems(); ++e) {
      Euler2D::State coef[MAX_LOC], res[MAX_LOC];
      for (int i = 0; i < dm.nloc; ++i)
        coef[i] = Euler2D{}.cons_from_prim(
            {rng.in(0.8, 1.3), rng.in(-0.3, 0.3), rng.in(-0.3, 0.3), rng.in(0.8, 1.3)});
      disc.lxf_subcell_residual(e, coef, res);
      Euler2D::State sum{};
      for (int i = 0; i < dm.nloc; ++i) sum += res[i];
      const auto divk = divergence_of_flux_interpolant(disc, e, coef);
      double scale = norm1(divk) + 1e-12;
      CHECK(norm1(sum - divk) / scale < 1e-11);
    }
  }
}

TEST_CASE("sub-cell residual reduces to classic LxF on B1 with interpolated flux") {
  auto mesh = generate_rect_triangulation(0, 1, 0, 1, 2, 2, RectPattern::alternating, 0.1);
  auto dm = build_dof_map(mesh, 1);
  Discretization<Euler2D> disc(mesh, dm, Euler2D{});
  oracle::Rng rng(55);
  for (int e = 0; e < mesh.n_elems(); ++e) {
    Euler2D::State coef[3], res[3];
    for (int i = 0; i < 3; ++i)
      coef[i] = Euler2D{}.cons_from_prim(
          {rng.in(0.8, 1.3), rng.in(-0.3, 0.3), rng.in(-0.3, 0.3), rng.in(0.8, 1.3)});
    disc.lxf_subcell_residual(e, coef, res);
    // independent evaluation: (1/3) of the P1 boundary flux integral of the
    // linear flux interpolant plus the dissipation
    Euler2D::State F[3][2];
    for (int i = 0; i < 3; ++i) Euler2D{}.flux(coef[i], F[i]);
    auto fine = edge_quadrature(9);
    Euler2D::State tot{};
    for (int f = 0; f < 3; ++f) {
      double nrm[2], fmeas;
      disc.face_normal(e, f, nrm, fmeas);
      static constexpr int fv[3][2] = {{0, 1}, {1, 2}, {2, 0}};
      for (int q = 0; q < fine.size(); ++q) {
        const double s = fine.pts[q][1];
        for (int c = 0; c < 4; ++c) {
          const double Fx = (1 - s) * F[fv[f][0]][0][c] + s * F[fv[f][1]][0][c];
          const double Fy = (1 - s) * F[fv[f][0]][1][c] + s * F[fv[f][1]][1][c];
          tot[c] += fine.w[q] * fmeas * (Fx * nrm[0] + Fy * nrm[1]);
        }
      }
    }
    double alpha = 0;
    Euler2D::State ubar{};
    for (int i = 0; i < 3; ++i) {
      alpha = std::max(alpha, Euler2D{}.max_speed(coef[i]));
      axpy(1.0 / 3, coef[i], ubar);
    }
    for (int i = 0; i < 3; ++i)
      for (int c = 0; c < 4; ++c) {
        const double expect = tot[c] / 3.0 + alpha * (coef[i][c] - ubar[c]);
        CHECK(res[i][c] == doctest::Approx(expect).epsilon(1e-11).scale(1.0));
      }
  }
}

TEST_CASE("limiters: distribution coefficients, degenerate cases, conservation") {
  // beta from the ratios (0.5, 0.7, -0.2): (5/12, 7/12, 0) times the total
  Vec<1> r3[3] = {{0.5}, {0.7}, {-0.2}};
  limit_scalar<1>(3, r3);
  CHECK(r3[0][0] == doctest::Approx(5.0 / 12).epsilon(1e-14));
  CHECK(r3[1][0] == doctest::Approx(7.0 / 12).epsilon(1e-14));
  CHECK(r3[2][0] == doctest::Approx(0.0));

  // brute-force cross-check of the same normalization
  {
    oracle::Rng rng(9);
    for (int it = 0; it < 200; ++it) {
      Vec<1> r[4];
      double tot = 0;
      for (int i = 0; i < 4; ++i) {
        r[i][0] = rng.in(-1, 1);
        tot += r[i][0];
      }
      if (tot == 0) continue;
      Vec<1> lim[4];
      std::copy(r, r + 4, lim);
      limit_scalar<1>(4, lim);
      double bsum = 0;
      for (int i = 0; i < 4; ++i) bsum += std::max(r[i][0] / tot, 0.0);
      double check = 0;
      for (int i = 0; i < 4; ++i) {
        const double beta = std::max(r[i][0] / tot, 0.0) / bsum;
        CHECK(lim[i][0] == doctest::Approx(beta * tot).epsilon(1e-12));
        CHECK(beta >= 0.0);
        check += beta;
      }
      CHECK(check == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  // single nonzero nodal residual keeps everything (beta = 1 there)
  Vec<2> single[3] = {{0, 0}, {2.0, -1.0}, {0, 0}};
  limit_scalar<2>(3, single);
  CHECK(single[1][0] == doctest::Approx(2.0));
  CHECK(single[1][1] == doctest::Approx(-1.0));
  CHECK(norm1(single[0]) == 0.0);

  Euler2D sys;
  auto ubar = sys.cons_from_prim({1.0, 0.4, -0.2, 0.9});

  // identical nodal residuals: every characteristic ratio is positive, so
  // Theta = 1 and the limiter returns its input
  Euler2D::State same[6];
  for (auto& s : same) s = {0.3, -0.1, 0.2, 0.05};
  Euler2D::State lim[6];
  std::copy(same, same + 6, lim);
  CHECK(limit_characteristic(sys, ubar, 6, lim));
  for (int i = 0; i < 6; ++i)
    for (int c = 0; c < 4; ++c) CHECK(lim[i][c] == doctest::Approx(same[i][c]).epsilon(1e-12));

  // zero element total: the limited residual vanishes identically
  Euler2D::State cancel[4] = {{1, 2, 3, 4}, {-1, -2, -3, -4}, {}, {}};
  CHECK(limit_characteristic(sys, ubar, 4, cancel));
  for (int i = 0; i < 4; ++i) CHECK(norm1(cancel[i]) < 1e-14);

  // conservation and Theta bounds on random data
  oracle::Rng rng(77);
  for (int it = 0; it < 300; ++it) {
    Euler2D::State r[6];
    Euler2D::State tot{};
    for (int i = 0; i < 6; ++i) {
      for (int c = 0; c < 4; ++c) r[i][c] = rng.in(-1, 1);
      tot += r[i];
    }
    Euler2D::State out[6];
    std::copy(r, r + 6, out);
    CHECK(limit_characteristic(sys, ubar, 6, out));
    Euler2D::State sum{};
    for (int i = 0; i < 6; ++i) sum += out[i];
    for (int c = 0; c < 4; ++c) CHECK(sum[c] == doctest::Approx(tot[c]).epsilon(1e-11).scale(1.0));

    std::copy(r, r + 6, out);
    limit_scalar<4>(6, out);
    Euler2D::State sum2{};
    for (int i = 0; i < 6; ++i) sum2 += out[i];
    for (int c = 0; c < 4; ++c)
      CHECK(sum2[c] == doctest::Approx(tot[c]).epsilon(1e-11).scale(1.0));
  }

  // degenerate average state falls back to scalar mode
  Euler2D::State junk[3] = {{1, 0, 0, 1}, {1, 0, 0, 1}, {1, 0, 0, 1}};
  CHECK_FALSE(limit_characteristic(sys, Euler2D::State{-1, 0, 0, 1}, 3, junk));
}

TEST_CASE("jump stabilization: telescoping sum and zero for smooth fields") {
  auto mesh = generate_rect_triangulation(0, 1, 0, 1, 2, 2, RectPattern::alternating, 0.15);
  oracle::Rng rng(13);
  for (int deg = 1; deg <= 3; ++deg) {
    auto dm = build_dof_map(mesh, deg);
    Discretization<Euler2D> disc(mesh, dm, Euler2D{});

    // globally linear field: gradient jumps vanish
    std::vector<Euler2D::State> lin(dm.n_dofs);
    for (long i = 0; i < dm.n_dofs; ++i) {
      const double x = dm.coords[i][0], y = dm.coords[i][1];
      lin[i] = {1.0 + 0.2 * x - 0.1 * y, 0.3 * x, 0.1 * y, 2.0 + 0.05 * x};
    }
    std::vector<Euler2D::State> out(dm.n_dofs, Euler2D::State{});
    disc.assemble_jump(lin, 0.7, 0.3, out);
    for (const auto& r : out) CHECK(norm1(r) < 1e-12);

    // random data: the global sum of all jump contributions telescopes to zero
    std::vector<Euler2D::State> U(dm.n_dofs);
    for (auto& u : U)
      for (int c = 0; c < 4; ++c) u[c] = rng.in(-1, 1);
    std::fill(out.begin(), out.end(), Euler2D::State{});
    disc.assemble_jump(U, 0.7, 0.3, out);
    Euler2D::State sum{};
    for (const auto& r : out) sum += r;
    CHECK(norm1(sum) < 1e-11);

    // theta = 0 leaves the residual untouched
    std::fill(out.begin(), out.end(), Euler2D::State{});
    disc.assemble_jump(U, 0.0, 0.0, out);
    for (const auto& r : out) CHECK(norm1(r) == 0.0);
  }
}

TEST_CASE("boundary residuals: outflow, aligned wall and matched inflow vanish") {
  auto mesh = generate_step_mesh(10, 5);
  auto dm = build_dof_map(mesh, 2);
  Discretization<Euler2D> disc(mesh, dm, Euler2D{});
  BCSet<Euler2D> bcs(mesh.tags.size());
  for (size_t t = 0; t < mesh.tags.size(); ++t) {
    if (mesh.tags[t] == "inflow") {
      bcs[t].kind = BCKind::inflow;
      bcs[t].state = [](double, double, double) {
        return Euler2D{}.cons_from_prim({1.4, 3.0, 0.0, 1.0});
      };
    } else if (mesh.tags[t] == "wall") {
      bcs[t].kind = BCKind::wall;
    } else {
      bcs[t].kind = BCKind::transmissive;
    }
  }
  std::vector<Euler2D::State> U(dm.n_dofs, Euler2D{}.cons_from_prim({1.4, 3.0, 0.0, 1.0}));
  std::vector<Euler2D::State> out(dm.n_dofs, Euler2D::State{});
  disc.assemble_boundary(U, bcs, 0.0, out);
  // only the step front (x = 0.6 wall, normal against the flow) may react
  for (long i = 0; i < dm.n_dofs; ++i) {
    const bool near_front = std::abs(dm.coords[i][0] - 0.6) < 1e-9 && dm.coords[i][1] < 0.2 + 1e-9;
    if (!near_front) CHECK(norm1(out[i]) < 1e-12);
  }
  double front = 0;
  for (long i = 0; i < dm.n_dofs; ++i) front += norm1(out[i]);
  CHECK(front > 1e-3);  // the flow does slam into the step
}
