#pragma once

#include <array>
#include <vector>

#include "rd/state.hpp"

namespace rd {

constexpr int MAX_LOC = 10;  // B3 triangle

inline int n_local_dofs(int dim, int degree) {
  return dim == 1 ? degree + 1 : (degree + 1) * (degree + 2) / 2;
}

// ---------------------------------------------------------------------------
// Bernstein shape functions.
//
// Triangle ordering (degree 2): x1^2, x2^2, x3^2, 2x1x2, 2x2x3, 2x1x3.
// Triangle ordering (degree 3): x1^3, x2^3, x3^3, 3x1^2x2, 3x1x2^2, 3x2^2x3,
//   3x2x3^2, 3x1x3^2, 3x1^2x3, 6x1x2x3.
// Interval: vertex dofs first (left, right), then interior control points in
// increasing coordinate; arguments are (x1, x2) = (1-s, s).
// ---------------------------------------------------------------------------

/// Values of all shape functions at barycentric point b (b[2] ignored in 1D).
void bernstein_eval(int dim, int degree, const double b[3], double* vals);

/// Partial derivatives w.r.t. barycentric coordinates: dv[i][j] = dphi_i/dx_j.
void bernstein_dbary(int dim, int degree, const double b[3], double dv[][3]);

/// Second barycentric derivatives: d2[i][3*j+k] = d2phi_i/(dx_j dx_k).
void bernstein_d2bary(int dim, int degree, const double b[3], double d2[][9]);

/// Barycentric coordinates of the control/interpolation nodes in local order.
const std::array<double, 3>* node_bary(int dim, int degree);

struct QuadratureRule {
  std::vector<std::array<double, 3>> pts;  // barycentric (1D: (1-s, s, 0))
  std::vector<double> w;                   // sums to reference measure
  int exactness = 0;
  int size() const { return static_cast<int>(w.size()); }
};

/// Symmetric positive rule on the reference triangle (area 1/2), exactness <= 8.
QuadratureRule triangle_quadrature(int exactness);
/// Gauss-Legendre on [0,1] (weights sum to 1), exactness <= 9.
QuadratureRule edge_quadrature(int exactness);
/// Dispatch on dim: triangle rule or edge rule as the volume rule.
QuadratureRule volume_quadrature(int dim, int exactness);

/// Small dense tables shared by every element of a given (dim, degree).
struct BasisSet {
  int dim = 1, degree = 1, nloc = 2;

  // volume rule of exactness 2*degree, with basis values and barycentric grads
  QuadratureRule vol;
  std::vector<double> vol_val;    // [q][i]
  std::vector<double> vol_dbary;  // [q][i][3]

  // face rule of exactness 2*degree+1; per local face, values and bary grads
  QuadratureRule face;
  int n_faces = 2;
  std::vector<double> face_val;    // [f][q][i]
  std::vector<double> face_dbary;  // [f][q][i][3]
  std::vector<double> face_d2bary; // [f][q][i][9]

  // control-point values <-> nodal values
  double node_matrix[MAX_LOC][MAX_LOC];    // T[i][j] = phi_j(node_i)
  double interp_matrix[MAX_LOC][MAX_LOC];  // T^{-1}

  double mass_ref[MAX_LOC][MAX_LOC];  // reference-element mass matrix
  double csigma_ref[MAX_LOC];         // reference dual measures (row sums)

  double vval(int q, int i) const { return vol_val[static_cast<size_t>(q) * nloc + i]; }
  const double* vdb(int q, int i) const {
    return &vol_dbary[(static_cast<size_t>(q) * nloc + i) * 3];
  }
  double fval(int f, int q, int i) const {
    return face_val[(static_cast<size_t>(f) * face.size() + q) * nloc + i];
  }
  const double* fdb(int f, int q, int i) const {
    return &face_dbary[((static_cast<size_t>(f) * face.size() + q) * nloc + i) * 3];
  }
  const double* fd2(int f, int q, int i) const {
    return &face_d2bary[((static_cast<size_t>(f) * face.size() + q) * nloc + i) * 9];
  }
};

BasisSet make_basis_set(int dim, int degree);

/// Barycentric point of face f at parameter s in [0,1] (face endpoints at
/// s = 0, 1, ordered as Mesh::face_verts).
void face_point_bary(int dim, int f, double s, double b[3]);

}  // namespace rd
