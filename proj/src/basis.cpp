#include "rd/basis.hpp"

#include <cmath>
#include <cstring>

namespace rd {

// ---------------------------------------------------------------------------
// shape function tables
// ---------------------------------------------------------------------------

void bernstein_eval(int dim, int degree, const double b[3], double* v) {
  const double x1 = b[0], x2 = b[1], x3 = b[2];
  if (dim == 1) {
    switch (degree) {
      case 1:
        v[0] = x1;
        v[1] = x2;
        return;
      case 2:
        v[0] = x1 * x1;
        v[1] = x2 * x2;
        v[2] = 2 * x1 * x2;
        return;
      case 3:
        v[0] = x1 * x1 * x1;
        v[1] = x2 * x2 * x2;
        v[2] = 3 * x1 * x1 * x2;
        v[3] = 3 * x1 * x2 * x2;
        return;
    }
  } else {
    switch (degree) {
      case 1:
        v[0] = x1;
        v[1] = x2;
        v[2] = x3;
        return;
      case 2:
        v[0] = x1 * x1;
        v[1] = x2 * x2;
        v[2] = x3 * x3;
        v[3] = 2 * x1 * x2;
        v[4] = 2 * x2 * x3;
        v[5] = 2 * x1 * x3;
        return;
      case 3:
        v[0] = x1 * x1 * x1;
        v[1] = x2 * x2 * x2;
        v[2] = x3 * x3 * x3;
        v[3] = 3 * x1 * x1 * x2;
        v[4] = 3 * x1 * x2 * x2;
        v[5] = 3 * x2 * x2 * x3;
        v[6] = 3 * x2 * x3 * x3;
        v[7] = 3 * x1 * x3 * x3;
        v[8] = 3 * x1 * x1 * x3;
        v[9] = 6 * x1 * x2 * x3;
        return;
    }
  }
  throw ConfigError("unsupported basis degree " + std::to_string(degree));
}

void bernstein_dbary(int dim, int degree, const double b[3], double dv[][3]) {
  const double x1 = b[0], x2 = b[1], x3 = b[2];
  const int n = n_local_dofs(dim, degree);
  for (int i = 0; i < n; ++i) dv[i][0] = dv[i][1] = dv[i][2] = 0.0;
  if (dim == 1) {
    switch (degree) {
      case 1:
        dv[0][0] = 1;
        dv[1][1] = 1;
        return;
      case 2:
        dv[0][0] = 2 * x1;
        dv[1][1] = 2 * x2;
        dv[2][0] = 2 * x2;
        dv[2][1] = 2 * x1;
        return;
      case 3:
        dv[0][0] = 3 * x1 * x1;
        dv[1][1] = 3 * x2 * x2;
        dv[2][0] = 6 * x1 * x2;
        dv[2][1] = 3 * x1 * x1;
        dv[3][0] = 3 * x2 * x2;
        dv[3][1] = 6 * x1 * x2;
        return;
    }
  } else {
    switch (degree) {
      case 1:
        dv[0][0] = 1;
        dv[1][1] = 1;
        dv[2][2] = 1;
        return;
      case 2:
        dv[0][0] = 2 * x1;
        dv[1][1] = 2 * x2;
        dv[2][2] = 2 * x3;
        dv[3][0] = 2 * x2;
        dv[3][1] = 2 * x1;
        dv[4][1] = 2 * x3;
        dv[4][2] = 2 * x2;
        dv[5][0] = 2 * x3;
        dv[5][2] = 2 * x1;
        return;
      case 3:
        dv[0][0] = 3 * x1 * x1;
        dv[1][1] = 3 * x2 * x2;
        dv[2][2] = 3 * x3 * x3;
        dv[3][0] = 6 * x1 * x2;
        dv[3][1] = 3 * x1 * x1;
        dv[4][0] = 3 * x2 * x2;
        dv[4][1] = 6 * x1 * x2;
        dv[5][1] = 6 * x2 * x3;
        dv[5][2] = 3 * x2 * x2;
        dv[6][1] = 3 * x3 * x3;
        dv[6][2] = 6 * x2 * x3;
        dv[7][0] = 3 * x3 * x3;
        dv[7][2] = 6 * x1 * x3;
        dv[8][0] = 6 * x1 * x3;
        dv[8][2] = 3 * x1 * x1;
        dv[9][0] = 6 * x2 * x3;
        dv[9][1] = 6 * x1 * x3;
        dv[9][2] = 6 * x1 * x2;
        return;
    }
  }
  throw ConfigError("unsupported basis degree " + std::to_string(degree));
}

void bernstein_d2bary(int dim, int degree, const double b[3], double d2[][9]) {
  const double x1 = b[0], x2 = b[1], x3 = b[2];
  const int n = n_local_dofs(dim, degree);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < 9; ++k) d2[i][k] = 0.0;
  auto set = [&](int i, int j, int k, double val) {
    d2[i][3 * j + k] = val;
    if (j != k) d2[i][3 * k + j] = val;
  };
  if (dim == 1) {
    switch (degree) {
      case 1:
        return;
      case 2:
        set(0, 0, 0, 2);
        set(1, 1, 1, 2);
        set(2, 0, 1, 2);
        return;
      case 3:
        set(0, 0, 0, 6 * x1);
        set(1, 1, 1, 6 * x2);
        set(2, 0, 0, 6 * x2);
        set(2, 0, 1, 6 * x1);
        set(3, 1, 1, 6 * x1);
        set(3, 0, 1, 6 * x2);
        return;
    }
  } else {
    switch (degree) {
      case 1:
        return;
      case 2:
        set(0, 0, 0, 2);
        set(1, 1, 1, 2);
        set(2, 2, 2, 2);
        set(3, 0, 1, 2);
        set(4, 1, 2, 2);
        set(5, 0, 2, 2);
        return;
      case 3:
        set(0, 0, 0, 6 * x1);
        set(1, 1, 1, 6 * x2);
        set(2, 2, 2, 6 * x3);
        set(3, 0, 0, 6 * x2);
        set(3, 0, 1, 6 * x1);
        set(4, 1, 1, 6 * x1);
        set(4, 0, 1, 6 * x2);
        set(5, 1, 1, 6 * x3);
        set(5, 1, 2, 6 * x2);
        set(6, 2, 2, 6 * x2);
        set(6, 1, 2, 6 * x3);
        set(7, 2, 2, 6 * x1);
        set(7, 0, 2, 6 * x3);
        set(8, 0, 0, 6 * x3);
        set(8, 0, 2, 6 * x1);
        set(9, 0, 1, 6 * x3);
        set(9, 1, 2, 6 * x1);
        set(9, 0, 2, 6 * x2);
        return;
    }
  }
  throw ConfigError("unsupported basis degree " + std::to_string(degree));
}

const std::array<double, 3>* node_bary(int dim, int degree) {
  static const std::array<double, 3> i1[] = {{1, 0, 0}, {0, 1, 0}};
  static const std::array<double, 3> i2[] = {{1, 0, 0}, {0, 1, 0}, {0.5, 0.5, 0}};
  static const std::array<double, 3> i3[] = {
      {1, 0, 0}, {0, 1, 0}, {2. / 3, 1. / 3, 0}, {1. / 3, 2. / 3, 0}};
  static const std::array<double, 3> t1[] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  static const std::array<double, 3> t2[] = {{1, 0, 0},     {0, 1, 0},     {0, 0, 1},
                                             {0.5, 0.5, 0}, {0, 0.5, 0.5}, {0.5, 0, 0.5}};
  static const std::array<double, 3> t3[] = {
      {1, 0, 0},           {0, 1, 0},           {0, 0, 1},           {2. / 3, 1. / 3, 0},
      {1. / 3, 2. / 3, 0}, {0, 2. / 3, 1. / 3}, {0, 1. / 3, 2. / 3}, {1. / 3, 0, 2. / 3},
      {2. / 3, 0, 1. / 3}, {1. / 3, 1. / 3, 1. / 3}};
  if (dim == 1) {
    if (degree == 1) return i1;
    if (degree == 2) return i2;
    if (degree == 3) return i3;
  } else {
    if (degree == 1) return t1;
    if (degree == 2) return t2;
    if (degree == 3) return t3;
  }
  throw ConfigError("unsupported basis degree " + std::to_string(degree));
}

// ---------------------------------------------------------------------------
// quadrature
// ---------------------------------------------------------------------------

namespace {

void orbit3(QuadratureRule& r, double a, double w) {
  const double c = 1.0 - 2.0 * a;
  r.pts.push_back({a, a, c});
  r.pts.push_back({a, c, a});
  r.pts.push_back({c, a, a});
  r.w.insert(r.w.end(), 3, w);
}

void orbit6(QuadratureRule& r, double a, double b, double w) {
  const double c = 1.0 - a - b;
  r.pts.push_back({a, b, c});
  r.pts.push_back({a, c, b});
  r.pts.push_back({b, a, c});
  r.pts.push_back({b, c, a});
  r.pts.push_back({c, a, b});
  r.pts.push_back({c, b, a});
  r.w.insert(r.w.end(), 6, w);
}

}  // namespace

QuadratureRule triangle_quadrature(int exactness) {
  // Dunavant symmetric rules, all weights positive; normalized weights are
  // scaled by the reference area 1/2 at the end.
  QuadratureRule r;
  if (exactness <= 1) {
    r.exactness = 1;
    r.pts.push_back({1. / 3, 1. / 3, 1. / 3});
    r.w.push_back(1.0);
  } else if (exactness == 2) {
    r.exactness = 2;
    orbit3(r, 1. / 6, 1. / 3);
  } else if (exactness <= 4) {
    r.exactness = 4;
    orbit3(r, 0.4459484909159649, 0.2233815896780115);
    orbit3(r, 0.0915762135097707, 0.1099517436553219);
  } else if (exactness == 5) {
    r.exactness = 5;
    r.pts.push_back({1. / 3, 1. / 3, 1. / 3});
    r.w.push_back(0.225);
    orbit3(r, 0.4701420641051151, 0.1323941527885062);
    orbit3(r, 0.1012865073234563, 0.1259391805448272);
  } else if (exactness <= 6) {
    r.exactness = 6;
    orbit3(r, 0.2492867451709104, 0.1167862757263794);
    orbit3(r, 0.0630890144915022, 0.0508449063702068);
    orbit6(r, 0.3103524510337844, 0.0531450498448169, 0.0828510756183736);
  } else if (exactness <= 8) {
    r.exactness = 8;
    r.pts.push_back({1. / 3, 1. / 3, 1. / 3});
    r.w.push_back(0.1443156076777872);
    orbit3(r, 0.4592925882927232, 0.0950916342672846);
    orbit3(r, 0.1705693077517602, 0.1032173705347183);
    orbit3(r, 0.0505472283170310, 0.0324584976231981);
    orbit6(r, 0.2631128296346381, 0.0083947774099576, 0.0272303141744350);
  } else {
    throw ConfigError("triangle quadrature exactness " + std::to_string(exactness) +
                      " not supported (max 8)");
  }
  for (auto& w : r.w) w *= 0.5;
  return r;
}

QuadratureRule edge_quadrature(int exactness) {
  if (exactness > 9)
    throw ConfigError("edge quadrature exactness " + std::to_string(exactness) +
                      " not supported (max 9)");
  const int n = std::max(1, (exactness + 2) / 2);  // n-point Gauss: exact to 2n-1
  static const double X[5][5] = {
      {0, 0, 0, 0, 0},
      {-0.5773502691896257645, 0.5773502691896257645, 0, 0, 0},
      {-0.7745966692414833770, 0, 0.7745966692414833770, 0, 0},
      {-0.8611363115940525752, -0.3399810435848562648, 0.3399810435848562648,
       0.8611363115940525752, 0},
      {-0.9061798459386639928, -0.5384693101056830910, 0, 0.5384693101056830910,
       0.9061798459386639928}};
  static const double W[5][5] = {
      {2, 0, 0, 0, 0},
      {1, 1, 0, 0, 0},
      {5. / 9, 8. / 9, 5. / 9, 0, 0},
      {0.3478548451374538574, 0.6521451548625461426, 0.6521451548625461426,
       0.3478548451374538574, 0},
      {0.2369268850561890875, 0.4786286704993664680, 0.5688888888888888889,
       0.4786286704993664680, 0.2369268850561890875}};
  QuadratureRule r;
  r.exactness = 2 * n - 1;
  for (int i = 0; i < n; ++i) {
    const double s = 0.5 * (X[n - 1][i] + 1.0);
    r.pts.push_back({1.0 - s, s, 0.0});
    r.w.push_back(0.5 * W[n - 1][i]);
  }
  return r;
}

QuadratureRule volume_quadrature(int dim, int exactness) {
  return dim == 1 ? edge_quadrature(exactness) : triangle_quadrature(exactness);
}

void face_point_bary(int dim, int f, double s, double b[3]) {
  if (dim == 1) {
    // faces are the interval endpoints
    b[0] = (f == 0) ? 1.0 : 0.0;
    b[1] = 1.0 - b[0];
    b[2] = 0.0;
    return;
  }
  b[0] = b[1] = b[2] = 0.0;
  switch (f) {
    case 0:
      b[0] = 1.0 - s;
      b[1] = s;
      break;
    case 1:
      b[1] = 1.0 - s;
      b[2] = s;
      break;
    default:
      b[2] = 1.0 - s;
      b[0] = s;
      break;
  }
}

// ---------------------------------------------------------------------------

namespace {

// in-place Gauss-Jordan inverse for the small node matrices
void invert(double A[MAX_LOC][MAX_LOC], double Ainv[MAX_LOC][MAX_LOC], int n) {
  double M[MAX_LOC][2 * MAX_LOC];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      M[i][j] = A[i][j];
      M[i][n + j] = (i == j) ? 1.0 : 0.0;
    }
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int i = col + 1; i < n; ++i)
      if (std::abs(M[i][col]) > std::abs(M[piv][col])) piv = i;
    if (std::abs(M[piv][col]) < 1e-14) throw ConfigError("singular node matrix");
    if (piv != col)
      for (int j = 0; j < 2 * n; ++j) std::swap(M[piv][j], M[col][j]);
    const double d = M[col][col];
    for (int j = 0; j < 2 * n; ++j) M[col][j] /= d;
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      const double f = M[i][col];
      if (f == 0.0) continue;
      for (int j = 0; j < 2 * n; ++j) M[i][j] -= f * M[col][j];
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Ainv[i][j] = M[i][n + j];
}

}  // namespace

BasisSet make_basis_set(int dim, int degree) {
  BasisSet bs;
  bs.dim = dim;
  bs.degree = degree;
  bs.nloc = n_local_dofs(dim, degree);
  bs.n_faces = (dim == 1) ? 2 : 3;

  bs.vol = volume_quadrature(dim, 2 * degree);
  bs.vol_val.resize(static_cast<size_t>(bs.vol.size()) * bs.nloc);
  bs.vol_dbary.resize(static_cast<size_t>(bs.vol.size()) * bs.nloc * 3);
  double dv[MAX_LOC][3];
  for (int q = 0; q < bs.vol.size(); ++q) {
    bernstein_eval(dim, degree, bs.vol.pts[q].data(), &bs.vol_val[static_cast<size_t>(q) * bs.nloc]);
    bernstein_dbary(dim, degree, bs.vol.pts[q].data(), dv);
    for (int i = 0; i < bs.nloc; ++i)
      for (int k = 0; k < 3; ++k)
        bs.vol_dbary[(static_cast<size_t>(q) * bs.nloc + i) * 3 + k] = dv[i][k];
  }

  bs.face = (dim == 1) ? QuadratureRule{{{1, 0, 0}}, {1.0}, 99} : edge_quadrature(2 * degree + 1);
  const int nq = bs.face.size();
  bs.face_val.resize(static_cast<size_t>(bs.n_faces) * nq * bs.nloc);
  bs.face_dbary.resize(static_cast<size_t>(bs.n_faces) * nq * bs.nloc * 3);
  bs.face_d2bary.resize(static_cast<size_t>(bs.n_faces) * nq * bs.nloc * 9);
  double d2[MAX_LOC][9];
  for (int f = 0; f < bs.n_faces; ++f) {
    for (int q = 0; q < nq; ++q) {
      double b[3];
      face_point_bary(dim, f, bs.face.pts[q][1], b);
      bernstein_eval(dim, degree, b, &bs.face_val[(static_cast<size_t>(f) * nq + q) * bs.nloc]);
      bernstein_dbary(dim, degree, b, dv);
      bernstein_d2bary(dim, degree, b, d2);
      for (int i = 0; i < bs.nloc; ++i) {
        for (int k = 0; k < 3; ++k)
          bs.face_dbary[((static_cast<size_t>(f) * nq + q) * bs.nloc + i) * 3 + k] = dv[i][k];
        for (int k = 0; k < 9; ++k)
          bs.face_d2bary[((static_cast<size_t>(f) * nq + q) * bs.nloc + i) * 9 + k] = d2[i][k];
      }
    }
  }

  const auto* nodes = node_bary(dim, degree);
  for (int i = 0; i < bs.nloc; ++i) {
    double v[MAX_LOC];
    bernstein_eval(dim, degree, nodes[i].data(), v);
    for (int j = 0; j < bs.nloc; ++j) bs.node_matrix[i][j] = v[j];
  }
  invert(bs.node_matrix, bs.interp_matrix, bs.nloc);

  for (int i = 0; i < bs.nloc; ++i)
    for (int j = 0; j < bs.nloc; ++j) bs.mass_ref[i][j] = 0.0;
  for (int q = 0; q < bs.vol.size(); ++q)
    for (int i = 0; i < bs.nloc; ++i)
      for (int j = 0; j < bs.nloc; ++j)
        bs.mass_ref[i][j] += bs.vol.w[q] * bs.vval(q, i) * bs.vval(q, j);
  for (int i = 0; i < bs.nloc; ++i) {
    bs.csigma_ref[i] = 0.0;
    for (int j = 0; j < bs.nloc; ++j) bs.csigma_ref[i] += bs.mass_ref[i][j];
  }
  return bs;
}

}  // namespace rd
