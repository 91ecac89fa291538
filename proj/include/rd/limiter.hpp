#pragma once

#include "rd/physics.hpp"
#include "rd/state.hpp"

namespace rd {

struct LimiterConfig {
  enum class Mode { characteristic, scalar, none };
  Mode mode = Mode::characteristic;
  double pressure_floor = 0.0;  // absolute threshold; set from 1e-8 * initial max p
  bool blending = true;
};

struct StabilizationConfig {
  double theta1 = 0.0;
  double theta2 = 0.0;
};

/// Limited distribution of an element residual, one scalar field at a time:
/// beta = max(res/tot, 0) normalized, blended with the input by
/// Theta = |tot| / sum|res_sigma|.  When the field total vanishes the limited
/// residual is zero for that field (beta-part carries a zero total and the
/// degenerate-case rule sets Theta = 0); exact zero tests, no epsilons.
inline void limit_field(int nloc, double* r, bool blending) {
  double tot = 0.0, denom = 0.0;
  for (int i = 0; i < nloc; ++i) {
    tot += r[i];
    denom += std::abs(r[i]);
  }
  if (tot == 0.0) {
    for (int i = 0; i < nloc; ++i) r[i] = 0.0;
    return;
  }
  double bsum = 0.0;
  double beta[MAX_LOC];
  for (int i = 0; i < nloc; ++i) {
    beta[i] = std::max(r[i] / tot, 0.0);
    bsum += beta[i];
  }
  const double theta = blending ? std::abs(tot) / denom : 0.0;
  for (int i = 0; i < nloc; ++i) r[i] = (1.0 - theta) * (beta[i] / bsum) * tot + theta * r[i];
}

/// Scalar-mode limiting: applied independently per conserved component.
template <int NC>
void limit_scalar(int nloc, Vec<NC>* res) {
  double field[MAX_LOC];
  for (int c = 0; c < NC; ++c) {
    double tot = 0.0;
    for (int i = 0; i < nloc; ++i) {
      field[i] = res[i][c];
      tot += field[i];
    }
    if (tot == 0.0) {
      for (int i = 0; i < nloc; ++i) res[i][c] = 0.0;
      continue;
    }
    double bsum = 0.0;
    double beta[MAX_LOC];
    for (int i = 0; i < nloc; ++i) {
      beta[i] = std::max(field[i] / tot, 0.0);
      bsum += beta[i];
    }
    for (int i = 0; i < nloc; ++i) res[i][c] = (beta[i] / bsum) * tot;
  }
}

/// Characteristic-variable limiting with blending: project with the left
/// eigenvectors at Ubar, limit every characteristic field, project back.
/// Returns false (input untouched) if the eigen-decomposition is unavailable,
/// so the caller can fall back to scalar mode.
template <class Sys>
bool limit_characteristic(const Sys& sys, const typename Sys::State& Ubar, int nloc,
                          typename Sys::State* res, bool blending = true) {
  constexpr int NC = Sys::ncomp;
  if (!sys.admissible(Ubar)) return false;

  double n[Sys::dim > 0 ? Sys::dim : 1];
  sys.limit_direction(Ubar, n);
  EigenSystem<NC> es;
  try {
    es = sys.eigensystem(Ubar, n);
  } catch (const InvalidStateError&) {
    return false;
  }

  double hat[MAX_LOC][NC];
  for (int i = 0; i < nloc; ++i)
    for (int c = 0; c < NC; ++c) {
      double s = 0.0;
      for (int k = 0; k < NC; ++k) s += es.left[c][k] * res[i][k];
      hat[i][c] = s;
    }
  double field[MAX_LOC];
  for (int c = 0; c < NC; ++c) {
    for (int i = 0; i < nloc; ++i) field[i] = hat[i][c];
    limit_field(nloc, field, blending);
    for (int i = 0; i < nloc; ++i) hat[i][c] = field[i];
  }
  for (int i = 0; i < nloc; ++i)
    for (int c = 0; c < NC; ++c) {
      double s = 0.0;
      for (int k = 0; k < NC; ++k) s += es.right[c][k] * hat[i][k];
      res[i][c] = s;
    }
  return true;
}

}  // namespace rd
