// Test-only reference computations, kept independent of the library's
// implementation paths.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

inline double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Exact integral of x1^a x2^b x3^c over the reference triangle (area 1/2).
inline double tri_monomial(int a, int b, int c) {
  return factorial(a) * factorial(b) * factorial(c) / factorial(a + b + c + 2);
}

/// Exact integral of s^a (1-s)^b over [0,1].
inline double seg_monomial(int a, int b) {
  return factorial(a) * factorial(b) / factorial(a + b + 1);
}

/// Composite-Simpson integration, fine enough for 1e-13 checks of smooth f.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        int panels = 20000) {
  double s = f(a) + f(b);
  const double h = (b - a) / panels;
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// Lagrange basis ell_l on the given nodes.
inline double lagrange(const std::vector<double>& nodes, int l, double s) {
  double v = 1.0;
  for (size_t j = 0; j < nodes.size(); ++j) {
    if (static_cast<int>(j) == l) continue;
    v *= (s - nodes[j]) / (nodes[l] - nodes[j]);
  }
  return v;
}

/// Central finite-difference Jacobian of a vector map, step 1e-6 scaled by
/// the component magnitude (keeps the difference quotient well conditioned).
template <int N, class F>
std::array<std::array<double, N>, N> fd_jacobian(F&& f, const std::array<double, N>& x,
                                                 double h = 1e-6) {
  std::array<std::array<double, N>, N> J{};
  for (int j = 0; j < N; ++j) {
    const double hj = h * (1.0 + std::abs(x[j]));
    auto xp = x, xm = x;
    xp[j] += hj;
    xm[j] -= hj;
    const auto fp = f(xp), fm = f(xm);
    for (int i = 0; i < N; ++i) J[i][j] = (fp[i] - fm[i]) / (2 * hj);
  }
  return J;
}

/// xorshift-based deterministic pseudo-random doubles in [lo, hi)
struct Rng {
  uint64_t s;
  explicit Rng(uint64_t seed = 12345) : s(seed ? seed : 1) {}
  double next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return static_cast<double>(s % 1000000007ULL) / 1000000007.0;
  }
  double in(double lo, double hi) { return lo + (hi - lo) * next(); }
};

}  // namespace oracle
