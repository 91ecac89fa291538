#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rd {

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
inline Vec<N> operator+(const Vec<N>& a, const Vec<N>& b) {
  Vec<N> r;
  for (int i = 0; i < N; ++i) r[i] = a[i] + b[i];
  return r;
}

template <std::size_t N>
inline Vec<N> operator-(const Vec<N>& a, const Vec<N>& b) {
  Vec<N> r;
  for (int i = 0; i < N; ++i) r[i] = a[i] - b[i];
  return r;
}

template <std::size_t N>
inline Vec<N> operator*(double s, const Vec<N>& a) {
  Vec<N> r;
  for (int i = 0; i < N; ++i) r[i] = s * a[i];
  return r;
}

template <std::size_t N>
inline Vec<N>& operator+=(Vec<N>& a, const Vec<N>& b) {
  for (int i = 0; i < N; ++i) a[i] += b[i];
  return a;
}

template <std::size_t N>
inline void axpy(double s, const Vec<N>& x, Vec<N>& y) {
  for (int i = 0; i < N; ++i) y[i] += s * x[i];
}

template <std::size_t N>
inline double norm1(const Vec<N>& a) {
  double s = 0;
  for (int i = 0; i < N; ++i) s += std::abs(a[i]);
  return s;
}

template <std::size_t N>
inline bool finite(const Vec<N>& a) {
  for (int i = 0; i < N; ++i)
    if (!std::isfinite(a[i])) return false;
  return true;
}

/// Thrown when a state with non-positive density/pressure (or NaN) is hit
/// where a physically valid state is required.
class InvalidStateError : public std::runtime_error {
 public:
  explicit InvalidStateError(const std::string& what, int element = -1)
      : std::runtime_error(what), element_(element) {}
  int element() const { return element_; }

 private:
  int element_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rd
