#pragma once

#include <array>
#include <stdexcept>

namespace rd {

/// Classical iterative exact Riemann solver for the 1D Euler equations.
/// States are primitive (rho, u, p). sample() returns the self-similar
/// solution at speed xi = x/t.
class ExactRiemann {
 public:
  ExactRiemann(const std::array<double, 3>& left, const std::array<double, 3>& right,
               double gamma);

  double p_star() const { return p_star_; }
  double u_star() const { return u_star_; }

  std::array<double, 3> sample(double xi) const;

 private:
  std::array<double, 3> wl_, wr_;
  double g_;
  double p_star_ = 0.0, u_star_ = 0.0;
  double cl_ = 0.0, cr_ = 0.0;
};

class VacuumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rd
