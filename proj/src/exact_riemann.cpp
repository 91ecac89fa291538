#include "rd/exact_riemann.hpp"

#include <cmath>

namespace rd {

namespace {

// f_K(p) and its derivative for the star-state pressure iteration
void side_function(double p, const std::array<double, 3>& w, double g, double c, double& f,
                   double& df) {
  const double rho = w[0], pk = w[2];
  if (p > pk) {  // shock
    const double A = 2.0 / ((g + 1.0) * rho);
    const double B = (g - 1.0) / (g + 1.0) * pk;
    const double q = std::sqrt(A / (p + B));
    f = (p - pk) * q;
    df = q * (1.0 - 0.5 * (p - pk) / (p + B));
  } else {  // rarefaction
    const double pr = p / pk;
    f = 2.0 * c / (g - 1.0) * (std::pow(pr, (g - 1.0) / (2.0 * g)) - 1.0);
    df = std::pow(pr, -(g + 1.0) / (2.0 * g)) / (rho * c);
  }
}

}  // namespace

ExactRiemann::ExactRiemann(const std::array<double, 3>& left, const std::array<double, 3>& right,
                           double gamma)
    : wl_(left), wr_(right), g_(gamma) {
  if (!(wl_[0] > 0 && wr_[0] > 0 && wl_[2] > 0 && wr_[2] > 0))
    throw std::runtime_error("Riemann solver needs positive densities and pressures");
  cl_ = std::sqrt(g_ * wl_[2] / wl_[0]);
  cr_ = std::sqrt(g_ * wr_[2] / wr_[0]);
  const double du = wr_[1] - wl_[1];
  if (2.0 * (cl_ + cr_) / (g_ - 1.0) <= du) throw VacuumError("vacuum forms between the states");

  // two-rarefaction initial guess, positivity-clamped
  double p = std::pow((cl_ + cr_ - 0.5 * (g_ - 1.0) * du) /
                          (cl_ / std::pow(wl_[2], (g_ - 1.0) / (2 * g_)) +
                           cr_ / std::pow(wr_[2], (g_ - 1.0) / (2 * g_))),
                      2.0 * g_ / (g_ - 1.0));
  p = std::max(p, 1e-12 * std::min(wl_[2], wr_[2]));
  for (int it = 0; it < 100; ++it) {
    double fl, dfl, fr, dfr;
    side_function(p, wl_, g_, cl_, fl, dfl);
    side_function(p, wr_, g_, cr_, fr, dfr);
    const double f = fl + fr + du;
    const double dp = f / (dfl + dfr);
    double pn = p - dp;
    if (pn <= 0.0) pn = 0.5 * p;
    if (std::abs(pn - p) <= 1e-14 * (pn + p)) {
      p = pn;
      break;
    }
    p = pn;
  }
  p_star_ = p;
  double fl, dfl, fr, dfr;
  side_function(p, wl_, g_, cl_, fl, dfl);
  side_function(p, wr_, g_, cr_, fr, dfr);
  u_star_ = 0.5 * (wl_[1] + wr_[1]) + 0.5 * (fr - fl);
}

std::array<double, 3> ExactRiemann::sample(double xi) const {
  const double g = g_;
  const double gm1 = g - 1.0, gp1 = g + 1.0;
  if (xi <= u_star_) {  // left of the contact
    const double rho = wl_[0], u = wl_[1], p = wl_[2], c = cl_;
    if (p_star_ > p) {  // left shock
      const double ps = p_star_ / p;
      const double s = u - c * std::sqrt((gp1 * ps + gm1) / (2.0 * g));
      if (xi <= s) return wl_;
      const double rs = rho * (ps + gm1 / gp1) / (gm1 / gp1 * ps + 1.0);
      return {rs, u_star_, p_star_};
    }
    const double head = u - c;
    if (xi <= head) return wl_;
    const double cs = c * std::pow(p_star_ / p, gm1 / (2.0 * g));
    const double tail = u_star_ - cs;
    if (xi >= tail) return {rho * std::pow(p_star_ / p, 1.0 / g), u_star_, p_star_};
    const double cfan = (2.0 * c + gm1 * (u - xi)) / gp1;
    const double ufan = xi + cfan;
    return {rho * std::pow(cfan / c, 2.0 / gm1), ufan, p * std::pow(cfan / c, 2.0 * g / gm1)};
  }
  const double rho = wr_[0], u = wr_[1], p = wr_[2], c = cr_;
  if (p_star_ > p) {  // right shock
    const double ps = p_star_ / p;
    const double s = u + c * std::sqrt((gp1 * ps + gm1) / (2.0 * g));
    if (xi >= s) return wr_;
    const double rs = rho * (ps + gm1 / gp1) / (gm1 / gp1 * ps + 1.0);
    return {rs, u_star_, p_star_};
  }
  const double head = u + c;
  if (xi >= head) return wr_;
  const double cs = c * std::pow(p_star_ / p, gm1 / (2.0 * g));
  const double tail = u_star_ + cs;
  if (xi <= tail) return {rho * std::pow(p_star_ / p, 1.0 / g), u_star_, p_star_};
  const double cfan = (2.0 * c - gm1 * (u - xi)) / gp1;
  const double ufan = xi - cfan;
  return {rho * std::pow(cfan / c, 2.0 / gm1), ufan, p * std::pow(cfan / c, 2.0 * g / gm1)};
}

}  // namespace rd
