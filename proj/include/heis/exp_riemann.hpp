#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "heis/detail.hpp"
#include "heis/group.hpp"

namespace heis {

// Initial covector on the level {H = 1/2} for P_eps:
//   h1 = cos(theta) cos(phi), h2 = cos(theta) sin(phi), eps*h3 = sin(theta),
// theta in [-pi/2, pi/2], phi an angle mod 2pi.
struct Momentum {
  double theta{0.0};
  double phi{0.0};
};

struct Geodesic {
  Metric metric;
  Momentum momentum;
  double duration{0.0}; // arclength time t
};

// Closed-form exponential map of P_eps. Continuous in (theta, phi, t)
// including across theta = 0: the removable h3 = 0 singularity is handled
// by series-stable evaluation of sin(tau)/tau, (cos(tau)-1)/tau^2 and
// (tau - sin(tau))/tau^3.
inline GroupPoint exp_riemann(const Metric& m, const Momentum& p, double t) {
  if (!(m.eps > 0.0)) throw std::domain_error("exp_riemann: requires eps > 0");
  if (!(t >= 0.0)) throw std::domain_error("exp_riemann: requires t >= 0");

  const double st = std::sin(p.theta);
  const double ct = std::cos(p.theta);
  const double h10 = ct * std::cos(p.phi);
  const double h20 = ct * std::sin(p.phi);
  const double h3 = st / m.eps;
  const double tau = h3 * t;

  const double sc = detail::sinc(tau);
  const double cm = detail::cosm1(tau);
  const double cb = detail::cubint(tau);

  GroupPoint q;
  q.x = t * (h10 * sc + h20 * tau * cm);
  q.y = t * (h20 * sc - h10 * tau * cm);
  q.z = 0.5 * ct * ct * t * t * tau * cb + m.eps * st * t;
  return q;
}

// Unit control (u1, u2, u3) along the geodesic at time t:
// u1 = h1(t), u2 = h2(t), u3 = eps*h3 = sin(theta).
inline std::array<double, 3> controls(const Metric& m, const Momentum& p, double t) {
  const double st = std::sin(p.theta);
  const double ct = std::cos(p.theta);
  const double h10 = ct * std::cos(p.phi);
  const double h20 = ct * std::sin(p.phi);
  const double tau = st / m.eps * t;
  const double cs = std::cos(tau);
  const double sn = std::sin(tau);
  return {h10 * cs - h20 * sn, h20 * cs + h10 * sn, st};
}

// f(theta, tau) = 2(cos(tau) - 1) + tau sin(tau) cos^2(theta).
// Vanishing of f detects the first caustic; f < 0 on tau in (0, 2pi).
inline double caustic_factor(double theta, double tau) {
  const double ct = std::cos(theta);
  return 2.0 * (std::cos(tau) - 1.0) + tau * std::sin(tau) * ct * ct;
}

// Jacobian det of (theta, phi, t) -> (x, y, z):
//   J = eps^3 cos(theta)/sin^4(theta) * f(theta, tau).
// The eps power follows from scaling: x, y are O(eps), z is O(eps^2) and
// d(tau)/dt = sin(theta)/eps, which forces eps^3 overall (checked against
// central differences). Defined for theta outside {0, +-pi/2}.
inline double jacobian_det(const Metric& m, const Momentum& p, double t) {
  if (!(m.eps > 0.0)) throw std::domain_error("jacobian_det: requires eps > 0");
  if (p.theta == 0.0 || std::abs(p.theta) >= detail::half_pi)
    throw std::domain_error("jacobian_det: theta must lie in (-pi/2, 0) u (0, pi/2)");
  const double st = std::sin(p.theta);
  const double ct = std::cos(p.theta);
  const double tau = st / m.eps * t;
  const double e3 = m.eps * m.eps * m.eps;
  return e3 * ct / (st * st * st * st) * caustic_factor(p.theta, tau);
}

// First conjugate time 2*pi*eps/|sin(theta)|; +inf for theta = 0 (straight
// lines carry no conjugate points). At theta = +-pi/2 this is the continuous
// limit 2*pi*eps, consistent with the axis case analysis.
inline double conjugate_time(const Metric& m, const Momentum& p) {
  if (!(m.eps > 0.0)) throw std::domain_error("conjugate_time: requires eps > 0");
  const double s = std::abs(std::sin(p.theta));
  if (p.theta == 0.0 || s == 0.0) return std::numeric_limits<double>::infinity();
  return detail::two_pi * m.eps / s;
}

// First conjugate point (0, 0, pi*eps^2 (1 + sin^2 theta)/sin^2 theta),
// with the sign of z matching the sign of theta.
inline GroupPoint conjugate_point(const Metric& m, const Momentum& p) {
  if (!(m.eps > 0.0)) throw std::domain_error("conjugate_point: requires eps > 0");
  if (p.theta == 0.0) throw std::domain_error("conjugate_point: undefined at theta = 0");
  const double st = std::sin(p.theta);
  const double s2 = st * st;
  const double z = detail::pi * m.eps * m.eps * (1.0 + s2) / s2;
  return {0.0, 0.0, p.theta > 0.0 ? z : -z};
}

// Cut time coincides with the first conjugate time for this family.
inline double cut_time(const Metric& m, const Momentum& p) { return conjugate_time(m, p); }

// Full extremal state used by the ODE oracle.
struct ExtremalState {
  double h1, h2, h3;
  GroupPoint q;
};

// Fixed-step RK4 integration of the Hamiltonian system
//   h1' = -h2 h3, h2' = h1 h3, h3' = 0,
//   x' = h1, y' = h2, z' = -y/2 h1 + x/2 h2 + eps^2 h3.
// Independent of the closed-form path; used as a cross-check oracle.
inline ExtremalState integrate_extremal(const Metric& m, const Momentum& p, double t,
                                        double step) {
  if (!(step > 0.0)) throw std::domain_error("integrate_extremal: requires step > 0");
  const double ct = std::cos(p.theta);
  const double e2 = m.eps * m.eps;

  std::array<double, 6> s{ct * std::cos(p.phi), ct * std::sin(p.phi),
                          std::sin(p.theta) / m.eps, 0.0, 0.0, 0.0};
  auto rhs = [e2](const std::array<double, 6>& u) -> std::array<double, 6> {
    return {-u[1] * u[2], u[0] * u[2], 0.0,
            u[0], u[1], -0.5 * u[4] * u[0] + 0.5 * u[3] * u[1] + e2 * u[2]};
  };

  const long n = std::max(1L, static_cast<long>(std::ceil(t / step)));
  const double dt = t / static_cast<double>(n);
  for (long i = 0; i < n; ++i) {
    const auto k1 = rhs(s);
    std::array<double, 6> u;
    for (int j = 0; j < 6; ++j) u[j] = s[j] + 0.5 * dt * k1[j];
    const auto k2 = rhs(u);
    for (int j = 0; j < 6; ++j) u[j] = s[j] + 0.5 * dt * k2[j];
    const auto k3 = rhs(u);
    for (int j = 0; j < 6; ++j) u[j] = s[j] + dt * k3[j];
    const auto k4 = rhs(u);
    for (int j = 0; j < 6; ++j)
      s[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
  return {s[0], s[1], s[2], {s[3], s[4], s[5]}};
}

inline GroupPoint exp_ode_oracle(const Metric& m, const Momentum& p, double t, double step) {
  return integrate_extremal(m, p, t, step).q;
}

} // namespace heis
