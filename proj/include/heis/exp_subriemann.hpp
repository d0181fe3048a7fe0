#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "heis/detail.hpp"
#include "heis/group.hpp"

namespace heis {

// Initial covector for P_0: h1 = cos(psi), h2 = sin(psi), h3 = c.
struct SRMomentum {
  double c{0.0};
  double psi{0.0};
};

// Closed-form sub-Riemannian exponential map, continuous across c = 0.
inline GroupPoint exp_sr(const SRMomentum& p, double t) {
  if (!(t >= 0.0)) throw std::domain_error("exp_sr: requires t >= 0");
  const double sigma = p.c * t;
  const double cp = std::cos(p.psi);
  const double sp = std::sin(p.psi);

  const double sc = detail::sinc(sigma);
  const double cm = detail::cosm1(sigma);
  const double cb = detail::cubint(sigma);

  GroupPoint q;
  q.x = t * (cp * sc + sp * sigma * cm);
  q.y = t * (sp * sc - cp * sigma * cm);
  q.z = 0.5 * t * t * sigma * cb;
  return q;
}

// Cut time 2*pi/|c|; +inf for c = 0.
inline double cut_time_sr(const SRMomentum& p) {
  if (p.c == 0.0) return std::numeric_limits<double>::infinity();
  return detail::two_pi / std::abs(p.c);
}

} // namespace heis
