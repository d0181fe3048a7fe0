#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "heis/detail.hpp"
#include "heis/exp_riemann.hpp"
#include "heis/exp_subriemann.hpp"
#include "heis/group.hpp"
#include "heis/synthesis.hpp"

namespace heis {

// Membership in the cut locus (which equals the first caustic):
//   eps > 0:  {(0, 0, z) : |z| >= 2 pi eps^2}
//   eps == 0: {(0, 0, z) : z != 0}
// slack is an absolute tolerance for the axis equalities (default exact).
inline bool in_cut_locus(const Metric& m, const GroupPoint& q, double slack = 0.0) {
  if (q.x * q.x + q.y * q.y > slack * slack) return false;
  if (m.sub_riemannian()) return std::abs(q.z) > slack;
  return std::abs(q.z) >= detail::two_pi * m.eps * m.eps - slack;
}

inline double injectivity_radius(const Metric& m) {
  if (!(m.eps > 0.0))
    throw std::domain_error("injectivity_radius: degenerate at eps = 0 (r_i = 0)");
  return detail::two_pi * m.eps;
}

struct SphereSample {
  double theta; // band parameter: theta for eps > 0, the momentum c for eps = 0
  double phi;
  GroupPoint point;
};

struct SphereSampleSet {
  Metric metric;
  double radius;
  int n_theta;
  int n_phi;
  std::vector<SphereSample> samples; // ordered by (theta index, phi index)
};

// Uniform (theta, phi) grid over the admissible band of the sphere S(r):
//   eps > 0: theta in [-theta_max, theta_max], theta_max = arcsin(min(1, 2 pi eps / r))
//   eps = 0: c in [-2 pi / r, 2 pi / r]
// Band edges are included exactly so axis touching is represented.
inline SphereSampleSet sample_sphere(const Metric& m, double r, int n_theta, int n_phi) {
  if (!(r > 0.0)) throw std::domain_error("sample_sphere: requires r > 0");
  if (n_theta < 2 || n_phi < 2) throw std::domain_error("sample_sphere: counts must be >= 2");

  SphereSampleSet set{m, r, n_theta, n_phi, {}};
  set.samples.reserve(static_cast<size_t>(n_theta) * n_phi);
  const double band = m.sub_riemannian()
                          ? detail::two_pi / r
                          : std::asin(std::min(1.0, detail::two_pi * m.eps / r));
  for (int i = 0; i < n_theta; ++i) {
    const double u = -band + 2.0 * band * i / (n_theta - 1.0);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = detail::two_pi * j / n_phi;
      const GroupPoint p = m.sub_riemannian() ? exp_sr({u, phi}, r)
                                              : exp_riemann(m, {u, phi}, r);
      set.samples.push_back({u, phi, p});
    }
  }
  return set;
}

struct MeridianPoint {
  double theta;
  double rho;
  double z;
};

// Meridian polyline (rho(theta), z(theta)) of a sphere sample set, ordered by
// theta. Spheres are surfaces of revolution about the z axis, so the meridian
// determines them.
inline std::vector<MeridianPoint> cross_section(const SphereSampleSet& s) {
  std::vector<MeridianPoint> out;
  out.reserve(s.n_theta);
  for (int i = 0; i < s.n_theta; ++i) {
    const SphereSample& smp = s.samples[static_cast<size_t>(i) * s.n_phi];
    out.push_back({smp.theta, std::hypot(smp.point.x, smp.point.y), smp.point.z});
  }
  return out;
}

// d is smooth at q iff q lies outside Cut u {identity}.
inline bool distance_smooth_at(const Metric& m, const GroupPoint& q) {
  if (q.x == 0.0 && q.y == 0.0 && q.z == 0.0) return false;
  return !in_cut_locus(m, q);
}

enum class Smoothness { Smooth, NonSmooth, Unknown };

// Smoothness of the sphere S(r) at one of its points. Axis points are
// classified against the injectivity radius 2 pi eps: the nearest cut point
// (0, 0, +-2 pi eps^2) lies at distance exactly 2 pi eps. Whether S(2 pi eps)
// is smooth at its axis points is an open question.
inline Smoothness sphere_smoothness(const Metric& m, double r, const GroupPoint& q,
                                    double tol = 1e-8) {
  if (!(m.eps > 0.0)) throw std::domain_error("sphere_smoothness: requires eps > 0");
  if (std::abs(distance(m, q) - r) > tol)
    throw std::invalid_argument("sphere_smoothness: point is not on S(r)");
  if (q.x * q.x + q.y * q.y != 0.0) return Smoothness::Smooth;
  const double ri = detail::two_pi * m.eps;
  if (std::abs(r - ri) <= 1e-12 * std::max(1.0, ri)) return Smoothness::Unknown;
  return r < ri ? Smoothness::Smooth : Smoothness::NonSmooth;
}

// Finite-difference check of the three 2x2 minors of the sphere chart
// (h1_0, h2_0) -> (x, y, z) at h1_0 = h2_0 = 0 and time r = 2 pi eps.
// All three vanish at the axis point of S(2 pi eps).
inline std::array<double, 3> sphere_chart_minors(const Metric& m, double h) {
  if (!(m.eps > 0.0)) throw std::domain_error("sphere_chart_minors: requires eps > 0");
  if (!(h > 0.0)) throw std::domain_error("sphere_chart_minors: requires h > 0");
  const double eps = m.eps;
  const double t = detail::two_pi * eps;

  // Chart on {H = 1/2} near theta = pi/2, written directly in (h1_0, h2_0)
  // to stay smooth at the origin of the chart.
  auto chart = [&](double a, double b) -> GroupPoint {
    const double rho2 = a * a + b * b;
    const double h3 = std::sqrt(1.0 - rho2) / eps;
    const double tau = h3 * t;
    const double sn = std::sin(tau);
    const double cm = std::cos(tau) - 1.0;
    GroupPoint p;
    p.x = (a * sn + b * cm) / h3;
    p.y = (b * sn - a * cm) / h3;
    p.z = rho2 * (tau - sn) / (2.0 * h3 * h3) + eps * eps * tau;
    return p;
  };

  const GroupPoint ap = chart(h, 0.0), am = chart(-h, 0.0);
  const GroupPoint bp = chart(0.0, h), bm = chart(0.0, -h);
  const double d1x = (ap.x - am.x) / (2.0 * h), d2x = (bp.x - bm.x) / (2.0 * h);
  const double d1y = (ap.y - am.y) / (2.0 * h), d2y = (bp.y - bm.y) / (2.0 * h);
  const double d1z = (ap.z - am.z) / (2.0 * h), d2z = (bp.z - bm.z) / (2.0 * h);
  return {d1x * d2y - d1y * d2x, d1x * d2z - d1z * d2x, d1y * d2z - d1z * d2y};
}

} // namespace heis
