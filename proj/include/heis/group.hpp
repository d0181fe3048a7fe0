#pragma once

#include <cmath>
#include <stdexcept>

namespace heis {

// Point (x, y, z) of the Heisenberg group M = R^3.
struct GroupPoint {
  double x{0.0};
  double y{0.0};
  double z{0.0};
};

// Family parameter eps selecting the problem P_eps. eps > 0 is Riemannian,
// eps == 0 is the sub-Riemannian problem P_0.
struct Metric {
  double eps;

  explicit Metric(double e) : eps(e) {
    if (!(eps >= 0.0)) throw std::domain_error("Metric: eps must be >= 0");
  }

  bool sub_riemannian() const { return eps == 0.0; }
};

inline GroupPoint group_multiply(const GroupPoint& a, const GroupPoint& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z + 0.5 * (a.x * b.y - b.x * a.y)};
}

inline GroupPoint group_inverse(const GroupPoint& a) { return {-a.x, -a.y, -a.z}; }

// Left translation L_a(q) = a * q. Distance between two base points reduces
// to a single distance from the identity via d(a, b) = d(Id, a^{-1} b).
inline GroupPoint left_translate(const GroupPoint& a, const GroupPoint& q) {
  return group_multiply(a, q);
}

// Rotation about the z axis; an isometry of every metric in the family.
inline GroupPoint rotate_about_z(const GroupPoint& q, double alpha) {
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  return {c * q.x - s * q.y, s * q.x + c * q.y, q.z};
}

// The isometry (x, y, z) -> (x, -y, -z). On covectors it acts as
// (theta, phi) -> (-theta, -phi). Involutive.
inline GroupPoint reflect_vertical(const GroupPoint& q) { return {q.x, -q.y, -q.z}; }

} // namespace heis
