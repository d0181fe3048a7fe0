#pragma once

#include <cmath>
#include <numbers>

namespace heis::detail {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double half_pi = 0.5 * std::numbers::pi;

// Entire functions appearing in the extremal formulas, evaluated by series
// near zero so the h3 -> 0 (resp. c -> 0) limit is seamless.

// sin(t)/t
inline double sinc(double t) {
  const double t2 = t * t;
  if (std::abs(t) < 1e-3) return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
  return std::sin(t) / t;
}

// (cos(t) - 1)/t^2
inline double cosm1(double t) {
  const double t2 = t * t;
  if (std::abs(t) < 1e-3) return -0.5 + t2 / 24.0 - t2 * t2 / 720.0;
  return (std::cos(t) - 1.0) / t2;
}

// (t - sin(t))/t^3
inline double cubint(double t) {
  const double t2 = t * t;
  if (std::abs(t) < 1e-3) return 1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0;
  return (t - std::sin(t)) / (t2 * t);
}

// Normalize an angle to (-pi, pi].
inline double normalize_angle(double a) {
  a = std::fmod(a, two_pi);
  if (a <= -pi) a += two_pi;
  if (a > pi) a -= two_pi;
  return a;
}

} // namespace heis::detail
