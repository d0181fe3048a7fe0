#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "heis/detail.hpp"
#include "heis/exp_riemann.hpp"
#include "heis/group.hpp"

namespace heis {

struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Unreached : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Branch { Generic, Plane, AxisShort, AxisLong, Identity };

inline const char* to_string(Branch b) {
  switch (b) {
    case Branch::Generic: return "generic";
    case Branch::Plane: return "plane";
    case Branch::AxisShort: return "axis-short";
    case Branch::AxisLong: return "axis-long";
    case Branch::Identity: return "identity";
  }
  return "?";
}

// Result of inverse-exponential solving. The residual is the point-space
// max-norm error scaled by max(1, |q|_inf), so it is meaningful uniformly
// over the unbounded domain.
struct SolveReport {
  Momentum momentum;
  double time{0.0};
  double residual{0.0};
  int iterations{0};
  Branch branch{Branch::Generic};
};

namespace detail {

// Points (x, y, z) with rho below this relative threshold are routed to the
// axis closed forms; the meridian Jacobian degenerates as tau -> 2pi there.
inline constexpr double axis_rho_threshold = 1e-7;

// Points with |z| below this relative threshold are routed to the plane
// branch: the distance is even in z, so d = rho + O(z^2) and the branch
// answer is exact to ~1e-18 here, while the Newton solution has tau ~ z/rho
// which degenerates below the solver's clamp.
inline constexpr double plane_z_threshold = 1e-9;

inline double max_norm(const GroupPoint& q) {
  return std::max({std::abs(q.x), std::abs(q.y), std::abs(q.z)});
}

// Meridian coordinates of the extremal endpoint for (theta, tau) in
// N = (0, pi/2) x (0, 2pi):
//   rho = 2 eps cot(theta) sin(tau/2),
//   z   = eps^2 (cot^2(theta) (tau - sin tau)/2 + tau).
struct Meridian {
  double rho, z;
};

inline Meridian meridian_point(double eps, double theta, double tau) {
  const double cot = std::cos(theta) / std::sin(theta);
  const double e2 = eps * eps;
  return {2.0 * eps * cot * std::sin(0.5 * tau),
          e2 * (0.5 * cot * cot * (tau - std::sin(tau)) + tau)};
}

} // namespace detail

// Numerical inverse of Exp on its diffeomorphism domain
// N = (0, pi/2) x S^1 x (0, 2pi) -> D = {x^2 + y^2 > 0, z > 0}.
// Points with z < 0 are reduced by reflect_vertical and the recovered
// covector mapped back via (theta, phi) -> (-theta, -phi).
//
// By rotational symmetry the problem reduces to a 2D damped Newton solve for
// (theta, tau) on the meridian data (rho, z); phi is recovered afterwards
// from the (x, y) phase and t = tau * eps / sin(theta).
inline SolveReport invert_exp(const Metric& m, const GroupPoint& q_in, double tol = 1e-12) {
  if (!(m.eps > 0.0)) throw std::domain_error("invert_exp: requires eps > 0");
  if (!(tol > 0.0)) throw std::domain_error("invert_exp: requires tol > 0");
  const double rho = std::hypot(q_in.x, q_in.y);
  if (rho == 0.0 || q_in.z == 0.0)
    throw std::domain_error("invert_exp: point outside D (x^2 + y^2 > 0, z != 0 required)");

  const bool reflected = q_in.z < 0.0;
  const GroupPoint q = reflected ? reflect_vertical(q_in) : q_in;
  const double eps = m.eps;
  const double s_rho = 1.0 / std::max(1.0, rho);
  const double s_z = 1.0 / std::max(1.0, q.z);
  const double scale_q = std::max(1.0, detail::max_norm(q));

  auto scaled_residual = [&](double theta, double tau) {
    const auto mp = detail::meridian_point(eps, theta, tau);
    const double f1 = (mp.rho - rho) * s_rho;
    const double f2 = (mp.z - q.z) * s_z;
    return std::array<double, 2>{f1, f2};
  };
  auto res_norm = [](const std::array<double, 2>& f) {
    return std::hypot(f[0], f[1]);
  };

  // Coarse seed scan over cell centers of N.
  constexpr int n_seed = 64;
  struct Seed {
    double theta, tau, norm;
  };
  std::vector<Seed> seeds;
  seeds.reserve(n_seed * n_seed);
  for (int i = 0; i < n_seed; ++i) {
    const double theta = (i + 0.5) * heis::detail::half_pi / n_seed;
    for (int j = 0; j < n_seed; ++j) {
      const double tau = (j + 0.5) * heis::detail::two_pi / n_seed;
      seeds.push_back({theta, tau, res_norm(scaled_residual(theta, tau))});
    }
  }
  std::partial_sort(seeds.begin(), seeds.begin() + 4, seeds.end(),
                    [](const Seed& a, const Seed& b) { return a.norm < b.norm; });

  constexpr double lo = 1e-12;
  const double theta_hi = heis::detail::half_pi - 1e-12;
  const double tau_hi = heis::detail::two_pi - 1e-12;
  constexpr int max_iter = 100;

  int iterations = 0;
  for (int attempt = 0; attempt < 4; ++attempt) {
    double theta = seeds[attempt].theta;
    double tau = seeds[attempt].tau;
    auto f = scaled_residual(theta, tau);
    double norm = res_norm(f);

    for (int iter = 0; iter < max_iter && norm > 1e-15; ++iter) {
      ++iterations;
      const double st = std::sin(theta);
      const double ctn = std::cos(theta) / st;
      const double e2 = eps * eps;
      // Analytic meridian Jacobian, row-scaled like the residual.
      const double j11 = -2.0 * eps * std::sin(0.5 * tau) / (st * st) * s_rho;
      const double j12 = eps * ctn * std::cos(0.5 * tau) * s_rho;
      const double j21 = -e2 * (tau - std::sin(tau)) * ctn / (st * st) * s_z;
      const double j22 = e2 * (0.5 * ctn * ctn * (1.0 - std::cos(tau)) + 1.0) * s_z;
      const double det = j11 * j22 - j12 * j21;
      if (std::abs(det) < 1e-300) break;
      const double d_theta = (f[0] * j22 - f[1] * j12) / det;
      const double d_tau = (f[1] * j11 - f[0] * j21) / det;

      double lambda = 1.0;
      bool improved = false;
      for (int k = 0; k < 40; ++k, lambda *= 0.5) {
        const double th_c = std::clamp(theta - lambda * d_theta, lo, theta_hi);
        const double ta_c = std::clamp(tau - lambda * d_tau, lo, tau_hi);
        const auto f_c = scaled_residual(th_c, ta_c);
        const double n_c = res_norm(f_c);
        if (n_c < norm) {
          theta = th_c;
          tau = ta_c;
          f = f_c;
          norm = n_c;
          improved = true;
          break;
        }
      }
      if (!improved) break;
    }

    // Recover (phi, t) and verify the full point-space residual.
    const double t = tau * eps / std::sin(theta);
    const GroupPoint meridian = exp_riemann(m, {theta, 0.0}, t);
    double phi = heis::detail::normalize_angle(std::atan2(q.y, q.x) -
                                               std::atan2(meridian.y, meridian.x));
    const GroupPoint back = exp_riemann(m, {theta, phi}, t);
    const double err =
        std::max({std::abs(back.x - q.x), std::abs(back.y - q.y), std::abs(back.z - q.z)});
    if (err <= tol * scale_q) {
      SolveReport rep;
      rep.momentum = reflected
                         ? Momentum{-theta, heis::detail::normalize_angle(-phi)}
                         : Momentum{theta, phi};
      rep.time = t;
      rep.residual = err / scale_q;
      rep.iterations = iterations;
      rep.branch = Branch::Generic;
      return rep;
    }
  }
  throw NoConvergence("invert_exp: Newton failed to reach tolerance after restarts");
}

// Full branch dispatch of the optimal synthesis: distance and a minimizing
// covector for an arbitrary endpoint.
//   identity            d = 0
//   plane z = 0         d = sqrt(x^2 + y^2), straight line
//   axis |z| <= 2 pi eps^2   d = |z|/eps, vertical geodesic theta = +-pi/2
//   axis |z| >  2 pi eps^2   d = 2 pi eps sqrt(|z|/(pi eps^2) - 1)
//   generic             d = time of the unique preimage under Exp|_N
inline SolveReport solve_point(const Metric& m, const GroupPoint& q, double tol = 1e-12) {
  if (!(m.eps > 0.0)) throw std::domain_error("solve_point: requires eps > 0");
  if (!(tol > 0.0)) throw std::domain_error("solve_point: requires tol > 0");
  const double rho = std::hypot(q.x, q.y);
  const double az = std::abs(q.z);
  const double eps = m.eps;

  SolveReport rep;
  if (q.x == 0.0 && q.y == 0.0 && q.z == 0.0) {
    rep.branch = Branch::Identity;
    return rep;
  }
  if (std::abs(q.z) <= detail::plane_z_threshold * std::max(1.0, rho) && rho > 0.0) {
    rep.branch = Branch::Plane;
    rep.momentum = {0.0, std::atan2(q.y, q.x)};
    rep.time = rho;
    rep.residual = std::abs(q.z) / std::max(1.0, detail::max_norm(q));
    return rep;
  }
  if (rho < detail::axis_rho_threshold * std::max(1.0, az)) {
    const double zcut = heis::detail::two_pi * eps * eps;
    const double sign = q.z > 0.0 ? 1.0 : -1.0;
    if (az <= zcut) {
      rep.branch = Branch::AxisShort;
      rep.momentum = {sign * heis::detail::half_pi, 0.0};
      rep.time = az / eps;
    } else {
      const double w = az / (heis::detail::pi * eps * eps) - 1.0;
      rep.branch = Branch::AxisLong;
      rep.momentum = {sign * std::asin(1.0 / std::sqrt(w)), 0.0};
      rep.time = heis::detail::two_pi * eps * std::sqrt(w);
    }
    return rep;
  }
  return invert_exp(m, q, tol);
}

inline double distance(const Metric& m, const GroupPoint& q, double tol = 1e-12) {
  return solve_point(m, q, tol).time;
}

inline double distance_between(const Metric& m, const GroupPoint& a, const GroupPoint& b,
                               double tol = 1e-12) {
  return distance(m, group_multiply(group_inverse(a), b), tol);
}

enum class Multiplicity {
  Unique,           // exactly one minimizer
  CircleFamily,     // phi-circle of minimizers (Maxwell point on the axis)
  DegenerateFamily, // boundary |z| = 2 pi eps^2: conjugate axis endpoint
};

struct MinimizerSet {
  std::vector<Geodesic> geodesics; // canonical representative(s)
  Multiplicity multiplicity{Multiplicity::Unique};
  SolveReport report;
};

inline MinimizerSet minimizers(const Metric& m, const GroupPoint& q, double tol = 1e-12) {
  MinimizerSet out;
  out.report = solve_point(m, q, tol);
  out.geodesics.push_back({m, out.report.momentum, out.report.time});
  if (out.report.branch == Branch::AxisLong) {
    out.multiplicity = Multiplicity::CircleFamily;
  } else if (out.report.branch == Branch::AxisShort) {
    const double zcut = heis::detail::two_pi * m.eps * m.eps;
    if (std::abs(std::abs(q.z) - zcut) <= 1e-12 * std::max(1.0, zcut))
      out.multiplicity = Multiplicity::DegenerateFamily;
  }
  return out;
}

// Grid resolution settings for the brute-force oracle.
struct BruteGrid {
  int n_theta{64};
  int n_phi{64};
  int n_t{200};
  double t_max{0.0}; // <= 0: auto upper bound rho + |z|/eps + 0.5
  double tol{0.0};   // <= 0: auto 2 * t_max / n_t
};

// Independent oracle: scan a (theta, phi, t) grid for the smallest t whose
// endpoint lies within tol of q, then polish the candidates by a local
// pattern search that drives the endpoint miss toward zero. The polished
// value is the duration of an actual geodesic through q, so it never
// understates the distance by more than the residual miss; it converges to
// distance(q) as the grid refines. The theta grid must be fine enough to
// capture the optimal basin — near the long-axis cut points that basin is a
// thin strip of width ~ tol / |dz/dtheta|.
inline double brute_force_distance(const Metric& m, const GroupPoint& q, BruteGrid grid = {}) {
  if (!(m.eps > 0.0)) throw std::domain_error("brute_force_distance: requires eps > 0");
  if (grid.n_theta < 2 || grid.n_phi < 1 || grid.n_t < 2)
    throw std::domain_error("brute_force_distance: grid resolutions must be positive");
  const double rho = std::hypot(q.x, q.y);
  if (grid.t_max <= 0.0) grid.t_max = rho + std::abs(q.z) / m.eps + 0.5;
  const double t_step = grid.t_max / grid.n_t;
  if (grid.tol <= 0.0) grid.tol = 2.0 * t_step;
  const double capture = std::max(grid.tol, 3.0 * t_step);

  auto dist_to_q = [&](double theta, double phi, double t) {
    const GroupPoint p = exp_riemann(m, {theta, phi}, t);
    return std::hypot(std::hypot(p.x - q.x, p.y - q.y), p.z - q.z);
  };

  // Pass 1: best in-capture candidate by smallest t; nearest point fallback.
  double best_t = std::numeric_limits<double>::infinity();
  double best_d = std::numeric_limits<double>::infinity();
  std::array<double, 3> best{0.0, 0.0, 0.0};
  std::array<double, 3> nearest{0.0, 0.0, 0.0};
  for (int i = 0; i < grid.n_theta; ++i) {
    const double theta = -heis::detail::half_pi +
                         heis::detail::pi * i / (grid.n_theta - 1.0);
    for (int j = 0; j < grid.n_phi; ++j) {
      const double phi = heis::detail::two_pi * j / grid.n_phi;
      for (int k = 1; k <= grid.n_t; ++k) {
        const double t = t_step * k;
        const double d = dist_to_q(theta, phi, t);
        if (d < best_d) {
          best_d = d;
          nearest = {theta, phi, t};
        }
        if (d <= capture && t < best_t) {
          best_t = t;
          best = {theta, phi, t};
        }
      }
    }
  }
  // Pass 2: polish each candidate by a shrinking 5x5x5 pattern search on the
  // endpoint miss. Recenter while improving, shrink when the center stays.
  const double d_theta = heis::detail::pi / (grid.n_theta - 1.0);
  const double d_phi = heis::detail::two_pi / grid.n_phi;
  auto polish = [&](std::array<double, 3> c) {
    double h_th = 1.5 * d_theta, h_ph = 1.5 * d_phi, h_t = 3.5 * t_step;
    double d_c = dist_to_q(c[0], c[1], c[2]);
    for (int round = 0; round < 90 && d_c > 1e-12; ++round) {
      std::array<double, 3> arg = c;
      double d_arg = d_c;
      for (int i = -2; i <= 2; ++i) {
        const double theta = std::clamp(c[0] + i * h_th / 2.0, -heis::detail::half_pi,
                                        heis::detail::half_pi);
        for (int j = -2; j <= 2; ++j) {
          const double phi = c[1] + j * h_ph / 2.0;
          for (int k = -2; k <= 2; ++k) {
            const double t = c[2] + k * h_t / 2.0;
            if (t <= 0.0) continue;
            const double d = dist_to_q(theta, phi, t);
            if (d < d_arg) {
              d_arg = d;
              arg = {theta, phi, t};
            }
          }
        }
      }
      if (arg == c) {
        h_th *= 0.5;
        h_ph *= 0.5;
        h_t *= 0.5;
      } else {
        c = arg;
        d_c = d_arg;
      }
    }
    return std::pair<double, double>{d_c, c[2]};
  };

  double result = std::numeric_limits<double>::infinity();
  std::vector<std::array<double, 3>> candidates;
  if (std::isfinite(best_t)) candidates.push_back(best);
  candidates.push_back(nearest);
  for (const auto& c : candidates) {
    const auto [miss, t] = polish(c);
    if (miss <= grid.tol && t < result) result = t;
  }
  if (!std::isfinite(result))
    throw Unreached("brute_force_distance: no grid point within tolerance");
  return result;
}

} // namespace heis
