#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "heis/detail.hpp"
#include "heis/exp_riemann.hpp"
#include "heis/exp_subriemann.hpp"
#include "heis/group.hpp"
#include "heis/loci.hpp"

namespace heis {

// Change of variables between the covector charts of P_eps and P_0:
// c = sin(theta)/eps, psi = phi.
inline SRMomentum to_sr_momentum(const Momentum& p, double eps) {
  return {std::sin(p.theta) / eps, p.phi};
}

struct ExpResidual {
  double max_norm;      // |Exp_eps(theta, phi, t) - Exp_0(sin(theta)/eps, phi, t)|_inf
  double z_closed_form; // (eps/2)(t sin(theta) + eps sin(t sin(theta)/eps))
};

// Pointwise comparison of the two exponential maps under the change of
// variables. The z component difference has the exact closed form returned
// alongside; x and y differences are reported only through the max-norm.
inline ExpResidual exp_residual(double theta, double phi, double t, double eps) {
  if (!(eps > 0.0)) throw std::domain_error("exp_residual: requires eps > 0");
  if (!(std::abs(theta) < detail::half_pi))
    throw std::domain_error("exp_residual: requires |theta| < pi/2");
  const GroupPoint a = exp_riemann(Metric(eps), {theta, phi}, t);
  const GroupPoint b = exp_sr({std::sin(theta) / eps, phi}, t);
  ExpResidual r;
  r.max_norm = std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
  const double st = std::sin(theta);
  r.z_closed_form = 0.5 * eps * (t * st + eps * std::sin(t * st / eps));
  return r;
}

// Characteristic function of Cut_eps (eps > 0) or Cut_0 (eps = 0).
inline int cut_chi(double eps, const GroupPoint& q) {
  return in_cut_locus(Metric(eps), q) ? 1 : 0;
}

// Nesting Cut_{eps1} >= Cut_{eps2} for 0 <= eps1 < eps2, checked on probes.
inline bool cut_nesting_check(double eps1, double eps2, const std::vector<GroupPoint>& probes) {
  if (!(eps1 >= 0.0 && eps1 < eps2))
    throw std::invalid_argument("cut_nesting_check: requires 0 <= eps1 < eps2");
  return std::all_of(probes.begin(), probes.end(), [&](const GroupPoint& q) {
    return cut_chi(eps2, q) <= cut_chi(eps1, q);
  });
}

namespace detail {

// Both sphere families are surfaces of revolution, so the Euclidean distance
// from a point of one to the other equals the planar distance between their
// meridian curves in the (rho, z) half-plane.
inline double meridian_gap(const std::vector<MeridianPoint>& from,
                           const std::vector<MeridianPoint>& to) {
  double gap = 0.0;
  for (const auto& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : to) best = std::min(best, std::hypot(p.rho - s.rho, p.z - s.z));
    gap = std::max(gap, best);
  }
  return gap;
}

inline double meridian_resolution(const std::vector<MeridianPoint>& pts) {
  double res = 0.0;
  for (size_t i = 1; i < pts.size(); ++i)
    res = std::max(res, std::hypot(pts[i].rho - pts[i - 1].rho, pts[i].z - pts[i - 1].z));
  return res;
}

} // namespace detail

// max over probes q in S_0(r) of the Euclidean set-distance to the sampled
// S_eps(r). Tends to 0 along eps -> 0 (lower semicontinuity), up to sampling
// resolution.
inline double sphere_liminf_gap(double r, double eps, int n_probe, int n_sample) {
  if (!(r > 0.0 && eps > 0.0)) throw std::domain_error("sphere_liminf_gap: r, eps must be > 0");
  if (n_probe < 8 || n_sample < 8)
    throw std::domain_error("sphere_liminf_gap: counts must be >= 8");
  const auto probes = cross_section(sample_sphere(Metric(0.0), r, n_probe, 8));
  const auto cloud = cross_section(sample_sphere(Metric(eps), r, n_sample, 8));
  return detail::meridian_gap(probes, cloud);
}

// Symmetric gap: max over S_eps(r) samples of the distance to the sampled
// S_0(r). Diagnostic only; upper semicontinuity is conjectural.
inline double sphere_limsup_gap(double r, double eps, int n_probe, int n_sample) {
  if (!(r > 0.0 && eps > 0.0)) throw std::domain_error("sphere_limsup_gap: r, eps must be > 0");
  if (n_probe < 8 || n_sample < 8)
    throw std::domain_error("sphere_limsup_gap: counts must be >= 8");
  const auto probes = cross_section(sample_sphere(Metric(0.0), r, n_probe, 8));
  const auto cloud = cross_section(sample_sphere(Metric(eps), r, n_sample, 8));
  return detail::meridian_gap(cloud, probes);
}

// Sampling floor for sphere gap diagnostics: the coarsest meridian spacing of
// the S_0(r) probe polyline.
inline double sphere_sampling_resolution(double r, int n_probe) {
  return detail::meridian_resolution(cross_section(sample_sphere(Metric(0.0), r, n_probe, 8)));
}

enum class Verdict { DecreasingToZero, Inconclusive };

inline const char* to_string(Verdict v) {
  return v == Verdict::DecreasingToZero ? "decreasing-to-zero" : "inconclusive";
}

struct ConvergenceReport {
  std::vector<double> eps_sequence;
  std::vector<double> residuals;
  Verdict verdict{Verdict::Inconclusive};
};

inline std::vector<double> default_eps_sequence() {
  return {1.0, 0.3, 0.1, 0.03, 0.01, 0.003, 0.001};
}

// decreasing-to-zero requires the final residual below the threshold and
// either strict decrease along the sequence or all residuals already below
// the threshold (the all-zero case).
inline Verdict convergence_verdict(const std::vector<double>& residuals, double threshold) {
  if (residuals.empty()) return Verdict::Inconclusive;
  bool strict = true;
  bool all_small = true;
  for (size_t i = 0; i < residuals.size(); ++i) {
    if (i > 0 && !(residuals[i] < residuals[i - 1])) strict = false;
    if (!(residuals[i] <= threshold)) all_small = false;
  }
  if (residuals.back() <= threshold && (strict || all_small))
    return Verdict::DecreasingToZero;
  return Verdict::Inconclusive;
}

inline ConvergenceReport make_convergence_report(std::vector<double> eps_sequence,
                                                 std::vector<double> residuals,
                                                 double threshold) {
  if (eps_sequence.size() != residuals.size())
    throw std::invalid_argument("make_convergence_report: length mismatch");
  ConvergenceReport rep;
  rep.verdict = convergence_verdict(residuals, threshold);
  rep.eps_sequence = std::move(eps_sequence);
  rep.residuals = std::move(residuals);
  return rep;
}

} // namespace heis
