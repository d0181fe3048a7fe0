#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "heis/loci.hpp"

using namespace heis;
using Catch::Approx;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("cut locus membership") {
  const Metric m(1.0);
  CHECK(in_cut_locus(m, {0, 0, 2 * pi}));
  CHECK(in_cut_locus(m, {0, 0, -7}));
  CHECK_FALSE(in_cut_locus(m, {0, 0, pi}));
  CHECK_FALSE(in_cut_locus(m, {1, 0, 10}));
  CHECK(in_cut_locus(Metric(0.0), {0, 0, 0.001}));
  CHECK_FALSE(in_cut_locus(Metric(0.0), {0, 0, 0}));
}

TEST_CASE("cut and conjugate coincide") {
  std::mt19937 rng(201);
  std::uniform_real_distribution<double> dth(-pi / 2, pi / 2);
  for (int i = 0; i < 100; ++i) {
    const Metric m(0.3 + 0.2 * (i % 6));
    const Momentum p{dth(rng), 0.7 * i};
    CHECK(cut_time(m, p) == conjugate_time(m, p));
  }
}

TEST_CASE("cut-time endpoints populate the axis beyond 2 pi eps^2") {
  std::mt19937 rng(203);
  std::uniform_real_distribution<double> dth(0.2, pi / 2);
  for (int i = 0; i < 50; ++i) {
    const Metric m(0.5 + 0.25 * (i % 4));
    const Momentum p{dth(rng), 0.1 * i};
    const GroupPoint q = exp_riemann(m, p, cut_time(m, p));
    const double s2 = std::sin(p.theta) * std::sin(p.theta);
    CHECK(std::abs(q.x) < 1e-10);
    CHECK(std::abs(q.y) < 1e-10);
    CHECK(q.z == Approx(pi * m.eps * m.eps * (1 + s2) / s2).epsilon(1e-10));
    CHECK(q.z >= 2 * pi * m.eps * m.eps * (1 - 1e-12));
  }
}

TEST_CASE("injectivity radius") {
  CHECK(injectivity_radius(Metric(1.0)) == Approx(2 * pi).epsilon(1e-15));
  CHECK(injectivity_radius(Metric(0.5)) == Approx(pi).epsilon(1e-15));
  CHECK(injectivity_radius(Metric(2.0)) == Approx(4 * pi).epsilon(1e-15));
  CHECK_THROWS_AS(injectivity_radius(Metric(0.0)), std::domain_error);
}

TEST_CASE("sphere sampling band") {
  const auto full = sample_sphere(Metric(1.0), pi, 9, 8);
  CHECK(full.samples.size() == 9 * 8);
  CHECK(full.samples.front().theta == Approx(-pi / 2).epsilon(1e-15));
  CHECK(full.samples.back().theta == Approx(pi / 2).epsilon(1e-15));
  // theta = pi/2 sample is the axis point (0, 0, pi)
  const auto& top = full.samples.back();
  CHECK(std::abs(top.point.x) < 1e-14);
  CHECK(std::abs(top.point.y) < 1e-14);
  CHECK(top.point.z == Approx(pi).epsilon(1e-14));

  const auto banded = sample_sphere(Metric(1.0), 4 * pi, 5, 8);
  CHECK(banded.samples.back().theta == Approx(pi / 6).epsilon(1e-12));

  const auto sr = sample_sphere(Metric(0.0), 1.0, 5, 8);
  CHECK(sr.samples.front().theta == Approx(-2 * pi).epsilon(1e-15));
  CHECK(sr.samples.back().theta == Approx(2 * pi).epsilon(1e-15));
}

TEST_CASE("sphere samples respect the admissible band and have distance r") {
  for (double r : {1.0, pi, 8.0}) {
    const Metric m(1.0);
    const auto set = sample_sphere(m, r, 15, 8);
    for (const auto& s : set.samples) {
      CHECK(r * std::abs(std::sin(s.theta)) <= 2 * pi * m.eps + 1e-12);
      CHECK(distance(m, s.point) == Approx(r).margin(1e-8));
    }
  }
}

TEST_CASE("meridian cross-section") {
  const double r = 8.0; // r > 2 pi: band-edge samples touch the axis
  const auto set = sample_sphere(Metric(1.0), r, 11, 8);
  const auto sec = cross_section(set);
  REQUIRE(sec.size() == 11);
  for (size_t i = 0; i + 1 < sec.size(); ++i) CHECK(sec[i].theta < sec[i + 1].theta);
  for (const auto& mp : sec) CHECK(mp.rho >= 0.0);
  // theta = 0 lies at index n_theta/2 and maps to (r, 0)
  CHECK(sec[5].theta == Approx(0.0).margin(1e-15));
  CHECK(sec[5].rho == Approx(r).epsilon(1e-14));
  CHECK(sec[5].z == Approx(0.0).margin(1e-14));
  CHECK(sec.front().rho == Approx(0.0).margin(1e-9));
  CHECK(sec.back().rho == Approx(0.0).margin(1e-9));
}

TEST_CASE("no cut points on small spheres, band edges hit the axis on large ones") {
  const Metric m(1.0);
  const auto small = sample_sphere(m, 2.0, 15, 8);
  for (const auto& s : small.samples) CHECK_FALSE(in_cut_locus(m, s.point, 1e-9));

  const auto large = sample_sphere(m, 4 * pi, 15, 8);
  for (int i = 0; i < large.n_theta; ++i) {
    const auto& s = large.samples[static_cast<size_t>(i) * large.n_phi];
    const bool band_edge = (i == 0 || i == large.n_theta - 1);
    CHECK(in_cut_locus(m, s.point, 1e-8) == band_edge);
  }
}

TEST_CASE("distance smoothness classification") {
  const Metric m(1.0);
  CHECK(distance_smooth_at(m, {1, 1, 1}));
  CHECK_FALSE(distance_smooth_at(m, {0, 0, 0}));
  CHECK_FALSE(distance_smooth_at(m, {0, 0, 7}));
  CHECK(distance_smooth_at(m, {0, 0, pi}));
}

TEST_CASE("sphere smoothness classification") {
  const Metric m(1.0);
  CHECK(sphere_smoothness(m, pi, {0, 0, pi}) == Smoothness::Smooth);
  CHECK(sphere_smoothness(m, 2 * pi, {0, 0, 2 * pi}) == Smoothness::Unknown);
  // axis point of S(3 pi): d(0,0,z) = 2 pi sqrt(z/pi - 1) = 3 pi  =>  z = 3.25 pi
  CHECK(sphere_smoothness(m, 3 * pi, {0, 0, 3.25 * pi}) == Smoothness::NonSmooth);
  // off-axis points are smooth at any radius
  const GroupPoint q = exp_riemann(m, {0.3, 0.5}, 3 * pi);
  CHECK(sphere_smoothness(m, 3 * pi, q) == Smoothness::Smooth);
  CHECK_THROWS_AS(sphere_smoothness(m, 1.0, {0, 0, pi}), std::invalid_argument);
}

TEST_CASE("vanishing minors at the sphere-axis contact") {
  for (double eps : {1.0, 0.5}) {
    const auto minors = sphere_chart_minors(Metric(eps), 1e-5);
    for (double v : minors) CHECK(std::abs(v) <= 1e-6);
  }
  // consistency: minors shrink as h shrinks
  const auto big = sphere_chart_minors(Metric(1.0), 1e-4);
  const auto small = sphere_chart_minors(Metric(1.0), 1e-5);
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(small[i]) <= std::abs(big[i]) / 5.0 + 1e-14);
}
