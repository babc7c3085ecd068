#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlw/errors.hpp"
#include "nlw/profiles.hpp"
#include "nlw/wave.hpp"

using namespace nlw;
using doctest::Approx;

namespace {
RadialProfile plateau(double height, double R, int d) {
  return RadialProfile({constant_seg(0.0, R, height), affine_seg(R, R + 0.5, -2.0 * height, height)}, d, "plateau");
}
}  // namespace

TEST_CASE("zero data stays zero") {
  WaveConfig c;
  c.T = 0.5, c.dr = 0.02;
  auto f = evolve(RadialProfile({constant_seg(0.0, 1.0, 0.0)}, 3, "zero"), nullptr, c);
  for (const auto& s : f.u)
    for (double x : s) CHECK(x == 0.0);
  CHECK(f.energy.back() == 0.0);
}

TEST_CASE("free klein-gordon conserves the discrete energy") {
  for (int d : {2, 3}) {
    WaveConfig c;
    c.d = d, c.free = true, c.mass = 1.0, c.T = 4.0, c.dr = 0.01;
    auto f = evolve(build_gaussian_sum({0.7, -0.3}, {0.3, 0.15}, d), nullptr, c);
    for (double e : f.energy) CHECK(std::fabs(e / f.energy.front() - 1.0) < 1e-4);
  }
}

TEST_CASE("nonlinear energy stays within one percent") {
  auto sh = build_step_harmonic(4, 3, Nonlinearity::pure_power(7));
  WaveConfig c;
  c.T = 1.0, c.dr = 1.0 / 400;
  auto f = evolve(sh.profile, nullptr, c);
  for (double e : f.energy) CHECK(std::fabs(e / f.energy.front() - 1.0) < 1e-2);
}

TEST_CASE("space-independent data follows the ODE") {
  auto m = Nonlinearity::pure_power(7);
  WaveConfig c;
  c.T = 0.5, c.dr = 1.0 / 200;
  auto f = evolve(plateau(1.0, 3.0, 3), nullptr, c);
  auto traj = integrate_ode(m, 1.0, 0.0, 0.6, period(m, 1.0).period / 4000);
  CHECK(cone_deviation(f, traj, 3.0) < 1e-5);
}

TEST_CASE("finite speed of propagation converges at second order") {
  auto m = Nonlinearity::pure_power(7);
  auto sh = build_step_harmonic(4, 3, m);
  WaveConfig c;
  c.T = 0.2;
  std::vector<WaveField> fs;
  for (double dr : {1.0 / 200, 1.0 / 400, 1.0 / 800}) {
    c.dr = dr;
    fs.push_back(evolve(sh.profile, nullptr, c));
  }
  auto traj = integrate_ode(m, 2.0, 0.0, 0.25, period(m, 2.0).period / 4000);
  auto r = fsp_check(fs, traj, sh.profile.plateau_radius());
  CHECK(r.order >= 1.8);
  CHECK(r.deviation.back() < r.deviation.front());
}

TEST_CASE("data outside the ball do not reach the cone") {
  auto m = Nonlinearity::pure_power(7);
  WaveConfig c;
  c.T = 0.3, c.dr = 1.0 / 200;
  RadialGrid g(2.0, c.dr, 3);
  std::vector<double> u(g.size()), w(g.size()), v(g.size(), 0.0);
  double rho = 0.8;
  for (size_t i = 0; i < g.size(); ++i) {
    u[i] = g.r[i] < 1.5 ? 1.2 * std::cos(g.r[i]) * (1.5 - g.r[i]) : 0.0;
    w[i] = u[i] + (g.r[i] > rho ? 0.3 * std::sin(7 * g.r[i]) : 0.0);
  }
  auto a = cone_sample(evolve_samples(u, v, c), rho), b = cone_sample(evolve_samples(w, v, c), rho);
  for (size_t s = 0; s < a.times.size(); ++s)
    for (size_t i = 0; i < a.u[s].size(); ++i) {
      CHECK(a.u[s][i] == b.u[s][i]);
      CHECK(a.v[s][i] == b.v[s][i]);
    }
}

TEST_CASE("guards") {
  WaveConfig c;
  c.T = 1.0, c.dr = 0.01;
  auto u = build_step_harmonic(4, 3, Nonlinearity::pure_power(7)).profile;
  CHECK_THROWS_AS(cone_sample(evolve(u, nullptr, c), 0.3), DomainError);
  c.cfl = 0.85;
  CHECK_THROWS_AS(evolve(u, nullptr, c), DomainError);
  c.cfl = 0.75, c.dr = 0.1;
  CHECK_THROWS_AS(evolve(u, nullptr, c), ResolutionError);
}

TEST_CASE("parallel and serial steps agree bit for bit") {
  auto u = build_gaussian_sum({1.0}, {0.4}, 3);
  WaveConfig c;
  c.T = 0.5, c.dr = 0.01;
  auto a = evolve(u, nullptr, c);
  c.parallel = false;
  auto b = evolve(u, nullptr, c);
  CHECK(a.u.back() == b.u.back());
  CHECK(a.v.back() == b.v.back());
}

TEST_CASE("the scheme is time reversible") {
  auto u = build_gaussian_sum({0.8}, {0.3}, 2);
  WaveConfig c;
  c.d = 2, c.mass = 1.0, c.free = true, c.T = 1.0, c.dr = 0.01;
  auto f = evolve(u, nullptr, c);
  std::vector<double> back_v = f.v.back();
  for (double& x : back_v) x = -x;
  auto g = evolve_samples(f.u.back(), back_v, c);
  for (size_t i = 0; i < g.r.size(); ++i) {
    CHECK(std::fabs(g.u.back()[i] - f.u.front()[i]) < 1e-12);
    CHECK(std::fabs(g.v.back()[i]) < 1e-12);
  }
  // even data: the Strichartz time norm is the same on [0, T] and [-T, 0]
  CHECK(strichartz_lhs(f, 2) == strichartz_lhs(evolve(u, nullptr, c), 2));
}

TEST_CASE("strichartz data and zero field") {
  auto [p, q] = strichartz_data(7, 3);
  auto [p2, q2] = strichartz_data(7, 3);
  CHECK(p.value(0.1) == p2.value(0.1));
  CHECK(q.value(0.0) == q2.value(0.0));
  WaveConfig c;
  c.d = 2, c.mass = 1.0, c.free = true, c.T = 0.2, c.dr = 0.05;
  auto f = evolve(RadialProfile({constant_seg(0.0, 1.0, 0.0)}, 2, "zero"), nullptr, c);
  CHECK(strichartz_lhs(f, 2) == 0.0);
}

TEST_CASE("flow modulus at subcritical energy") {
  WaveConfig c;
  c.T = 0.5, c.dr = 0.01, c.slices = 6;
  auto base = build_gaussian_sum({0.3}, {0.3}, 3);
  auto eta = build_gaussian_sum({1.0}, {0.2}, 3);
  auto pts = flow_modulus_probe(base, eta, {0.0, 1e-3, 2e-3, 4e-3}, c);
  CHECK(pts[0].output_distance == 0.0);
  for (size_t i = 1; i < pts.size(); ++i) {
    CHECK(pts[i].input_distance == Approx(pts[i].delta).epsilon(2e-2));
    CHECK(pts[i].output_distance >= pts[i - 1].output_distance);
    CHECK(pts[i].output_distance / pts[i].delta == Approx(pts[1].output_distance / pts[1].delta).epsilon(2e-2));
  }
}
