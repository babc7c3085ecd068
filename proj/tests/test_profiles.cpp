#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nlw/errors.hpp"
#include "nlw/profiles.hpp"
#include "nlw/quadrature.hpp"
#include "nlw/segment_integrals.hpp"
#include "nlw/smooth_step.hpp"
#include "nlw/spectral.hpp"

using namespace nlw;
using doctest::Approx;
using std::numbers::pi;

namespace {
// int |u|^2 r^{d-1} dr straight from point values, piece by piece.
double brute_sq_moment(const RadialProfile& u) {
  double s = 0.0;
  for (const auto& g : u.segments())
    s += integrate([&](double r) { return std::pow(g.value(r), 2) * std::pow(r, u.dim() - 1); }, g.r0, g.r1, 1e-13).value;
  return s;
}
double brute_grad_sq_moment(const RadialProfile& u) {
  double s = 0.0;
  for (const auto& g : u.segments())
    s += integrate([&](double r) { return std::pow(g.d1(r), 2) * std::pow(r, u.dim() - 1); }, g.r0, g.r1, 1e-13).value;
  return s;
}
}  // namespace

TEST_CASE("profile validation") {
  CHECK_THROWS_AS(RadialProfile({constant_seg(0.0, 1.0, 1.0), constant_seg(1.0, 2.0, 0.0)}, 2, "t"), DomainError);
  CHECK_THROWS_AS(RadialProfile({constant_seg(0.1, 1.0, 0.0)}, 2, "t"), DomainError);
  CHECK_THROWS_AS(RadialProfile({constant_seg(0.0, 1.0, 1.0), affine_seg(1.2, 2.0, -1.0, 1.0)}, 2, "t"), DomainError);
  // must vanish at the edge of its support
  CHECK_THROWS_AS(RadialProfile({constant_seg(0.0, 1.0, 1.0)}, 2, "t"), DomainError);
  CHECK_NOTHROW(RadialProfile({constant_seg(0.0, 1.0, 1.0), affine_seg(1.0, 2.0, -1.0, 1.0)}, 2, "t"));
}

TEST_CASE("smooth step is flat at both joins") {
  SmoothStep E;
  CHECK(E.value(0.0) == 0.0);
  CHECK(E.value(1.0) == 1.0);
  CHECK(E.value(0.5) == Approx(0.5));
  CHECK(std::fabs(E.d1(1e-3)) < 1e-100);
  CHECK(std::fabs(E.d2(1.0 - 1e-3)) < 1e-100);
  for (double t : {0.1, 0.37, 0.8}) {
    double h = 1e-6;
    CHECK(E.d1(t) == Approx((E.value(t + h) - E.value(t - h)) / (2 * h)).epsilon(1e-7));
    CHECK(E.d2(t) == Approx((E.d1(t + h) - E.d1(t - h)) / (2 * h)).epsilon(1e-6));
  }
}

TEST_CASE("moser function") {
  for (double k : {2.0, 4.0, 9.0, 30.0}) {
    auto f = build_moser(k);
    CHECK(sphere_area(2) * grad_sq_moment(f, 1) == Approx(1.0).epsilon(1e-13));
    CHECK(f.value(0.0) == Approx(std::sqrt(k / (4 * pi))).epsilon(1e-14));
    CHECK(f.value(1.0) == 0.0);
  }
  CHECK(build_moser(4).value(std::exp(-1.0)) == Approx(0.28209479177387814).epsilon(1e-14));
  auto g = build_moser(6, 0.5, 1.3);
  CHECK(g.support_radius() == 0.5);
  CHECK(g.value(0.0) == Approx(1.3 * std::sqrt(6 / (4 * pi))));
}

TEST_CASE("step harmonic data") {
  auto s = build_step_harmonic(4, 3, Nonlinearity::pure_power(7));
  CHECK(s.epsilon == Approx(4.0 / std::cbrt(32.0)).epsilon(1e-14));
  CHECK(s.profile.value(0.0) == Approx(2.0));
  CHECK(s.profile.plateau_radius() == Approx(s.epsilon / 4));
  CHECK(s.profile.value(1.0) == 0.0);
  auto l = build_log_2d(8, Nonlinearity::kg_exp());
  CHECK(l.profile.value(0.0) == Approx(std::sqrt(8.0)));
  CHECK(l.profile.plateau_radius() == Approx(l.epsilon * std::exp(-4.0)));
}

TEST_CASE("oscillating data") {
  auto o = build_oscillating(4096, 2);
  CHECK(o.N % 2 == 0);
  CHECK(o.N == 16);
  CHECK(o.inner == Approx(std::pow(4096.0, -4.0 / 3)));
  CHECK(o.profile.value(0.0) == Approx(64.0));
  CHECK(o.profile.value(1.0) == 0.0);
  double g = sphere_area(3) * grad_sq_moment(o.profile, 2);
  CHECK(g == Approx(o.grad_sq_bulk + o.grad_sq_tail).epsilon(1e-10));
}

TEST_CASE("besov and gk data") {
  auto b = build_besov_data(6, 1.5);
  CHECK(b.profile.value(0.0) == Approx(1.5 * std::sqrt(6 / (4 * pi))).epsilon(1e-12));
  CHECK(std::fabs(b.profile.value(2.0)) < 1e-12);
  auto g = build_piecewise_log_gk(5, 0.5);
  CHECK(g.value(0.0) == Approx(std::pow(5.0, 0.5) * std::sqrt(5.0)));
  CHECK(g.support_radius() == Approx(2 * std::exp(-2.5)));
}

TEST_CASE("segment moments match brute-force quadrature") {
  std::vector<RadialProfile> corpus{build_moser(5), build_step_harmonic(3, 3, Nonlinearity::pure_power(7)).profile,
                                    build_besov_data(4, 1.5).profile, build_cutoff(0.3, 3),
                                    build_bump_family(3, BumpMode::Sobolev, 0.5).profile};
  for (const auto& u : corpus) {
    CHECK(sq_moment(u, u.dim() - 1) == Approx(brute_sq_moment(u)).epsilon(1e-10));
    CHECK(grad_sq_moment(u, u.dim() - 1) == Approx(brute_grad_sq_moment(u)).epsilon(1e-10));
  }
}

TEST_CASE("gaussian is its own transform") {
  for (int d : {2, 3}) {
    auto g = build_gaussian_sum({1.0}, {1.0 / std::sqrt(pi)}, d);
    for (double rho : {0.0, 0.2, 0.7, 1.5, 2.5}) CHECK(hankel(g, rho) == Approx(std::exp(-pi * rho * rho)).epsilon(1e-10));
  }
}

TEST_CASE("transform at zero frequency is the integral") {
  for (int d : {2, 3}) {
    auto u = build_cutoff(0.4, d);
    CHECK(hankel(u, 0.0) == Approx(sphere_area(d) * moment(u, d - 1)).epsilon(1e-12));
    CHECK(hankel(u, 1e-9) == Approx(hankel(u, 0.0)).epsilon(1e-12));
  }
}

TEST_CASE("littlewood-paley bank") {
  for (double x : {0.0, 0.5, 0.999}) CHECK(LPBank::chi(x) == 1.0);
  for (double x : {2.0, 3.0}) CHECK(LPBank::chi(x) == 0.0);
  CHECK(LPBank::psi(0.99) == 0.0);
  CHECK(LPBank::psi(4.01) == 0.0);
  for (double x : {0.3, 1.1, 1.9, 3.3, 17.0, 1000.0}) {
    double s = LPBank::chi(x);
    for (int j = 0; j < 20; ++j) s += LPBank::psi(x / std::ldexp(1.0, j));
    CHECK(s == Approx(1.0).epsilon(1e-15));
  }
}
