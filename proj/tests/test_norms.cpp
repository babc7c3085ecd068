#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nlw/errors.hpp"
#include "nlw/norms.hpp"
#include "nlw/profiles.hpp"
#include "nlw/quadrature.hpp"

using namespace nlw;
using doctest::Approx;
using std::numbers::pi;

namespace {
// ||f_k||_2^2 in closed form
double moser_l2_sq(double k) {
  double a = std::exp(-k / 2), L = -k / 2;
  return k * a * a / 4 + (2 / k) * (0.25 - a * a / 2 * (L * L - L + 0.5));
}
RadialProfile ball(double R, double h, int d) {
  return RadialProfile({constant_seg(0.0, R, h), affine_seg(R, R * (1 + 1e-9), -h / (R * 1e-9), h)}, d, "ball", 1e-6);
}
}  // namespace

TEST_CASE("moser norms") {
  for (double k : {3.0, 8.0, 20.0}) {
    auto f = build_moser(k);
    auto n = radial_norms(f);
    CHECK(n.grad_l2 == Approx(1.0).epsilon(1e-13));
    CHECK(n.l2 * n.l2 == Approx(moser_l2_sq(k)).epsilon(1e-11));
    CHECK(sup_norm(f) == Approx(std::sqrt(k / (4 * pi))).epsilon(1e-14));
    CHECK(lorentz_2inf(f, true) == Approx(std::sqrt(-std::expm1(-k) / k)).epsilon(1e-8));
  }
}

TEST_CASE("lorentz norm of a ball indicator") {
  CHECK(lorentz_2inf(ball(0.7, 2.0, 2)) == Approx(2.0 * std::sqrt(pi) * 0.7).epsilon(1e-7));
  CHECK(lorentz_2inf(ball(0.5, 1.0, 3)) == Approx(std::sqrt(4 * pi / 3 * 0.125)).epsilon(1e-7));
}

TEST_CASE("exponential integrals against direct quadrature") {
  double k = 4, a = std::exp(-k / 2);
  auto f = build_moser(k);
  for (double alpha : {2.0, 4 * pi, 20.0}) {
    double plateau = pi * a * a * std::expm1(alpha * k / (4 * pi));
    double tail = integrate([&](double r) { return 2 * pi * r * std::expm1(alpha * std::pow(f.value(r), 2)); }, a, 1.0,
                            1e-13).value;
    CHECK(moser_trudinger(f, alpha).value() == Approx(plateau + tail).epsilon(1e-9));
  }
  auto e = energy_2d_exp(f, nullptr);
  CHECK(e.grad_sq == Approx(1.0));
  CHECK(e.potential.value() == Approx(moser_trudinger(f, 4 * pi).value() / (4 * pi)).epsilon(1e-12));
  CHECK(e.total.value() == Approx(1.0 + e.potential.value()).epsilon(1e-14));
  CHECK_THROWS_AS(energy_2d_exp(build_cutoff(0.5, 3), nullptr), DomainError);
}

TEST_CASE("huge exponents stay in log space") {
  auto f = build_moser(400);
  auto mt = moser_trudinger(f, 8 * pi);
  CHECK(std::isfinite(mt.log_abs));
  // plateau alone: pi e^{-k} (e^{2k} - 1)
  CHECK(mt.log_abs >= std::log(pi) + 400.0 - 1e-9);
}

TEST_CASE("power energy of step data") {
  auto s = build_step_harmonic(3, 3, Nonlinearity::pure_power(7));
  auto e = energy(s.profile, nullptr, Nonlinearity::pure_power(7));
  double brute = 0.0;
  for (const auto& g : s.profile.segments())
    brute += integrate([&](double r) { return 4 * pi * r * r * std::pow(g.value(r), 8) / 4; }, g.r0, g.r1, 1e-13).value;
  CHECK(e.potential.value() == Approx(brute).epsilon(1e-10));
}

TEST_CASE("spectral norms") {
  auto u = build_moser(6);
  auto sp = Spectrum::of_profile(u);
  auto n = radial_norms(u);
  CHECK(sp.l2_sq() == Approx(n.l2 * n.l2).epsilon(1e-6));
  CHECK(hs_norm(u, 0.0) == Approx(n.l2).epsilon(1e-6));
  CHECK(hs_norm(u, 1.0) == Approx(std::hypot(n.l2, n.grad_l2)).epsilon(1e-6));
  // sum_j psi_j^2 lies between 1/2 and 1
  double hom = std::pow(besov_norm(sp, 0.0, 2.0, true), 2);
  CHECK(hom <= sp.l2_sq() * (1 + 1e-9));
  CHECK(hom >= 0.5 * sp.l2_sq());
  CHECK(besov_norm(sp, 1.0, INFINITY) <= besov_norm(sp, 1.0, 2.0));
  CHECK(besov_norm(sp, 1.0, 2.0) <= besov_norm(sp, 1.0, 1.0));
}

TEST_CASE("bernstein bound on bands") {
  auto u = build_cutoff(0.3, 2);
  auto sp = Spectrum::of_profile(u);
  for (int j = -1; j <= 4; ++j) {
    double sup = band_sup(u, j), l2 = std::sqrt(sp.band_sq(j));
    double cap = j < 0 ? std::sqrt(4 * pi) : 4 * std::sqrt(pi) * std::ldexp(1.0, j);
    CHECK(sup <= cap * l2 * (1 + 1e-6));
    CHECK(sup == band_sup(u, j, false));
  }
}

TEST_CASE("x1 over r has flat scaled bands") {
  Spectrum sp(x1_over_r_density(), SpectrumOptions{-12, 12, 1.0, 64, 1 << 12, false}, 2);
  double ref = std::ldexp(std::sqrt(sp.band_sq(0, true)), 0);
  for (int j = -8; j <= 8; ++j) CHECK(std::ldexp(std::sqrt(sp.band_sq(j, true)), j) == Approx(ref).epsilon(1e-6));
}

TEST_CASE("holder norm") {
  auto u = RadialProfile({constant_seg(0.0, 1.0, 1.0), affine_seg(1.0, 2.0, -1.0, 1.0)}, 2, "ramp");
  CHECK(holder_norm(u, 1.0) == Approx(2.0).epsilon(1e-12));
  // |1 - (r - 1)| pairs: the 1/2 seminorm is attained across the whole ramp
  CHECK(holder_norm(u, 0.5) == Approx(2.0).epsilon(1e-12));
  auto f = build_moser(5);
  CHECK(holder_norm(f, 0.3, true) == holder_norm(f, 0.3, false));
}

TEST_CASE("log inequalities") {
  for (double k : {4.0, 10.0, 20.0}) {
    auto f = build_moser(k);
    auto r = log_inequality_check(f, 0.5, 2.0);
    CHECK(r.lhs == Approx(sup_norm(f)));
    CHECK(r.ratio > 0.0);
    CHECK(r.ratio < 10.0);
    CHECK(r.N >= 1);
    auto h = h_mu_inequality_check(f, 0.5, 1.0, 1.0);
    CHECK(h.required_C >= 0.0);
    CHECK(h.hmu_sq == Approx(1.0 + moser_l2_sq(k)).epsilon(1e-11));
  }
  CHECK_THROWS_AS(log_inequality_check(build_moser(4), 1.5, 2.0), DomainError);
  CHECK_THROWS_AS(h_mu_inequality_check(build_moser(4), 0.5, 1.0, 0.1), DomainError);
}
