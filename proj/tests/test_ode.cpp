#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nlw/errors.hpp"
#include "nlw/ode.hpp"
#include "nlw/quadrature.hpp"

using namespace nlw;
using doctest::Approx;
using std::numbers::pi;

// B(1/8, 1/2) to 16 digits
constexpr double kT7 = 9.308740569746155;

TEST_CASE("harmonic oscillator returns after 2 pi") {
  auto m = Nonlinearity::harmonic();
  auto tr = integrate_ode(m, 1.0, 0.0, 2 * pi, 2 * pi / 1000);
  CHECK(std::fabs(tr.states().back().x - 1.0) < 1e-6);
  CHECK(std::fabs(tr.states().back().v) < 1e-6);
  for (double x0 : {0.1, 1.0, 7.0}) CHECK(period(m, x0).period == Approx(2 * pi).epsilon(1e-12));
}

TEST_CASE("pure power period and scaling") {
  auto m = Nonlinearity::pure_power(7);
  auto p1 = period(m, 1.0);
  CHECK(p1.period == Approx(kT7).epsilon(1e-12));
  CHECK(p1.beta == Approx(1.0).epsilon(1e-14));
  CHECK(p1.alpha == -p1.beta);
  CHECK(period(m, 2.0).period == Approx(kT7 / 8).epsilon(1e-12));
  for (double a : {0.5, 1.0, 2.0, 4.0, 8.0})
    CHECK(period(m, a).period * a * a * a == Approx(kT7).epsilon(1e-8));
}

TEST_CASE("quadrature period agrees with time stepping") {
  for (auto tag : {"power:7", "kg-exp", "exp:q=2", "harmonic"}) {
    auto m = Nonlinearity::parse(tag);
    double x0 = 0.5;
    CHECK(measured_period(m, x0, 5) == Approx(period(m, x0).period).epsilon(1e-6));
  }
}

TEST_CASE("quarter period lands on zero") {
  for (auto tag : {"power:7", "kg-exp", "exp:q=1", "harmonic"}) {
    auto m = Nonlinearity::parse(tag);
    double T = period(m, 1.0 / std::sqrt(pi)).period;
    auto tr = integrate_ode(m, 1.0 / std::sqrt(pi), 0.0, T / 4, T / 1000);
    CHECK(std::fabs(tr.states().back().x) < 1e-6);
  }
}

TEST_CASE("energy over fifty periods and the velocity identity") {
  for (auto tag : {"power:7", "kg-exp"}) {
    auto m = Nonlinearity::parse(tag);
    double x0 = std::sqrt(1.0 / (4 * pi));
    double T = period(m, x0).period;
    auto tr = integrate_ode(m, x0, 0.0, 50 * T, T / 1000);
    CHECK(tr.energy_drift() < 1e-7);
    double vmax = std::sqrt(2 * m.potential(x0));
    for (int i = 0; i <= 97; ++i) {
      double t = i * T / 97 * 0.999;
      auto s = tr.at(t);
      double ident = std::sqrt(std::max(0.0, 2 * (m.potential(x0) - m.potential(s.x))));
      CHECK(std::fabs(std::fabs(s.v) - ident) < 1e-6 * vmax);
    }
  }
  auto kg = Nonlinearity::kg_exp();
  double x0 = std::sqrt(1.0 / (4 * pi));
  double T = period(kg, x0).period;
  auto s = integrate_ode(kg, x0, 0.0, T / 4, T / 1000).states().back();
  CHECK(std::fabs(s.v) == Approx(std::sqrt((std::exp(1.0) - 1) / (4 * pi))).epsilon(1e-6));
}

TEST_CASE("overflowing forces are refused") {
  CHECK_THROWS_AS(integrate_ode(Nonlinearity::kg_exp(), 8.0, 0.0, 1.0, 1e-6), NumericError);
  CHECK_THROWS_AS(integrate_ode(Nonlinearity::harmonic(), 1.0, 0.0, 1.0, 0.1), DomainError);
}

TEST_CASE("descent time and position are inverse") {
  auto m = Nonlinearity::pure_power(7);
  double T = period(m, 1.0).period;
  CHECK(descent_time(m, 1.0, 0.0).value() == Approx(T / 4).epsilon(1e-11));
  CHECK(descent_time(m, 1.0, -1.0).value() == Approx(T / 2).epsilon(1e-10));
  auto tr = integrate_ode(m, 1.0, 0.0, 0.3 * T, T / 2000);
  double y = position_at(m, 1.0, 0.3 * T);
  CHECK(y == Approx(tr.states().back().x).epsilon(1e-8));
  CHECK(speed_at(m, 1.0, y).value() == Approx(std::fabs(tr.states().back().v)).epsilon(1e-8));
}

TEST_CASE("resonance bookkeeping") {
  auto s = resonance_schedule(16, 1);
  CHECK(s.eta == Approx(1 - std::cbrt(0.75)).epsilon(1e-14));
  CHECK(s.eta == Approx(0.09143970358393017).epsilon(1e-13));
  CHECK(s.eta_residual < 1e-12);
  for (int M : {1, 2, 5, 40}) {
    for (double k : {4.0, 16.0, 256.0}) {
      auto r = resonance_schedule(k, M);
      CHECK(r.identity_residual <= 1e-10 * r.t);
      CHECK(r.t == Approx(M * kT7 / std::pow(k, 1.5)).epsilon(1e-11));
    }
  }
  CHECK(resonance_schedule(4, 1000).eta * 12000 == Approx(1.0).epsilon(1e-3));
}

// Oracle: t = int_{u*}^{U} du / sqrt(e^{U^2} - e^{u^2}), split near U with u = U - w^2.
static double decoherence_oracle(double k) {
  double x0 = (1 + 1 / k) * std::sqrt(k / (4 * pi));
  double U = std::sqrt(4 * pi) * x0, us = std::sqrt(4 * pi) * (x0 - 1 / x0);
  double split = U - std::min(0.5 * (U - us), 1 / (4 * U));
  double reg = integrate([U](double u) { return 1 / std::sqrt(-std::expm1(u * u - U * U)); }, us, split, 1e-13).value;
  double sing = integrate([U](double w) {
    if (w == 0) return 2.0 / std::sqrt(2 * U);
    double d = w * w;
    return 2 * w / std::sqrt(-std::expm1(-d * (2 * U - d)));
  }, 0, std::sqrt(U - split), 1e-13).value;
  return std::exp(-U * U / 2) * (reg + sing);
}

TEST_CASE("decoherence time") {
  CHECK_THROWS_AS(decoherence_time(4), DomainError);
  double lo = 1e300, hi = 0;
  for (int k = 5; k <= 40; ++k) {
    auto d = decoherence_time(k);
    CHECK(d.t.value() == Approx(decoherence_oracle(k)).epsilon(1e-9));
    CHECK(d.target < d.x0);
    CHECK(d.beyond_quarter == (d.t.log_abs > d.quarter_period.log_abs));
    double ratio = d.t.value() * std::sqrt(k) * std::exp(k / 2.0);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(hi / lo < 3.0);
  CHECK(decoherence_time(10).beyond_quarter);
  CHECK_FALSE(decoherence_time(20).beyond_quarter);
}
