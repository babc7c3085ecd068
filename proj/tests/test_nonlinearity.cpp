#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nlw/nonlinearity.hpp"
#include "nlw/quadrature.hpp"

using namespace nlw;
using std::numbers::pi;

TEST_CASE("tags round trip") {
  for (auto t : {"power:7", "exp:q=2", "exp:q=1.5", "kg-exp", "harmonic"})
    CHECK(Nonlinearity::parse(t).tag() == t);
  CHECK_THROWS(Nonlinearity::parse("power:4"));
  CHECK_THROWS(Nonlinearity::parse("cubic"));
  CHECK_THROWS(Nonlinearity::exp_family(0.5));
}

TEST_CASE("kg potential at the unit exponent") {
  auto m = Nonlinearity::kg_exp();
  double u = std::sqrt(4.0 / (4.0 * pi));
  CHECK(m.potential(u) == doctest::Approx(2.132602629588985).epsilon(1e-14));
  CHECK(m.log_potential(u) == doctest::Approx(std::log(2.132602629588985)).epsilon(1e-14));
}

TEST_CASE("potential is the antiderivative of the force") {
  for (auto tag : {"power:7", "exp:q=1", "exp:q=2", "exp:q=3", "kg-exp", "harmonic"}) {
    auto m = Nonlinearity::parse(tag);
    for (double u : {0.1, 0.4, 0.9, 1.3}) {
      QuadResult r = integrate([&](double s) { return m.force(s); }, 0.0, u, 1e-14);
      CHECK(m.potential(u) == doctest::Approx(r.value).epsilon(1e-11));
      double h = 1e-6 * (1 + u);
      double fd = (m.force(u + h) - m.force(u - h)) / (2 * h);
      CHECK(m.stiffness(u) == doctest::Approx(fd).epsilon(1e-6));
      CHECK(m.potential(-u) == m.potential(u));
    }
  }
}

TEST_CASE("log potential survives where the potential overflows") {
  auto m = Nonlinearity::kg_exp();
  double u = 10.0;  // 4 pi u^2 ~ 1257
  CHECK(std::isinf(m.potential(u)));
  CHECK(m.log_potential(u) == doctest::Approx(4 * pi * 100 - std::log(8 * pi)).epsilon(1e-14));
}

TEST_CASE("relative gap matches direct evaluation") {
  for (auto tag : {"power:7", "exp:q=1", "exp:q=2", "kg-exp", "harmonic"}) {
    auto m = Nonlinearity::parse(tag);
    double x0 = 0.8;
    for (double d : {1e-3, 0.1, 0.8, 1.2, 1.59}) {
      double direct = std::log(1.0 - m.potential(x0 - d) / m.potential(x0));
      CHECK(m.log_gap_rel(x0, d) == doctest::Approx(direct).epsilon(1e-9));
    }
    // Tiny gaps stay accurate: 1 - F(x0-d)/F(x0) ~ d F'(x0)/F(x0).
    double d = 1e-12;
    double lin = std::log(d * m.force(x0) / m.potential(x0));
    CHECK(m.log_gap_rel(x0, d) == doctest::Approx(lin).epsilon(1e-9));
  }
}

TEST_CASE("g_q difference bound with calibrated constant") {
  for (double q : {1.0, 1.5, 2.0, 3.0}) {
    double C = calibrate_g_q_constant(q, 1.5, 200);
    CHECK(C > 0.0);
    for (double u = -1.5; u <= 1.5; u += 0.137)
      for (double v = -1.5; v <= 1.5; v += 0.219)
        CHECK(std::fabs(g_q(q, u) - g_q(q, v)) <= g_q_difference_bound(q, 1.02 * C, u, v) + 1e-15);
  }
}
