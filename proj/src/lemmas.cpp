#include "nlw/lemmas.hpp"

#include <cmath>

#include "nlw/errors.hpp"

namespace nlw {

QuadResult lemma_I_a(double a) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("I(a) requires 0 < a < 1");
  // r = e^{-s/(2a)} maps the integrand to (1/(2a)) e^{s^2 - s/a}.
  double upper = -2.0 * a * std::log(a);
  QuadResult r = integrate([a](double s) { return std::exp(s * s - s / a); }, 0.0, upper, 1e-13);
  r.value /= 2.0 * a;
  r.error /= 2.0 * a;
  return r;
}

LogQuadResult lemma_I_ak(double a, double k) {
  if (!(a >= 1.0 && k >= 1.0)) throw DomainError("I(a,k) requires a >= 1 and k >= 1");
  double c = 4.0 * a * a / k;
  return integrate_log([c](double x) { return c * x * x - 2.0 * x; }, 0.0, 0.5 * k, 1e-12);
}

double lemma_I_ak_log_bound(double a, double k) { return std::log(2.0) + (a * a - 1.0) * k; }

namespace {

// log(1 - e^{-delta (2A - delta)})
double log_one_minus_gap(double A, double delta) { return std::log(-std::expm1(-delta * (2.0 * A - delta))); }

}  // namespace

LogQuadResult lemma_J(double A, double lambda) {
  if (!(lambda > 0.0 && lambda < A)) throw DomainError("J(A, lambda) requires 0 < lambda < A");
  double lo = A - lambda * lambda / A;
  LogQuadResult r = integrate_log_tanh_sinh(
      [A](double, double, double dr) { return -0.5 * log_one_minus_gap(A, dr); }, lo, A, 1e-13);
  r.value.log_abs -= 0.5 * A * A;
  return r;
}

double lemma_J_log_bound(double A, double lambda) {
  return std::log(A) + 2.0 * lambda * lambda - std::log(A * A - lambda * lambda) - 0.5 * A * A;
}

LogQuadResult lemma_I_A(double A) {
  if (!(A > 0.0)) throw DomainError("I(A) requires A > 0");
  LogQuadResult r = integrate_log_tanh_sinh(
      [A](double, double, double dr) { return -0.5 * log_one_minus_gap(A, dr); }, 0.0, A, 1e-13);
  r.value.log_abs -= 0.5 * A * A;
  return r;
}

double lemma_I_A_ratio(double A) {
  LogQuadResult r = lemma_I_A(A);
  return std::exp(r.value.log_abs + 0.5 * A * A - std::log(A));
}

}  // namespace nlw
