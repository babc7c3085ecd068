#include "nlw/segment_integrals.hpp"

#include <cmath>
#include <numbers>

#include "nlw/quadrature.hpp"

namespace nlw {

namespace {

// Antiderivatives of r^m log r and r^m log^2 r.
double log_prim(double m, double r) {
  double L = std::log(r), n = m + 1.0;
  if (n == 0.0) return 0.5 * L * L;
  return std::pow(r, n) * (L / n - 1.0 / (n * n));
}
double log2_prim(double m, double r) {
  double L = std::log(r), n = m + 1.0;
  if (n == 0.0) return L * L * L / 3.0;
  return std::pow(r, n) * (L * L / n - 2.0 * L / (n * n) + 2.0 / (n * n * n));
}

// 10-point Gauss-Legendre on [r0, r1]; exact for the polynomial integrands of affine pieces.
template <class F>
double gl10(F&& f, double r0, double r1) {
  static double x[10], w[10];
  static bool init = (gauss_legendre(10, x, w), true);
  (void)init;
  double c = 0.5 * (r0 + r1), h = 0.5 * (r1 - r0), s = 0.0;
  for (int i = 0; i < 10; ++i) s += w[i] * f(c + h * x[i]);
  return s * h;
}

// Composite rule: smooth pieces may be tabulated (C^1 across cells), where adaptive
// refinement would chase the cell joins.
template <class F>
double smooth_integral(F&& f, double r0, double r1) {
  constexpr int kPanels = 256;
  double h = (r1 - r0) / kPanels, s = 0.0;
  for (int p = 0; p < kPanels; ++p) s += gl10(f, r0 + p * h, p + 1 == kPanels ? r1 : r0 + (p + 1) * h);
  return s;
}

}  // namespace

double power_integral(double e, double r0, double r1) {
  if (e == -1.0) return std::log(r1 / r0);
  if (r0 == 0.0) return std::pow(r1, e + 1.0) / (e + 1.0);
  return (std::pow(r1, e + 1.0) - std::pow(r0, e + 1.0)) / (e + 1.0);
}

double seg_moment(const Segment& s, double m) {
  switch (s.kind) {
    case FormKind::Constant: return s.b * power_integral(m, s.r0, s.r1);
    case FormKind::LogAffine:
      return s.a * (log_prim(m, s.r1) - log_prim(m, s.r0)) + s.b * power_integral(m, s.r0, s.r1);
    case FormKind::Power: return s.a * power_integral(m + s.p, s.r0, s.r1) + s.b * power_integral(m, s.r0, s.r1);
    case FormKind::Affine:
      return (s.b - s.a * s.r0) * power_integral(m, s.r0, s.r1) + s.a * power_integral(m + 1.0, s.r0, s.r1);
    case FormKind::Smooth:
      return smooth_integral([&](double r) { return s.value(r) * std::pow(r, m); }, s.r0, s.r1);
  }
  return 0.0;
}

double seg_sq_moment(const Segment& s, double m) {
  switch (s.kind) {
    case FormKind::Constant: return s.b * s.b * power_integral(m, s.r0, s.r1);
    case FormKind::LogAffine:
      return s.a * s.a * (log2_prim(m, s.r1) - log2_prim(m, s.r0)) +
             2.0 * s.a * s.b * (log_prim(m, s.r1) - log_prim(m, s.r0)) + s.b * s.b * power_integral(m, s.r0, s.r1);
    case FormKind::Power:
      return s.a * s.a * power_integral(2.0 * s.p + m, s.r0, s.r1) +
             2.0 * s.a * s.b * power_integral(s.p + m, s.r0, s.r1) + s.b * s.b * power_integral(m, s.r0, s.r1);
    case FormKind::Affine:
      return gl10([&](double r) { double v = s.value(r); return v * v * std::pow(r, m); }, s.r0, s.r1);
    case FormKind::Smooth:
      return smooth_integral([&](double r) { double v = s.value(r); return v * v * std::pow(r, m); }, s.r0, s.r1);
  }
  return 0.0;
}

double seg_grad_sq_moment(const Segment& s, double m) {
  switch (s.kind) {
    case FormKind::Constant: return 0.0;
    case FormKind::LogAffine: return s.a * s.a * power_integral(m - 2.0, s.r0, s.r1);
    case FormKind::Power:
      if (s.p == 0.0) return 0.0;
      return s.a * s.a * s.p * s.p * power_integral(2.0 * s.p - 2.0 + m, s.r0, s.r1);
    case FormKind::Affine: return s.a * s.a * power_integral(m, s.r0, s.r1);
    case FormKind::Smooth:
      return smooth_integral([&](double r) { double v = s.d1(r); return v * v * std::pow(r, m); }, s.r0, s.r1);
  }
  return 0.0;
}

double sphere_area(int d) { return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d); }

double moment(const RadialProfile& u, double m) {
  double t = 0.0;
  for (const auto& s : u.segments()) t += seg_moment(s, m);
  return t;
}
double sq_moment(const RadialProfile& u, double m) {
  double t = 0.0;
  for (const auto& s : u.segments()) t += seg_sq_moment(s, m);
  return t;
}
double grad_sq_moment(const RadialProfile& u, double m) {
  double t = 0.0;
  for (const auto& s : u.segments()) t += seg_grad_sq_moment(s, m);
  return t;
}

}  // namespace nlw
