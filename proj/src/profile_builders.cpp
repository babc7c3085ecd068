#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "nlw/errors.hpp"
#include "nlw/profiles.hpp"
#include "nlw/quadrature.hpp"
#include "nlw/smooth_step.hpp"

namespace nlw {

namespace {

// Antiderivative of f on [lo, hi] tabulated with cubic Hermite interpolation.
class Tabulated {
 public:
  Tabulated(std::function<double(double)> f, double lo, double hi, int n) : f_(std::move(f)), lo_(lo), h_((hi - lo) / n) {
    F_.assign(n + 1, 0.0);
    double x[10], w[10];
    gauss_legendre(10, x, w);
    for (int i = 0; i < n; ++i) {
      double c = lo + (i + 0.5) * h_, cell = 0.0;
      for (int j = 0; j < 10; ++j) cell += w[j] * f_(c + 0.5 * h_ * x[j]);
      F_[i + 1] = F_[i] + 0.5 * h_ * cell;
    }
  }
  // int_lo^x f
  double operator()(double x) const {
    double s = (x - lo_) / h_;
    int i = std::clamp(static_cast<int>(s), 0, static_cast<int>(F_.size()) - 2);
    double t = s - i, x0 = lo_ + i * h_;
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * F_[i] + (t3 - 2 * t2 + t) * h_ * f_(x0) + (-2 * t3 + 3 * t2) * F_[i + 1] +
           (t3 - t2) * h_ * f_(x0 + h_);
  }
  double total() const { return F_.back(); }

 private:
  std::function<double(double)> f_;
  double lo_, h_;
  std::vector<double> F_;
};

// Q(y) = int_1^y E(x-1)/x dx and R(y) = int_y^2 (1 - E(x-1))/x dx on [1, 2].
const Tabulated& q_table() {
  static const Tabulated t([](double x) { return SmoothStep::value(x - 1.0) / x; }, 1.0, 2.0, 4096);
  return t;
}
const Tabulated& r_table() {
  static const Tabulated t([](double x) { return (1.0 - SmoothStep::value(x - 1.0)) / x; }, 1.0, 2.0, 4096);
  return t;
}

}  // namespace

StepHarmonicData build_step_harmonic(double k, int d, const Nonlinearity& m) {
  if (d < 3 || !(k >= 2.0)) throw DomainError("step_harmonic requires d >= 3 and k >= 2");
  double P = std::pow(k, 0.5 * (d - 2));
  double eps = k * std::exp(-m.log_potential(P) / d);
  if (!(eps < k)) throw DomainError("k too small for model: epsilon_k >= k");
  double rp = eps / k, p = 2.0 - d;
  double a = P / (std::pow(rp, p) - 1.0);
  std::vector<Segment> s{constant_seg(0.0, rp, P), power_seg(rp, 1.0, a, p, -a)};
  return {RadialProfile(std::move(s), d, "step_harmonic"), eps, a};
}

Log2dData build_log_2d(double k, const Nonlinearity& m) {
  double P = std::sqrt(k);
  double lf = m.log_potential(P);
  if (!(lf > 0.0)) throw DomainError("log_2d requires F(sqrt k) > 1");
  double rp = std::exp(-0.5 * lf);
  std::vector<Segment> s{constant_seg(0.0, rp, P), log_affine_seg(rp, 1.0, -2.0 * P / lf, 0.0)};
  return {RadialProfile(std::move(s), 2, "log_2d"), std::exp(0.5 * k - 0.5 * lf)};
}

RadialProfile build_moser(double k, double nu, double gamma) {
  if (!(k > 0.0 && nu > 0.0)) throw DomainError("moser requires k > 0 and nu > 0");
  double P = gamma * std::sqrt(k / (4.0 * std::numbers::pi));
  double rp = nu * std::exp(-0.5 * k);
  double a = -gamma / std::sqrt(k * std::numbers::pi);
  std::vector<Segment> s{constant_seg(0.0, rp, P), log_affine_seg(rp, nu, a, -a * std::log(nu))};
  return RadialProfile(std::move(s), 2, "moser");
}

OscillatingData build_oscillating(double k, int M, double c_N) {
  OscillatingData o;
  o.schedule = resonance_schedule(k, M);
  double t = o.schedule.t;
  double target = c_N * std::pow(k, 1.0 / 6.0) * M * M;
  o.N = std::max(2, 2 * static_cast<int>(std::lround(target / 2.0)));
  o.inner = std::pow(k, -4.0 / 3.0);
  o.alpha = 10.0 * t * o.N / o.inner;
  o.outer = o.inner + 10.0 * o.N * t;
  if (!(t > 0.0) || !(o.outer < 1.0)) throw DomainError("oscillating data does not fit inside the unit ball");
  double hi = std::sqrt(k), lo = hi * (1.0 - o.schedule.eta);
  auto height = [&](int j) { return j % 2 == 0 ? lo : hi; };
  std::vector<Segment> s{constant_seg(0.0, o.inner, hi)};
  auto ramp = [&](double r0, double r1, double v0, double v1) {
    s.push_back(affine_seg(r0, r1, (v1 - v0) / (r1 - r0), v0));
    o.grad_sq_bulk += 4.0 * std::numbers::pi * std::pow((v1 - v0) / (r1 - r0), 2) * (r1 * r1 * r1 - r0 * r0 * r0) / 3.0;
  };
  double edge = o.inner + t;
  ramp(o.inner, edge, hi, height(0));
  for (int j = 0; j < o.N; ++j) {
    double aj = o.inner + 10.0 * j * t;
    if (j == o.N - 1) {
      s.push_back(constant_seg(edge, o.outer, height(j)));
    } else {
      double r0 = aj + 9.0 * t, r1 = aj + 11.0 * t;
      s.push_back(constant_seg(edge, r0, height(j)));
      ramp(r0, r1, height(j), height(j + 1));
      edge = r1;
    }
  }
  double a = hi / (1.0 / o.outer - 1.0);
  s.push_back(power_seg(o.outer, 1.0, a, -1.0, -a));
  o.grad_sq_tail = 4.0 * std::numbers::pi * a * a * (1.0 / o.outer - 1.0);
  o.profile = RadialProfile(std::move(s), 3, "oscillating", 1e-11);
  return o;
}

BesovData build_besov_data(double k, double gamma) {
  double a = std::exp(-0.5 * k);
  if (!(2.0 * a < 1.0)) throw DomainError("besov data requires 2 e^{-k/2} < 1");
  const Tabulated &Q = q_table(), &R = r_table();
  double P = gamma * std::sqrt(k / (4.0 * std::numbers::pi));
  // sqrt(k) times int_0^2 g~_k: inner ramp, log region, outer cutoff
  double S = Q.total() - std::log(2.0) + 0.5 * k + R.total();
  BesovData out;
  out.integral = S / std::sqrt(k);
  out.c = P / out.integral;
  double beta = out.c / std::sqrt(k);
  std::vector<Segment> s;
  s.push_back(constant_seg(0.0, a, P));
  s.push_back(smooth_seg(a, 2.0 * a,
                         {[=, &Q](double r) { return P - beta * Q(r / a); },
                          [=](double r) { return -beta * SmoothStep::value(r / a - 1.0) / r; },
                          [=](double r) {
                            return -beta * (SmoothStep::d1(r / a - 1.0) / (a * r) - SmoothStep::value(r / a - 1.0) / (r * r));
                          }}));
  s.push_back(log_affine_seg(2.0 * a, 1.0, -beta, P - beta * Q.total() + beta * std::log(2.0 * a)));
  s.push_back(smooth_seg(1.0, 2.0,
                         {[=, &R](double r) { return beta * (R.total() - R(r)); },
                          [=](double r) { return -beta * (1.0 - SmoothStep::value(r - 1.0)) / r; },
                          [=](double r) {
                            double e = SmoothStep::value(r - 1.0);
                            return beta * (SmoothStep::d1(r - 1.0) / r + (1.0 - e) / (r * r));
                          }}));
  out.profile = RadialProfile(std::move(s), 2, "besov_data", 1e-11);
  return out;
}

RadialProfile build_piecewise_log_gk(double k, double gamma) {
  double a = std::exp(-0.5 * k), sk = std::sqrt(k), l2 = std::log(2.0);
  std::vector<Segment> s{constant_seg(0.0, a, sk),
                         log_affine_seg(a, 2.0 * a, -sk / l2, sk - k * sk / (2.0 * l2))};
  return RadialProfile(std::move(s), 2, "gk").scaled(std::pow(k, gamma));
}

BumpFamily build_bump_family(double k, BumpMode mode, double s, int dim) {
  BumpFamily b;
  b.scale = std::exp(-0.5 * k);
  b.prefactor = std::exp((mode == BumpMode::Besov ? 0.5 : 0.5 * s) * k);
  std::vector<Segment> seg{constant_seg(0.0, 0.25 * b.scale, b.prefactor),
                           step_seg(0.25 * b.scale, 0.5 * b.scale, b.prefactor, 0.0)};
  b.profile = RadialProfile(std::move(seg), dim, "bump");
  return b;
}

RadialProfile build_cutoff(double a, int dim) {
  std::vector<Segment> s{constant_seg(0.0, a, 1.0), step_seg(a, 2.0 * a, 1.0, 0.0)};
  return RadialProfile(std::move(s), dim, "cutoff");
}

RadialProfile build_gaussian_sum(const std::vector<double>& c, const std::vector<double>& sigma, int dim) {
  double total = 0.0, smax = 0.0;
  for (size_t i = 0; i < c.size(); ++i) total += std::fabs(c[i]), smax = std::max(smax, sigma[i]);
  double R = smax * std::sqrt(std::log(1e30 * std::max(total, 1e-300)));
  SmoothForm f{[=](double r) {
                 double v = 0;
                 for (size_t i = 0; i < c.size(); ++i) v += c[i] * std::exp(-r * r / (sigma[i] * sigma[i]));
                 return v;
               },
               [=](double r) {
                 double v = 0;
                 for (size_t i = 0; i < c.size(); ++i) {
                   double s2 = sigma[i] * sigma[i];
                   v += c[i] * (-2 * r / s2) * std::exp(-r * r / s2);
                 }
                 return v;
               },
               [=](double r) {
                 double v = 0;
                 for (size_t i = 0; i < c.size(); ++i) {
                   double s2 = sigma[i] * sigma[i];
                   v += c[i] * (4 * r * r / (s2 * s2) - 2 / s2) * std::exp(-r * r / s2);
                 }
                 return v;
               }};
  return RadialProfile({smooth_seg(0.0, R, f)}, dim, "gaussian_sum");
}

}  // namespace nlw
