#include "nlw/ode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nlw/errors.hpp"
#include "nlw/quadrature.hpp"

namespace nlw {

namespace {

// Velocity Verlet substep of size h.
inline void verlet(const Nonlinearity& m, double& x, double& v, double h) {
  v -= 0.5 * h * m.force(x);
  x += h * v;
  v -= 0.5 * h * m.force(x);
}

std::vector<double> composition(int order) {
  switch (order) {
    case 2: return {1.0};
    case 4: {
      double w1 = 1.0 / (2.0 - std::cbrt(2.0));
      return {w1, 1.0 - 2.0 * w1, w1};
    }
    case 6: {
      // Yoshida, solution A
      double w1 = -1.17767998417887, w2 = 0.235573213359357, w3 = 0.784513610477560;
      double w0 = 1.0 - 2.0 * (w1 + w2 + w3);
      return {w3, w2, w1, w0, w1, w2, w3};
    }
  }
  throw DomainError("composition order must be 2, 4 or 6");
}

void hermite(const OdeState& a, const OdeState& b, double fa, double fb, double t, double& x, double& v) {
  double h = b.t - a.t, s = (t - a.t) / h;
  double s2 = s * s, s3 = s2 * s;
  x = (2 * s3 - 3 * s2 + 1) * a.x + (s3 - 2 * s2 + s) * h * a.v + (-2 * s3 + 3 * s2) * b.x + (s3 - s2) * h * b.v;
  // velocity from the same construction with accelerations at the ends
  double va = a.v, vb = b.v, aa = -fa, ab = -fb;
  v = (2 * s3 - 3 * s2 + 1) * va + (s3 - 2 * s2 + s) * h * aa + (-2 * s3 + 3 * s2) * vb + (s3 - s2) * h * ab;
}

}  // namespace

OdeState Trajectory::at(double t) const {
  if (t <= states_.front().t) return states_.front();
  if (t >= states_.back().t) return states_.back();
  auto it = std::upper_bound(states_.begin(), states_.end(), t,
                             [](double tt, const OdeState& s) { return tt < s.t; });
  const OdeState& b = *it;
  const OdeState& a = *(it - 1);
  OdeState out;
  out.t = t;
  hermite(a, b, model_.force(a.x), model_.force(b.x), t, out.x, out.v);
  return out;
}

double Trajectory::energy_drift() const {
  double e0 = energy(states_.front()), worst = 0.0;
  for (const auto& s : states_) worst = std::max(worst, std::fabs(energy(s) - e0));
  return worst / e0;
}

std::vector<double> Trajectory::downward_zeros() const {
  std::vector<double> out;
  for (size_t i = 1; i < states_.size(); ++i) {
    const OdeState &a = states_[i - 1], &b = states_[i];
    if (!(a.x > 0.0 && b.x <= 0.0)) continue;
    double lo = a.t, hi = b.t;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
      double mid = 0.5 * (lo + hi);
      (at(mid).x > 0.0 ? lo : hi) = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

double amplitude(const Nonlinearity& m, double x0, double v0) {
  double target = 0.5 * v0 * v0 + m.potential(x0);
  double lo = std::fabs(x0), hi = std::max(1.0, 2.0 * lo);
  while (m.potential(hi) < target) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (m.potential(mid) < target ? lo : hi) = mid;
  }
  return hi;
}

Trajectory integrate_ode(const Nonlinearity& m, double x0, double v0, double t_end, double dt, int order) {
  if (!(dt > 0.0) || !(t_end >= 0.0)) throw DomainError("integrate_ode requires dt > 0 and t_end >= 0");
  double amp = amplitude(m, x0, v0);
  if (!std::isfinite(m.force(amp)) || !std::isfinite(m.potential(amp)))
    throw NumericError("force overflow: use period quadrature instead of time stepping");
  double T = period(m, amp).period;
  if (dt > T / 200.0) throw DomainError("integrate_ode requires dt <= period / 200");
  auto w = composition(order);
  std::vector<OdeState> states{{x0, v0, 0.0}};
  long n = static_cast<long>(std::ceil(t_end / dt - 1e-9));
  states.reserve(n + 1);
  double x = x0, v = v0;
  for (long i = 1; i <= n; ++i) {
    double t_next = std::min(t_end, i * dt);
    double h = t_next - states.back().t;
    for (double wi : w) verlet(m, x, v, wi * h);
    states.push_back({x, v, t_next});
  }
  return Trajectory(m, std::move(states));
}

PeriodResult period(const Nonlinearity& m, double x0) {
  if (!(x0 > 0.0)) throw DomainError("period requires x0 > 0");
  PeriodResult r;
  auto q = integrate_log_tanh_sinh([&](double, double, double dr) { return -0.5 * m.log_gap_rel(x0, dr); }, 0.0,
                                   x0, 1e-14);
  if (!q.ok()) throw NumericError("period quadrature did not converge");
  r.log_period = 1.5 * std::log(2.0) - 0.5 * m.log_potential(x0) + q.value.log_abs;
  r.period = std::exp(r.log_period);
  r.quarter_period = 0.25 * r.period;
  r.quad_error = q.rel_error;
  // Turning points by bisection on G(y) = 2 (F(x0) - F(y)); evenness gives -beta.
  double fx = m.potential(x0), lo = 0.0, hi = 2.0 * x0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * x0; ++it) {
    double mid = 0.5 * (lo + hi);
    (m.potential(mid) < fx ? lo : hi) = mid;
  }
  r.beta = 0.5 * (lo + hi);
  r.alpha = -r.beta;
  return r;
}

double measured_period(const Nonlinearity& m, double x0, int periods, int steps_per_period) {
  double T = period(m, x0).period;
  auto tr = integrate_ode(m, x0, 0.0, (periods + 0.5) * T, T / steps_per_period);
  auto z = tr.downward_zeros();
  if (z.size() < 2) throw NumericError("not enough zero crossings to measure a period");
  return (z.back() - z.front()) / (z.size() - 1);
}

LogReal descent_time(const Nonlinearity& m, double x0, double y) {
  if (!(y >= -x0 && y < x0)) throw DomainError("descent_time requires -x0 <= y < x0");
  auto q = integrate_log_tanh_sinh(
      [&](double yy, double dl, double dr) {
        // distance of |y'| below x0, taken from the nearer endpoint
        double delta = yy >= 0.0 ? dr : x0 + y + dl;
        return -0.5 * m.log_gap_rel(x0, delta);
      },
      y, x0, 1e-13);
  if (!q.ok()) throw NumericError("descent time quadrature did not converge");
  return LogReal::from_log(q.value.log_abs - 0.5 * (std::log(2.0) + m.log_potential(x0)));
}

double position_at(const Nonlinearity& m, double x0, double t) {
  double lt = std::log(t);
  double lo = -x0, hi = x0;
  if (lt > descent_time(m, x0, -x0).log_abs) throw DomainError("position_at requires t <= T/2");
  for (int it = 0; it < 100 && hi - lo > 1e-14 * x0; ++it) {
    double mid = 0.5 * (lo + hi);
    (descent_time(m, x0, mid).log_abs > lt ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

LogReal speed_at(const Nonlinearity& m, double x0, double y) {
  if (std::fabs(y) >= x0) return {};
  return LogReal::from_log(0.5 * (std::log(2.0) + m.log_potential(x0) + m.log_gap_rel(x0, x0 - y)));
}

ResonanceSchedule resonance_schedule(double k, int M, const Nonlinearity& m) {
  if (M < 1) throw DomainError("resonance_schedule requires M >= 1");
  ResonanceSchedule s;
  s.M = M;
  s.eta = -std::expm1(std::log1p(-0.25 / M) / 3.0);
  s.eta_residual = std::fabs(4.0 * M * -std::expm1(3.0 * std::log1p(-s.eta)) - 1.0);
  double a = std::sqrt(k);
  double t1 = M * period(m, a).period;
  double t2 = (M - 0.25) * period(m, a * (1.0 - s.eta)).period;
  s.t = t1;
  s.identity_residual = std::fabs(t1 - t2);
  return s;
}

DecoherenceTime decoherence_time(double k) {
  auto m = Nonlinearity::kg_exp();
  DecoherenceTime d;
  d.x0 = (1.0 + 1.0 / k) * std::sqrt(k / (4.0 * std::numbers::pi));
  d.target = d.x0 - 1.0 / d.x0;
  if (!(d.target > -d.x0)) throw DomainError("decoherence target lies beyond the turning point; need k >= 5");
  d.t = descent_time(m, d.x0, d.target);
  d.quarter_period = descent_time(m, d.x0, 0.0);
  d.beyond_quarter = d.target < 0.0;
  return d;
}

}  // namespace nlw
