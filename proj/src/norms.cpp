#include "nlw/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "nlw/errors.hpp"
#include "nlw/quadrature.hpp"
#include "nlw/segment_integrals.hpp"

namespace nlw {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}  // namespace

RadialNorms radial_norms(const RadialProfile& u) {
  double w = sphere_area(u.dim());
  return {std::sqrt(w * sq_moment(u, u.dim() - 1)), std::sqrt(w * grad_sq_moment(u, u.dim() - 1))};
}

double sup_norm(const RadialProfile& u) {
  double m = 0.0;
  for (const auto& s : u.segments()) {
    m = std::max({m, std::fabs(s.value(s.r0)), std::fabs(s.value(s.r1))});
    if (s.kind == FormKind::Smooth)
      for (int i = 1; i < 256; ++i) m = std::max(m, std::fabs(s.value(s.r0 + s.width() * i / 256)));
  }
  return m;
}

double lorentz_2inf(const RadialProfile& u, bool gradient) {
  const int d = u.dim();
  const double w = sphere_area(d);
  auto f = [&](const Segment& s, double r) { return std::fabs(gradient ? s.d1(r) : s.value(r)); };
  // Sub-intervals on which f is treated as monotone.
  struct Piece { const Segment* s; double a, b, fa, fb; };
  std::vector<Piece> pieces;
  std::vector<double> levels;
  for (const auto& s : u.segments()) {
    int n = (s.kind == FormKind::Constant || s.kind == FormKind::Affine) ? 1 : 64;
    bool logspace = s.r0 > 0.0 && s.r1 / s.r0 > 4.0;
    for (int i = 0; i < n; ++i) {
      double a = logspace ? s.r0 * std::pow(s.r1 / s.r0, double(i) / n) : s.r0 + s.width() * i / n;
      double b = logspace ? s.r0 * std::pow(s.r1 / s.r0, double(i + 1) / n) : s.r0 + s.width() * (i + 1) / n;
      if (i == n - 1) b = s.r1;
      // evaluate just inside the piece so one-sided derivatives are used at knots
      double ea = a + 1e-12 * (b - a), eb = b - 1e-12 * (b - a);
      pieces.push_back({&s, a, b, f(s, ea), f(s, eb)});
    }
    double lo = f(s, s.r0 + 1e-12 * s.width()), hi = f(s, s.r1 - 1e-12 * s.width());
    for (int i = 0; i <= 64; ++i) levels.push_back(lo + (hi - lo) * i / 64.0);
  }
  for (const auto& p : pieces) levels.push_back(p.fa), levels.push_back(p.fb);
  double best = 0.0;
  for (double sigma : levels) {
    // the set {f > sigma} is open; approach each level from below
    double lev = sigma * (1.0 - 1e-12);
    if (!(lev > 0.0)) continue;
    double meas = 0.0;
    for (const auto& p : pieces) {
      bool A = p.fa > lev, B = p.fb > lev;
      if (!A && !B) continue;
      double lo = p.a, hi = p.b;
      if (A != B) {
        double x = p.a, y = p.b;
        for (int it = 0; it < 100; ++it) {
          double m = 0.5 * (x + y);
          ((f(*p.s, m) > lev) == A ? x : y) = m;
        }
        (A ? hi : lo) = 0.5 * (x + y);
      }
      meas += w / d * (std::pow(hi, d) - std::pow(lo, d));
    }
    best = std::max(best, sigma * std::sqrt(meas));
  }
  return best;
}

double besov_norm(const Spectrum& sp, double s, double q, bool homogeneous) {
  int jlo = homogeneous ? sp.m_lo() : -1, jhi = sp.m_hi() - 1;
  double acc = 0.0;
  for (int j = jlo; j <= jhi; ++j) {
    double b = std::pow(2.0, j * s) * std::sqrt(std::max(0.0, sp.band_sq(j, homogeneous)));
    if (std::isinf(q)) acc = std::max(acc, b);
    else acc += std::pow(b, q);
  }
  return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
}

double besov_norm(const RadialProfile& u, double s, double q, bool homogeneous) {
  return besov_norm(Spectrum::of_profile(u), s, q, homogeneous);
}

double hs_norm(const RadialProfile& u, double s) { return std::sqrt(Spectrum::of_profile(u).hs_sq(s)); }

double holder_norm(const RadialProfile& u, double alpha, bool parallel) {
  double R = u.support_radius();
  double fine = std::max(u.min_feature() * 1e-3, R * 1e-14);
  std::vector<double> r{0.0};
  for (int i = 0; i <= 600; ++i) r.push_back(fine * std::pow(2.0 * R / fine, i / 600.0));
  for (int i = 1; i <= 600; ++i) r.push_back(2.0 * R * i / 600.0);
  for (double k : u.knots())
    for (double f : {1e-6, 1e-4, 1e-2, 1e-1}) r.push_back(k * (1 + f)), r.push_back(k * (1 - f));
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  std::vector<double> v(r.size());
  for (size_t i = 0; i < r.size(); ++i) v[i] = u.value(r[i]);
  const long n = static_cast<long>(r.size());
  std::vector<double> best(n, 0.0);
  auto row = [&](long i) {
    double m = 0.0;
    for (long j = i + 1; j < n; ++j) m = std::max(m, std::fabs(v[j] - v[i]) / std::pow(r[j] - r[i], alpha));
    best[i] = m;
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < n; ++i) row(i);
  } else {
    for (long i = 0; i < n; ++i) row(i);
  }
  return sup_norm(u) + *std::max_element(best.begin(), best.end());
}

namespace {

// 2 |S^{d-1}| int G(phi(r)) r^{d-1} dr in log-space, with logG(u) = log G(u).
template <class LogG>
LogReal radial_log_integral(const RadialProfile& phi, LogG&& logG) {
  const int d = phi.dim();
  LogReal total;
  for (const auto& s : phi.segments()) {
    if (s.kind == FormKind::Constant) {
      double lg = logG(s.b);
      if (lg == kNegInf) continue;
      double lv = std::log((std::pow(s.r1, d) - std::pow(s.r0, d)) / d);
      total = total + LogReal::from_log(lg + lv);
      continue;
    }
    LogQuadResult q;
    if (s.r0 > 0.0) {
      q = integrate_log([&](double x) { return logG(s.value(std::exp(x))) + d * x; }, std::log(s.r0), std::log(s.r1));
    } else {
      q = integrate_log([&](double r) { return r == 0.0 ? kNegInf : logG(s.value(r)) + (d - 1) * std::log(r); },
                        s.r0, s.r1);
    }
    total = total + q.value;
  }
  return total * LogReal::from(sphere_area(d));
}

}  // namespace

Energy energy(const RadialProfile& phi, const RadialProfile* psi, const Nonlinearity& m) {
  Energy e;
  e.grad_sq = std::pow(radial_norms(phi).grad_l2, 2);
  if (psi) e.velocity_sq = std::pow(radial_norms(*psi).l2, 2);
  e.potential = radial_log_integral(phi, [&](double u) { return u == 0.0 ? kNegInf : m.log_potential(u); }) *
                LogReal::from(2.0);
  e.total = LogReal::from(e.grad_sq + e.velocity_sq) + e.potential;
  return e;
}

Energy energy_2d_exp(const RadialProfile& phi, const RadialProfile* psi) {
  if (phi.dim() != 2) throw DomainError("the exponential energy is two-dimensional");
  return energy(phi, psi, Nonlinearity::kg_exp());
}

LogReal moser_trudinger(const RadialProfile& u, double alpha) {
  return radial_log_integral(u, [&](double v) { return v == 0.0 ? kNegInf : log_expm1(alpha * v * v); });
}

LogInequality log_inequality_check(const RadialProfile& u, double alpha, double q) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(q >= 1.0)) throw DomainError("log inequality needs 0 < alpha < 1, q >= 1");
  double qp = std::isinf(q) ? 1.0 : (q == 1.0 ? std::numeric_limits<double>::infinity() : q / (q - 1.0));
  LogInequality r;
  r.lhs = sup_norm(u);
  r.besov = besov_norm(u, 1.0, qp);
  r.holder = holder_norm(u, alpha);
  double L = std::log(std::exp(1.0) + r.holder / r.besov);
  r.envelope = r.besov * (std::isinf(q) ? 1.0 : std::pow(L, 1.0 / q));
  r.ratio = r.lhs / r.envelope;
  r.N = static_cast<int>(std::ceil(L / (alpha * std::log(2.0))));
  return r;
}

HMuInequality h_mu_inequality_check(const RadialProfile& u, double alpha, double mu, double lambda) {
  if (!(lambda > 1.0 / (2.0 * kPi * alpha))) throw DomainError("H_mu inequality needs lambda > 1/(2 pi alpha)");
  if (!(mu > 0.0 && mu <= 1.0)) throw DomainError("H_mu inequality needs 0 < mu <= 1");
  HMuInequality h;
  auto n = radial_norms(u);
  h.lhs = std::pow(sup_norm(u), 2);
  h.hmu_sq = n.grad_l2 * n.grad_l2 + mu * mu * n.l2 * n.l2;
  h.argument = std::pow(8.0, alpha) * std::pow(mu, -alpha) * holder_norm(u, alpha) / std::sqrt(h.hmu_sq);
  h.required_C = std::max(0.0, std::exp(h.lhs / (lambda * h.hmu_sq)) - h.argument);
  return h;
}

}  // namespace nlw
