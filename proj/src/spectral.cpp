#include "nlw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "nlw/errors.hpp"
#include "nlw/quadrature.hpp"
#include "nlw/segment_integrals.hpp"
#include "nlw/smooth_step.hpp"

namespace nlw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kGL = 16;
constexpr double kSmoothCutoff = 400.0;  // c * width beyond which a flat-joined smooth piece is below 1e-10
constexpr long kMaxPanels = 20000;

struct GL16 {
  double x[kGL], w[kGL];
  GL16() { gauss_legendre(kGL, x, w); }
};
const GL16& gl16() {
  static const GL16 g;
  return g;
}

// int_{r0}^{r1} g(r) K(c r) dr with K = J0 or sin; one panel per half oscillation, per full one for smooth g.
template <class G>
double oscillatory(G&& g, double r0, double r1, double c, bool bessel, bool smooth) {
  double span = c * (r1 - r0);
  if (smooth && span > kSmoothCutoff) return 0.0;
  long n = std::min<long>(kMaxPanels, static_cast<long>(std::ceil(span / (smooth ? 2.0 * kPi : kPi))) + 1);
  const GL16& q = gl16();
  double h = (r1 - r0) / n, sum = 0.0;
  for (long p = 0; p < n; ++p) {
    double a = r0 + p * h, m = a + 0.5 * h;
    for (int i = 0; i < kGL; ++i) {
      double r = m + 0.5 * h * q.x[i];
      double k = bessel ? ::j0(c * r) : std::sin(c * r);
      sum += q.w[i] * g(r) * k;
    }
  }
  return 0.5 * h * sum;
}

// Evaluates u^ for one profile, caching the small-argument moments.
class HankelPlan {
 public:
  explicit HankelPlan(const RadialProfile& u) : u_(u), d_(u.dim()), R_(u.support_radius()) {
    if (d_ != 2 && d_ != 3) throw DomainError("hankel transform implemented for d = 2, 3");
    for (int n = 0; n < kTerms; ++n) mom_[n] = moment(u_, d_ == 2 ? 2 * n + 1 : 2 * n + 2);
    const auto& s = u_.segments();
    for (size_t i = 0; i < s.size(); ++i) {
      double r = s[i].r1;
      double left = s[i].d1(r), right = i + 1 < s.size() ? s[i + 1].d1(r) : 0.0;
      double jump = r * (right - left);  // jump of r u' (2D) and of (r u)' (3D)
      if (jump != 0.0) knots_.push_back({r, jump});
      if (s[i].kind == FormKind::Smooth) smooth_.emplace(i, SmoothTable(s[i], d_));
    }
  }

  double operator()(double rho) const {
    double c = 2.0 * kPi * rho;
    if (c * R_ <= 2.0) return series(c);
    double sum = 0.0;
    if (d_ == 2) {
      for (auto [r, j] : knots_) sum += j * ::j0(c * r);
      for (size_t i = 0; i < u_.segments().size(); ++i) sum += segment(i, c);
      return -2.0 * kPi / (c * c) * sum;
    }
    for (auto [r, j] : knots_) sum += j * std::sin(c * r);
    for (size_t i = 0; i < u_.segments().size(); ++i) sum += segment(i, c);
    return -2.0 / rho / (c * c) * sum;
  }

 private:
  static constexpr int kTerms = 30;

  static constexpr long kMinSmoothPanels = 16;
  // Quadrature weights times (r u')' (2D) or (r u)'' (3D) on nested panel grids of 16 * 2^L
  // panels, so repeated frequencies reuse the profile evaluations.
  struct SmoothTable {
    std::vector<std::vector<double>> r, wg;
    double width = 0.0;
    SmoothTable(const Segment& s, int d) : width(s.width()) {
      const GL16& q = gl16();
      long max_panels = static_cast<long>(std::ceil(kSmoothCutoff / (2.0 * kPi))) + 1;
      for (long panels = kMinSmoothPanels;; panels *= 2) {
        std::vector<double> rr, ww;
        double h = width / panels;
        for (long p = 0; p < panels; ++p)
          for (int i = 0; i < kGL; ++i) {
            double x = s.r0 + (p + 0.5) * h + 0.5 * h * q.x[i];
            double g = d == 2 ? s.d1(x) + x * s.d2(x) : 2.0 * s.d1(x) + x * s.d2(x);
            rr.push_back(x);
            ww.push_back(0.5 * h * q.w[i] * g);
          }
        r.push_back(std::move(rr));
        wg.push_back(std::move(ww));
        if (panels >= max_panels) break;
      }
    }
    double operator()(double c, bool bessel) const {
      double span = c * width;
      if (span > kSmoothCutoff) return 0.0;
      size_t L = 0;
      while (L + 1 < r.size() && std::ldexp(double(kMinSmoothPanels), static_cast<int>(L)) < span / (2.0 * kPi)) ++L;
      double sum = 0.0;
      for (size_t i = 0; i < r[L].size(); ++i) sum += wg[L][i] * (bessel ? ::j0(c * r[L][i]) : std::sin(c * r[L][i]));
      return sum;
    }
  };

  double segment(size_t i, double c) const {
    const Segment& s = u_.segments()[i];
    if (s.kind == FormKind::Smooth) return smooth_.at(i)(c, d_ == 2);
    return d_ == 2 ? seg2(s, c) : seg3(s, c);
  }

  double series(double c) const {
    double total = 0.0, coef = 1.0;
    for (int n = 0; n < kTerms; ++n) {
      if (n > 0) coef *= d_ == 2 ? -(0.25 * c * c) / (double(n) * n) : -(c * c) / ((2.0 * n) * (2.0 * n + 1.0));
      total += coef * mom_[n];
      if (std::fabs(coef) < 1e-40) break;
    }
    return (d_ == 2 ? 2.0 : 4.0) * kPi * total;
  }

  // int (r u')' J0(c r) over a segment
  static double seg2(const Segment& s, double c) {
    switch (s.kind) {
      case FormKind::Constant:
      case FormKind::LogAffine: return 0.0;
      case FormKind::Power:
        if (s.p == 0.0) return 0.0;
        return oscillatory([&](double r) { return s.a * s.p * s.p * std::pow(r, s.p - 1.0); }, s.r0, s.r1, c, true, false);
      case FormKind::Affine: return oscillatory([&](double) { return s.a; }, s.r0, s.r1, c, true, false);
      case FormKind::Smooth:
        return oscillatory([&](double r) { return s.d1(r) + r * s.d2(r); }, s.r0, s.r1, c, true, true);
    }
    return 0.0;
  }

  // int (r u)'' sin(c r) over a segment
  static double seg3(const Segment& s, double c) {
    switch (s.kind) {
      case FormKind::Constant: return 0.0;
      case FormKind::Affine: return 2.0 * s.a * (std::cos(c * s.r0) - std::cos(c * s.r1)) / c;
      case FormKind::Power:
        if (s.p == 0.0 || s.p == -1.0) return 0.0;
        return oscillatory([&](double r) { return s.a * s.p * (s.p + 1.0) * std::pow(r, s.p - 1.0); }, s.r0, s.r1, c,
                           false, false);
      case FormKind::LogAffine: return oscillatory([&](double r) { return s.a / r; }, s.r0, s.r1, c, false, false);
      case FormKind::Smooth:
        return oscillatory([&](double r) { return 2.0 * s.d1(r) + r * s.d2(r); }, s.r0, s.r1, c, false, true);
    }
    return 0.0;
  }

  const RadialProfile& u_;
  int d_;
  double R_;
  double mom_[kTerms];
  std::vector<std::pair<double, double>> knots_;
  std::map<size_t, SmoothTable> smooth_;
};

}  // namespace

double hankel(const RadialProfile& u, double rho) { return HankelPlan(u)(rho); }

double LPBank::chi(double x) {
  x = std::fabs(x);
  return 1.0 - SmoothStep::value(x - 1.0);
}

double LPBank::psi(double x) { return chi(0.5 * x) - chi(x); }

Spectrum::Spectrum(const Density& E, const SpectrumOptions& opt, int dim) : opt_(opt), dim_(dim) {
  const GL16& q = gl16();
  for (int m = opt_.m_lo; m <= opt_.m_hi; ++m) {
    double a = std::ldexp(1.0, m), b = 2.0 * a;
    double osc = a * 2.0 * opt_.osc_radius;  // oscillations of E across the octave
    long nodes = std::clamp<long>(static_cast<long>(std::ceil(osc))  * kGL, opt_.min_nodes, opt_.max_nodes);
    long panels = std::max<long>(1, nodes / kGL);
    double h = (b - a) / panels;
    octave_start_.push_back(rho_.size());
    for (long p = 0; p < panels; ++p) {
      double mid = a + (p + 0.5) * h;
      for (int i = 0; i < kGL; ++i) {
        rho_.push_back(mid + 0.5 * h * q.x[i]);
        w_.push_back(0.5 * h * q.w[i]);
      }
    }
  }
  octave_start_.push_back(rho_.size());
  E_.assign(rho_.size(), 0.0);
  const long n = static_cast<long>(rho_.size());
  if (opt_.parallel) {
#pragma omp parallel for schedule(dynamic, 256)
    for (long i = 0; i < n; ++i) E_[i] = E(rho_[i]);
  } else {
    for (long i = 0; i < n; ++i) E_[i] = E(rho_[i]);
  }
  double lo = std::ldexp(1.0, opt_.m_lo);
  low_tail_ = E(lo) * lo / dim_;
  auto octave = [&](int idx) {
    double s = 0.0;
    for (size_t i = octave_start_[idx]; i < octave_start_[idx + 1]; ++i) s += w_[i] * E_[i];
    return s;
  };
  int last = static_cast<int>(octave_start_.size()) - 2;
  double i1 = octave(last), i0 = octave(last - 1);
  double ratio = i0 > 0.0 ? i1 / i0 : 0.0;
  high_tail_ = ratio < 1.0 ? i1 * ratio / (1.0 - ratio) : i1;
}

double Spectrum::integrate(const std::function<double(double)>& wt) const {
  double s = 0.0;
  for (size_t i = 0; i < rho_.size(); ++i) s += w_[i] * wt(rho_[i]) * E_[i];
  return s + low_tail_ * wt(std::ldexp(1.0, opt_.m_lo)) + high_tail_ * wt(std::ldexp(1.0, opt_.m_hi + 1));
}

double Spectrum::l2_sq() const {
  double s = 0.0;
  for (size_t i = 0; i < rho_.size(); ++i) s += w_[i] * E_[i];
  return s + low_tail_ + high_tail_;
}

double Spectrum::band_sq(int j, bool homogeneous) const {
  if (!homogeneous && j < -1) return 0.0;
  if (!homogeneous && j == -1) {
    double s = low_tail_;
    for (size_t i = 0; i < rho_.size() && rho_[i] < 2.0; ++i) s += w_[i] * std::pow(LPBank::chi(rho_[i]), 2) * E_[i];
    return s;
  }
  int first = j - opt_.m_lo, lastoct = j + 1 - opt_.m_lo;
  double s = 0.0;
  for (int o = std::max(first, 0); o <= std::min(lastoct, opt_.m_hi - opt_.m_lo); ++o)
    for (size_t i = octave_start_[o]; i < octave_start_[o + 1]; ++i)
      s += w_[i] * std::pow(LPBank::psi(std::ldexp(rho_[i], -j)), 2) * E_[i];
  return s;
}

double Spectrum::hs_sq(double s) const {
  return integrate([s](double r) { return std::pow(1.0 + 4.0 * kPi * kPi * r * r, s); });
}

SpectrumOptions spectrum_options_for(const RadialProfile& u) {
  SpectrumOptions o;
  double R = u.support_radius();
  double fine = u.min_feature();
  o.osc_radius = R;
  o.m_lo = static_cast<int>(std::floor(std::log2(1.0 / R))) - 14;
  o.m_hi = std::min(60, static_cast<int>(std::ceil(std::log2(1.0 / fine))) + 16);
  return o;
}

Spectrum Spectrum::of_profile(const RadialProfile& u, bool parallel) {
  SpectrumOptions o = spectrum_options_for(u);
  o.parallel = parallel;
  HankelPlan plan(u);
  double area = sphere_area(u.dim());
  int d = u.dim();
  return Spectrum([&](double rho) {
    double v = plan(rho);
    return area * std::pow(rho, d - 1) * v * v;
  }, o, d);
}

namespace {

struct BandNodes {
  std::vector<double> rho, w, uhat;
};

BandNodes band_nodes(const HankelPlan& plan, int j, double radius, bool parallel) {
  const GL16& q = gl16();
  double a = std::ldexp(1.0, j), b = std::ldexp(1.0, j + 2);
  long panels = static_cast<long>(std::ceil((b - a) * 2.0 * radius)) + 4;
  double h = (b - a) / panels;
  BandNodes n;
  for (long p = 0; p < panels; ++p)
    for (int i = 0; i < kGL; ++i) {
      n.rho.push_back(a + (p + 0.5) * h + 0.5 * h * q.x[i]);
      n.w.push_back(0.5 * h * q.w[i]);
    }
  n.uhat.resize(n.rho.size());
  const long m = static_cast<long>(n.rho.size());
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < m; ++i) n.uhat[i] = plan(n.rho[i]) * LPBank::psi(std::ldexp(n.rho[i], -j));
  } else {
    for (long i = 0; i < m; ++i) n.uhat[i] = plan(n.rho[i]) * LPBank::psi(std::ldexp(n.rho[i], -j));
  }
  return n;
}

double inverse_at(const BandNodes& n, int d, double r) {
  double s = 0.0;
  for (size_t i = 0; i < n.rho.size(); ++i) {
    double c = 2.0 * kPi * n.rho[i];
    double k;
    if (d == 2) k = 2.0 * kPi * n.rho[i] * ::j0(c * r);
    else k = r == 0.0 ? 4.0 * kPi * n.rho[i] * n.rho[i] : 2.0 * n.rho[i] * std::sin(c * r) / r;
    s += n.w[i] * n.uhat[i] * k;
  }
  return s;
}

std::vector<double> band_samples(const RadialProfile& u, int j) {
  double step = std::ldexp(1.0, -j) / 8.0;
  double R = u.support_radius() + 16.0 * std::ldexp(1.0, -j);
  long n = std::min<long>(4000, static_cast<long>(R / step) + 1);
  std::vector<double> r;
  for (long i = 0; i <= n; ++i) r.push_back(R * i / n);
  for (double k : u.knots())
    for (int m = -8; m <= 8; ++m) {
      double x = k + m * step;
      if (x >= 0.0) r.push_back(x);
    }
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace

double band_value(const RadialProfile& u, int j, double r) {
  HankelPlan plan(u);
  BandNodes n = band_nodes(plan, j, u.support_radius() + r, false);
  return inverse_at(n, u.dim(), r);
}

double band_sup(const RadialProfile& u, int j, bool parallel) {
  HankelPlan plan(u);
  std::vector<double> r = band_samples(u, j);
  BandNodes n = band_nodes(plan, j, u.support_radius() + r.back(), parallel);
  std::vector<double> vals(r.size());
  const long m = static_cast<long>(r.size());
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < m; ++i) vals[i] = std::fabs(inverse_at(n, u.dim(), r[i]));
  } else {
    for (long i = 0; i < m; ++i) vals[i] = std::fabs(inverse_at(n, u.dim(), r[i]));
  }
  return *std::max_element(vals.begin(), vals.end());
}

namespace {

// int_0^x J0 via 2 sum_k J_{2k+1}(x), with J_n from normalised backward recurrence.
double integral_j0(double x) {
  if (x == 0.0) return 0.0;
  long N = 2 * (static_cast<long>(x + 30.0 + 8.0 * std::cbrt(x)) / 2 + 1);
  double jp = 0.0, j = 1e-300, norm = 0.0, odd = 0.0;
  for (long n = N; n >= 1; --n) {
    double jm = 2.0 * n / x * j - jp;  // J_{n-1}
    jp = j;
    j = jm;
    if ((n - 1) % 2 == 1) odd += j;
    else if (n - 1 > 0) norm += 2.0 * j;
    if (std::fabs(j) > 1e250) {
      j *= 1e-250, jp *= 1e-250, norm *= 1e-250, odd *= 1e-250;
    }
  }
  norm += j;  // J_0
  return 2.0 * odd / norm;
}

}  // namespace

double ga_transform(double a, double rho) {
  double c = 2.0 * kPi * a * rho;
  // 2 pi a int_1^inf (1 - h(s)) J0(c s) ds, split at s = 2.
  if (c > kSmoothCutoff) return 0.0;
  double inner = oscillatory([](double s) { return SmoothStep::value(s - 1.0); }, 1.0, 2.0, c, true, false);
  double outer = (1.0 - integral_j0(2.0 * c)) / c;
  return 2.0 * kPi * a * (inner + outer);
}

Density ga_density(double a) {
  return [a](double rho) {
    double g = ga_transform(a, rho);
    return 2.0 * kPi * rho * g * g;
  };
}

Density x1_over_r_density() {
  return [](double rho) { return kPi / (rho * rho * rho); };
}

}  // namespace nlw
