#include "nlw/profile.hpp"

#include <algorithm>
#include <cmath>

#include "nlw/errors.hpp"
#include "nlw/smooth_step.hpp"

namespace nlw {

double Segment::value(double r) const {
  switch (kind) {
    case FormKind::Constant: return b;
    case FormKind::LogAffine: return a * std::log(r) + b;
    case FormKind::Power: return a * std::pow(r, p) + b;
    case FormKind::Affine: return b + a * (r - r0);
    case FormKind::Smooth: return smooth->value(r);
  }
  return 0.0;
}

double Segment::d1(double r) const {
  switch (kind) {
    case FormKind::Constant: return 0.0;
    case FormKind::LogAffine: return a / r;
    case FormKind::Power: return a * p * std::pow(r, p - 1.0);
    case FormKind::Affine: return a;
    case FormKind::Smooth: return smooth->d1(r);
  }
  return 0.0;
}

double Segment::d2(double r) const {
  switch (kind) {
    case FormKind::Constant: return 0.0;
    case FormKind::LogAffine: return -a / (r * r);
    case FormKind::Power: return a * p * (p - 1.0) * std::pow(r, p - 2.0);
    case FormKind::Affine: return 0.0;
    case FormKind::Smooth: return smooth->d2(r);
  }
  return 0.0;
}

Segment constant_seg(double r0, double r1, double c) { return {r0, r1, FormKind::Constant, 0.0, c, 0.0, nullptr}; }
Segment log_affine_seg(double r0, double r1, double a, double b) { return {r0, r1, FormKind::LogAffine, a, b, 0.0, nullptr}; }
Segment power_seg(double r0, double r1, double a, double p, double b) { return {r0, r1, FormKind::Power, a, b, p, nullptr}; }
Segment affine_seg(double r0, double r1, double slope, double start_value) {
  return {r0, r1, FormKind::Affine, slope, start_value, 0.0, nullptr};
}
Segment smooth_seg(double r0, double r1, SmoothForm f) {
  return {r0, r1, FormKind::Smooth, 0.0, 0.0, 0.0, std::make_shared<const SmoothForm>(std::move(f))};
}

Segment step_seg(double r0, double r1, double v0, double v1) {
  double w = r1 - r0, dv = v1 - v0;
  return smooth_seg(r0, r1,
                    {[=](double r) { return v0 + dv * SmoothStep::value((r - r0) / w); },
                     [=](double r) { return dv / w * SmoothStep::d1((r - r0) / w); },
                     [=](double r) { return dv / (w * w) * SmoothStep::d2((r - r0) / w); }});
}

RadialProfile::RadialProfile(std::vector<Segment> segs, int dim, std::string label, double knot_tol)
    : segs_(std::move(segs)), dim_(dim), label_(std::move(label)) {
  if (dim_ < 2) throw DomainError("profiles need dimension >= 2");
  if (segs_.empty()) throw DomainError("profile needs at least one segment");
  if (segs_.front().r0 != 0.0) throw DomainError("first segment must start at r = 0");
  if (segs_.front().kind == FormKind::LogAffine || (segs_.front().kind == FormKind::Power && segs_.front().p < 0))
    throw DomainError("profile must be finite at r = 0");
  for (size_t i = 0; i < segs_.size(); ++i) {
    if (!(segs_[i].r1 > segs_[i].r0)) throw DomainError("segments must have positive width");
    if (i > 0 && segs_[i].r0 != segs_[i - 1].r1) throw DomainError("segments must be contiguous");
  }
  if (continuity_defect() > knot_tol) throw DomainError("profile " + label_ + " is discontinuous at a knot");
  const Segment& last = segs_.back();
  double end = last.value(last.r1);
  if (std::fabs(end) > knot_tol * std::max(1.0, std::fabs(plateau_value())))
    throw DomainError("profile " + label_ + " does not vanish at its support radius");
}

double RadialProfile::continuity_defect() const {
  double worst = 0.0;
  for (size_t i = 1; i < segs_.size(); ++i) {
    double r = segs_[i].r0;
    double l = segs_[i - 1].value(r), rr = segs_[i].value(r);
    worst = std::max(worst, std::fabs(l - rr) / std::max(1.0, std::max(std::fabs(l), std::fabs(rr))));
  }
  return worst;
}

std::vector<double> RadialProfile::knots() const {
  std::vector<double> k;
  for (const auto& s : segs_) k.push_back(s.r0);
  k.push_back(support_radius());
  return k;
}

double RadialProfile::plateau_radius() const {
  return segs_.front().kind == FormKind::Constant ? segs_.front().r1 : 0.0;
}

double RadialProfile::min_feature() const {
  double m = segs_.front().r1;
  for (const auto& s : segs_) m = std::min(m, s.width());
  return m;
}

const Segment* RadialProfile::find(double r) const {
  if (r >= support_radius()) return nullptr;
  auto it = std::upper_bound(segs_.begin(), segs_.end(), r, [](double x, const Segment& s) { return x < s.r1; });
  return &*it;
}

double RadialProfile::value(double r) const {
  const Segment* s = find(r);
  return s ? s->value(r) : 0.0;
}
double RadialProfile::d1(double r) const {
  const Segment* s = find(r);
  return s ? s->d1(r) : 0.0;
}
double RadialProfile::d2(double r) const {
  const Segment* s = find(r);
  return s ? s->d2(r) : 0.0;
}

RadialProfile RadialProfile::scaled(double f) const {
  std::vector<Segment> out = segs_;
  for (auto& s : out) {
    if (s.kind == FormKind::Smooth) {
      auto g = s.smooth;
      s.smooth = std::make_shared<const SmoothForm>(
          SmoothForm{[g, f](double r) { return f * g->value(r); }, [g, f](double r) { return f * g->d1(r); },
                     [g, f](double r) { return f * g->d2(r); }});
    } else {
      s.a *= f;
      s.b *= f;
    }
  }
  return RadialProfile(std::move(out), dim_, label_);
}

}  // namespace nlw
