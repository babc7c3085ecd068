#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace nlw {

enum class FormKind { Constant, LogAffine, Power, Affine, Smooth };

struct SmoothForm {
  std::function<double(double)> value, d1, d2;
};

// One closed-form piece on [r0, r1]:
//   Constant   b
//   LogAffine  a log r + b
//   Power      a r^p + b
//   Affine     b + a (r - r0)
//   Smooth     arbitrary C-infinity function with analytic derivatives
struct Segment {
  double r0 = 0.0, r1 = 0.0;
  FormKind kind = FormKind::Constant;
  double a = 0.0, b = 0.0, p = 0.0;
  std::shared_ptr<const SmoothForm> smooth;

  double value(double r) const;
  double d1(double r) const;
  double d2(double r) const;
  double width() const { return r1 - r0; }
};

Segment constant_seg(double r0, double r1, double c);
Segment log_affine_seg(double r0, double r1, double a, double b);
Segment power_seg(double r0, double r1, double a, double p, double b);
Segment affine_seg(double r0, double r1, double slope, double start_value);
Segment smooth_seg(double r0, double r1, SmoothForm f);
// v0 + (v1 - v0) E((r - r0)/(r1 - r0)) with E the smooth step.
Segment step_seg(double r0, double r1, double v0, double v1);

// Radial function on R^d given by closed-form segments covering [0, R],
// identically zero beyond R.
class RadialProfile {
 public:
  RadialProfile() = default;
  RadialProfile(std::vector<Segment> segs, int dim, std::string label, double knot_tol = 1e-12);

  int dim() const { return dim_; }
  const std::string& label() const { return label_; }
  const std::vector<Segment>& segments() const { return segs_; }
  std::vector<double> knots() const;
  double support_radius() const { return segs_.empty() ? 0.0 : segs_.back().r1; }
  // Radius of the initial constant segment, zero if none.
  double plateau_radius() const;
  double plateau_value() const { return value(0.0); }
  double min_feature() const;

  double value(double r) const;
  double d1(double r) const;
  double d2(double r) const;
  // Largest continuity defect over interior knots, relative to max(1, |value|).
  double continuity_defect() const;

  RadialProfile scaled(double factor) const;

 private:
  const Segment* find(double r) const;
  std::vector<Segment> segs_;
  int dim_ = 2;
  std::string label_;
};

}  // namespace nlw
