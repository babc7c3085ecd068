#pragma once

#include <cmath>

namespace nlw {

// C-infinity transition E with E = 0 for t <= 0, E = 1 for t >= 1 and all
// derivatives vanishing at both ends: E(t) = 1 / (1 + exp(1/t - 1/(1-t))).
struct SmoothStep {
  static double value(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return 1.0 / (1.0 + std::exp(1.0 / t - 1.0 / (1.0 - t)));
  }
  static double d1(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    double z = 1.0 / t - 1.0 / (1.0 - t);
    double e1me = 1.0 / (2.0 + 2.0 * std::cosh(z));
    double dz = -1.0 / (t * t) - 1.0 / ((1.0 - t) * (1.0 - t));
    return -e1me * dz;
  }
  static double d2(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    double z = 1.0 / t - 1.0 / (1.0 - t);
    double e = value(t);
    double e1me = 1.0 / (2.0 + 2.0 * std::cosh(z));
    double dz = -1.0 / (t * t) - 1.0 / ((1.0 - t) * (1.0 - t));
    double d2z = 2.0 / (t * t * t) - 2.0 / ((1.0 - t) * (1.0 - t) * (1.0 - t));
    double de = -e1me * dz;
    return -de * (1.0 - 2.0 * e) * dz - e1me * d2z;
  }
};

}  // namespace nlw
