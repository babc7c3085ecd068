#pragma once

#include <cmath>
#include <limits>

namespace nlw {

// Signed number stored as sign * exp(log_abs).
struct LogReal {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;

  static LogReal from_log(double l, int s = 1) { return {l, s}; }
  static LogReal from(double x) {
    if (x == 0.0) return {};
    return {std::log(std::fabs(x)), x > 0 ? 1 : -1};
  }

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
  double log10_abs() const { return log_abs / std::log(10.0); }
  bool is_zero() const { return sign == 0; }

  friend LogReal operator*(LogReal a, LogReal b) {
    if (a.sign == 0 || b.sign == 0) return {};
    return {a.log_abs + b.log_abs, a.sign * b.sign};
  }
  friend LogReal operator/(LogReal a, LogReal b) {
    if (a.sign == 0) return {};
    return {a.log_abs - b.log_abs, a.sign * b.sign};
  }
  friend LogReal operator+(LogReal a, LogReal b) {
    if (a.sign == 0) return b;
    if (b.sign == 0) return a;
    if (a.log_abs < b.log_abs) std::swap(a, b);
    double r = std::exp(b.log_abs - a.log_abs);
    if (a.sign == b.sign) return {a.log_abs + std::log1p(r), a.sign};
    if (r == 1.0) return {};
    return {a.log_abs + std::log1p(-r), a.sign};
  }
  friend LogReal operator-(LogReal a, LogReal b) {
    b.sign = -b.sign;
    return a + b;
  }
};

// log(e^z - 1) for z > 0 without overflow.
inline double log_expm1(double z) {
  return z > 1.0 ? z + std::log1p(-std::exp(-z)) : std::log(std::expm1(z));
}

inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

}  // namespace nlw
