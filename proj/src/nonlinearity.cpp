#include "nlw/nonlinearity.hpp"

#include <cmath>
#include <numbers>
#include <regex>

#include "nlw/errors.hpp"
#include "nlw/logreal.hpp"

namespace nlw {

namespace {
constexpr double kFourPi = 4.0 * std::numbers::pi;
}

Nonlinearity Nonlinearity::pure_power(int p) {
  if (p < 1 || p % 2 == 0) throw DomainError("pure power exponent must be an odd positive integer");
  return {ModelKind::PurePower, p, 0.0};
}

Nonlinearity Nonlinearity::exp_family(double q) {
  if (!(q >= 1.0)) throw DomainError("exponential family requires q >= 1");
  return {ModelKind::ExpFamily, 0, q};
}

Nonlinearity Nonlinearity::kg_exp() { return {ModelKind::KleinGordonExp, 0, 2.0}; }
Nonlinearity Nonlinearity::harmonic() { return {ModelKind::Harmonic, 1, 0.0}; }

Nonlinearity Nonlinearity::parse(const std::string& tag) {
  std::smatch m;
  if (tag == "kg-exp") return kg_exp();
  if (tag == "harmonic") return harmonic();
  if (std::regex_match(tag, m, std::regex(R"(power:(\d+))"))) return pure_power(std::stoi(m[1]));
  if (std::regex_match(tag, m, std::regex(R"(exp:q=([0-9.]+))"))) return exp_family(std::stod(m[1]));
  throw DomainError("unknown nonlinearity tag: " + tag);
}

std::string Nonlinearity::tag() const {
  switch (kind_) {
    case ModelKind::PurePower: return "power:" + std::to_string(p_);
    case ModelKind::ExpFamily: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "exp:q=%g", q_);
      return buf;
    }
    case ModelKind::KleinGordonExp: return "kg-exp";
    case ModelKind::Harmonic: return "harmonic";
  }
  return {};
}

double Nonlinearity::phase(double u) const {
  if (kind_ == ModelKind::KleinGordonExp) return kFourPi * u * u;
  return kFourPi * std::expm1(0.5 * q_ * std::log1p(u * u));
}

double Nonlinearity::potential(double u) const {
  switch (kind_) {
    case ModelKind::PurePower: return std::pow(std::fabs(u), p_ + 1) / (p_ + 1);
    case ModelKind::Harmonic: return 0.5 * u * u;
    case ModelKind::ExpFamily: return std::expm1(phase(u)) / (kFourPi * q_);
    case ModelKind::KleinGordonExp: return std::expm1(phase(u)) / (2.0 * kFourPi);
  }
  return 0.0;
}

double Nonlinearity::force(double u) const {
  switch (kind_) {
    case ModelKind::PurePower: return std::copysign(std::pow(std::fabs(u), p_), u);
    case ModelKind::Harmonic: return u;
    case ModelKind::ExpFamily:
      return u * std::pow(1.0 + u * u, 0.5 * (q_ - 2.0)) * std::exp(phase(u));
    case ModelKind::KleinGordonExp: return u * std::exp(phase(u));
  }
  return 0.0;
}

double Nonlinearity::stiffness(double u) const {
  switch (kind_) {
    case ModelKind::PurePower: return p_ * std::pow(std::fabs(u), p_ - 1);
    case ModelKind::Harmonic: return 1.0;
    case ModelKind::KleinGordonExp: return std::exp(phase(u)) * (1.0 + 2.0 * kFourPi * u * u);
    case ModelKind::ExpFamily: {
      double s = 1.0 + u * u;
      double core = std::pow(s, 0.5 * (q_ - 2.0)) * std::exp(phase(u));
      return core * (1.0 + (q_ - 2.0) * u * u / s + kFourPi * q_ * u * u * std::pow(s, 0.5 * (q_ - 2.0)));
    }
  }
  return 0.0;
}

double Nonlinearity::log_potential(double u) const {
  if (u == 0.0) return -std::numeric_limits<double>::infinity();
  switch (kind_) {
    case ModelKind::PurePower: return (p_ + 1) * std::log(std::fabs(u)) - std::log(p_ + 1.0);
    case ModelKind::Harmonic: return 2.0 * std::log(std::fabs(u)) - std::log(2.0);
    case ModelKind::ExpFamily: return log_expm1(phase(u)) - std::log(kFourPi * q_);
    case ModelKind::KleinGordonExp: return log_expm1(phase(u)) - std::log(2.0 * kFourPi);
  }
  return 0.0;
}

double Nonlinearity::log_gap_rel(double x0, double delta) const {
  double y = x0 - delta;
  if (!exponential()) {
    int n = kind_ == ModelKind::Harmonic ? 2 : p_ + 1;
    double lr = delta < x0 ? std::log1p(-delta / x0) : std::log(std::fabs(y) / x0);
    return std::log(-std::expm1(n * lr));
  }
  // 1 - F(y)/F(x0) = e^{P(y)} expm1(P(x0) - P(y)) / expm1(P(x0)), P the phase.
  double d2 = delta * (2.0 * x0 - delta);  // x0^2 - y^2
  double dphase;
  if (kind_ == ModelKind::KleinGordonExp) {
    dphase = kFourPi * d2;
  } else {
    double s0 = 1.0 + x0 * x0;
    double lp0 = 0.5 * q_ * std::log(s0);
    dphase = kFourPi * std::exp(lp0) * -std::expm1(0.5 * q_ * std::log1p(-d2 / s0));
  }
  if (dphase <= 0.0) return -std::numeric_limits<double>::infinity();
  return phase(y) + log_expm1(dphase) - log_expm1(phase(x0));
}

double g_q(double q, double u) {
  double s = 1.0 + u * u;
  return u * (std::pow(s, 0.5 * (q - 2.0)) * std::exp(kFourPi * std::expm1(0.5 * q * std::log1p(u * u))) - 1.0);
}

double g_q_difference_bound(double q, double C, double u, double v) {
  double br = std::expm1(C * std::pow(std::fabs(u), q)) + std::expm1(C * std::pow(std::fabs(v), q));
  if (q > 2.0) br += u * u + v * v;
  return C * std::fabs(u - v) * br;
}

double calibrate_g_q_constant(double q, double umax, int n) {
  auto holds = [&](double C) {
    for (int i = 0; i <= n; ++i) {
      double u = -umax + 2.0 * umax * i / n;
      for (int j = 0; j < i; ++j) {
        double v = -umax + 2.0 * umax * j / n;
        if (std::fabs(g_q(q, u) - g_q(q, v)) > g_q_difference_bound(q, C, u, v)) return false;
      }
    }
    return true;
  };
  double lo = 1e-3, hi = 1e3;
  if (!holds(hi)) throw NumericError("g_q difference bound fails for every tested constant");
  for (int it = 0; it < 80; ++it) {
    double mid = std::sqrt(lo * hi);
    (holds(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace nlw
