#pragma once

#include <string>

namespace nlw {

enum class ModelKind { PurePower, ExpFamily, KleinGordonExp, Harmonic };

// Even potential F with F(0) = 0 and force F'. All models are increasing on u > 0.
class Nonlinearity {
 public:
  static Nonlinearity pure_power(int p);
  static Nonlinearity exp_family(double q);
  static Nonlinearity kg_exp();
  static Nonlinearity harmonic();
  // Parses "power:7", "exp:q=2", "kg-exp", "harmonic".
  static Nonlinearity parse(const std::string& tag);

  ModelKind kind() const { return kind_; }
  int power() const { return p_; }
  double q() const { return q_; }
  std::string tag() const;
  bool exponential() const { return kind_ == ModelKind::ExpFamily || kind_ == ModelKind::KleinGordonExp; }

  double potential(double u) const;
  double force(double u) const;
  double stiffness(double u) const;  // F''
  double log_potential(double u) const;
  // log(1 - F(x0 - delta) / F(x0)) for x0 > 0 and 0 < delta <= 2 x0.
  double log_gap_rel(double x0, double delta) const;

 private:
  Nonlinearity(ModelKind k, int p, double q) : kind_(k), p_(p), q_(q) {}
  // Exponent of the exponential models: 4 pi ((1+u^2)^{q/2} - 1).
  double phase(double u) const;
  ModelKind kind_;
  int p_ = 0;
  double q_ = 0.0;
};

// g_q(u) = u ((1+u^2)^{(q-2)/2} e^{4 pi ((1+u^2)^{q/2}-1)} - 1).
double g_q(double q, double u);

// Right-hand side of the difference bound for g_q with constant C.
double g_q_difference_bound(double q, double C, double u, double v);

// Smallest C on the sampled grid for which the difference bound holds.
double calibrate_g_q_constant(double q, double umax, int n);

}  // namespace nlw
