#pragma once

#include <vector>

#include "nlw/logreal.hpp"
#include "nlw/nonlinearity.hpp"

namespace nlw {

struct OdeState {
  double x = 0.0;
  double v = 0.0;
  double t = 0.0;
};

// Fixed-step trajectory of x'' + F'(x) = 0 with cubic Hermite dense output.
class Trajectory {
 public:
  Trajectory(const Nonlinearity& m, std::vector<OdeState> states)
      : model_(m), states_(std::move(states)) {}
  const std::vector<OdeState>& states() const { return states_; }
  OdeState at(double t) const;
  double energy(const OdeState& s) const { return 0.5 * s.v * s.v + model_.potential(s.x); }
  // max |E(t) - E(0)| / E(0)
  double energy_drift() const;
  // Times of downward zero crossings of x.
  std::vector<double> downward_zeros() const;

 private:
  Nonlinearity model_;
  std::vector<OdeState> states_;
};

struct PeriodResult {
  double alpha = 0.0;
  double beta = 0.0;
  double period = 0.0;
  double log_period = 0.0;
  double quarter_period = 0.0;
  double quad_error = 0.0;
};

struct ResonanceSchedule {
  int M = 1;
  double eta = 0.0;
  double t = 0.0;
  double identity_residual = 0.0;
  double eta_residual = 0.0;
};

struct DecoherenceTime {
  LogReal t;
  LogReal quarter_period;
  double x0 = 0.0;
  double target = 0.0;
  bool beyond_quarter = false;  // target lies past the first zero of the oscillation
};

// Symplectic composition of velocity Verlet: order 2, 4 or 6.
Trajectory integrate_ode(const Nonlinearity& m, double x0, double v0, double t_end, double dt, int order = 6);

// Turning point of the orbit through (x0, v0).
double amplitude(const Nonlinearity& m, double x0, double v0);

PeriodResult period(const Nonlinearity& m, double x0);

// Period from zero crossings of a time-stepped orbit.
double measured_period(const Nonlinearity& m, double x0, int periods, int steps_per_period = 1000);

// Time for the orbit released at rest from x0 to reach y, -x0 <= y < x0.
LogReal descent_time(const Nonlinearity& m, double x0, double y);
// Position reached after time t <= T/2 from rest at x0.
double position_at(const Nonlinearity& m, double x0, double t);
// sqrt(2 (F(x0) - F(y)))
LogReal speed_at(const Nonlinearity& m, double x0, double y);

ResonanceSchedule resonance_schedule(double k, int M, const Nonlinearity& m = Nonlinearity::pure_power(7));

// Time at which the orbit from (1+1/k) sqrt(k/4pi) reaches x0 - 1/x0 under the kg-exp force.
DecoherenceTime decoherence_time(double k);

}  // namespace nlw
