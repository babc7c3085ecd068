#pragma once

#include "nlw/nonlinearity.hpp"
#include "nlw/ode.hpp"
#include "nlw/profile.hpp"

namespace nlw {

struct StepHarmonicData {
  RadialProfile profile;
  double epsilon = 0.0;    // k F(k^{(d-2)/2})^{-1/d}
  double amplitude = 0.0;  // a(k, epsilon)
};
// k^{(d-2)/2} on r <= eps/k, then a (r^{2-d} - 1) down to 0 at r = 1.
StepHarmonicData build_step_harmonic(double k, int d, const Nonlinearity& m);

struct Log2dData {
  RadialProfile profile;
  double epsilon = 0.0;  // e^{k/2} F(sqrt k)^{-1/2}
};
// sqrt k on r <= eps e^{-k/2}, then -2 sqrt(k) log r / log F(sqrt k) down to 0 at r = 1.
Log2dData build_log_2d(double k, const Nonlinearity& m);

// Moser function: gamma sqrt(k/4pi) on r <= nu e^{-k/2}, -gamma log(r/nu)/sqrt(k pi) up to nu.
RadialProfile build_moser(double k, double nu = 1.0, double gamma = 1.0);

struct OscillatingData {
  RadialProfile profile;
  ResonanceSchedule schedule;
  int N = 0;                 // number of sub-intervals, even
  double alpha = 0.0;        // 10 t N k^{4/3}
  double inner = 0.0;        // k^{-4/3}
  double outer = 0.0;        // (alpha + 1) k^{-4/3}
  double grad_sq_bulk = 0.0;  // |grad|^2 over the oscillating region
  double grad_sq_tail = 0.0;  // |grad|^2 of the harmonic decay beyond it
};
// Oscillation between sqrt k and sqrt k (1 - eta) on [k^{-4/3}, (alpha+1) k^{-4/3}] in d = 3,
// with N the even integer nearest to c_N k^{1/6} M^2.
OscillatingData build_oscillating(double k, int M, double c_N = 1.0);

struct BesovData {
  RadialProfile profile;
  double c = 0.0;         // c_k
  double integral = 0.0;  // int_0^2 g~_k
};
// gamma sqrt(k/4pi) - c_k int_0^r k^{-1/2} g_{e^{-k/2}} theta, vanishing at r = 2.
BesovData build_besov_data(double k, double gamma);

// k^gamma g_k with g_k = sqrt k on r <= e^{-k/2}, log-affine down to 0 at 2 e^{-k/2}.
RadialProfile build_piecewise_log_gk(double k, double gamma);

enum class BumpMode { Besov, Sobolev };

struct BumpFamily {
  RadialProfile profile;  // prefactor * v(e^{k/2} r)
  double prefactor = 0.0;
  double scale = 0.0;  // e^{-k/2}
  double support() const { return 0.5 * scale; }
};
// v = 1 on r <= 1/4, 0 on r >= 1/2; prefactor e^{k/2} (Besov) or e^{s k/2} (Sobolev).
BumpFamily build_bump_family(double k, BumpMode mode, double s = 0.0, int dim = 2);

// h_a(r) = h(r/a): 1 on r <= a, 0 on r >= 2a.
RadialProfile build_cutoff(double a, int dim = 2);

// Sum of Gaussians c_i exp(-(r/sigma_i)^2), cut where it falls below 1e-30.
RadialProfile build_gaussian_sum(const std::vector<double>& c, const std::vector<double>& sigma, int dim);

}  // namespace nlw
