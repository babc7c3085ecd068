#pragma once

#include <functional>
#include <vector>

#include "nlw/profile.hpp"

namespace nlw {

// Radial Fourier transform with the e^{-2 pi i x.xi} convention, evaluated at |xi| = rho.
// 2D: 2 pi int u J0(2 pi rho r) r dr.  3D: (2/rho) int u r sin(2 pi rho r) dr.
double hankel(const RadialProfile& u, double rho);

// Littlewood-Paley bank: chi = 1 on [0,1], 0 on [2, inf); psi(x) = chi(x/2) - chi(x).
struct LPBank {
  static double chi(double x);
  static double psi(double x);
};

// Fourier-side energy density E(rho) with int E drho = ||u||_2^2, i.e. |S^{d-1}| rho^{d-1} |u^(rho)|^2.
using Density = std::function<double(double)>;

struct SpectrumOptions {
  int m_lo = -30;          // lowest octave 2^m
  int m_hi = 40;           // highest octave
  double osc_radius = 1.0;  // spatial extent driving oscillation of the density
  int min_nodes = 64;       // per octave
  int max_nodes = 1 << 14;  // per octave
  bool parallel = true;
};

// Density sampled on composite Gauss-Legendre nodes, octave by octave.
class Spectrum {
 public:
  Spectrum(const Density& E, const SpectrumOptions& opt, int dim);
  static Spectrum of_profile(const RadialProfile& u, bool parallel = true);

  // int w(rho) E(rho) drho over the sampled range plus tail estimates.
  double integrate(const std::function<double(double)>& w) const;
  double l2_sq() const;
  // ||Delta_j u||_2^2; j = -1 is the low block chi(rho)^2 in the inhomogeneous bank.
  double band_sq(int j, bool homogeneous = false) const;
  double hs_sq(double s) const;
  double low_tail() const { return low_tail_; }
  double high_tail() const { return high_tail_; }
  int m_lo() const { return opt_.m_lo; }
  int m_hi() const { return opt_.m_hi; }
  size_t size() const { return rho_.size(); }

 private:
  SpectrumOptions opt_;
  int dim_;
  std::vector<double> rho_, w_, E_;
  std::vector<size_t> octave_start_;
  double low_tail_ = 0.0, high_tail_ = 0.0;
};

// Choice of octave range and oscillation radius for a profile.
SpectrumOptions spectrum_options_for(const RadialProfile& u);

// Delta_j u evaluated physically at radius r (inverse transform over the band).
double band_value(const RadialProfile& u, int j, double r);
// sup_r |Delta_j u(r)| over a sample set resolving the band; parallel or serial reference.
double band_sup(const RadialProfile& u, int j, bool parallel = true);

// g_a = (1 - h_a)/r in 2D: transform 1/rho - FT[h_a / r](rho).
double ga_transform(double a, double rho);
// Density of g_a with the same normalisation as Spectrum.
Density ga_density(double a);
// Density of x_1/r in 2D: pi / rho^3.
Density x1_over_r_density();

}  // namespace nlw
