#pragma once

#include <optional>

#include "nlw/logreal.hpp"
#include "nlw/nonlinearity.hpp"
#include "nlw/profile.hpp"
#include "nlw/spectral.hpp"

namespace nlw {

struct RadialNorms {
  double l2 = 0.0;
  double grad_l2 = 0.0;
};
RadialNorms radial_norms(const RadialProfile& u);

double sup_norm(const RadialProfile& u);

// sup_sigma sigma |{|f| > sigma}|^{1/2} for f = u (or |u'| when gradient is set).
double lorentz_2inf(const RadialProfile& u, bool gradient = false);

// Besov norm of order s, integrability 2, summability q (q = inf allowed).
// Inhomogeneous: blocks j >= -1.  Homogeneous: blocks over the sampled range.
double besov_norm(const Spectrum& sp, double s, double q, bool homogeneous = false);
double besov_norm(const RadialProfile& u, double s, double q, bool homogeneous = false);
double hs_norm(const RadialProfile& u, double s);

// sup |u(r) - u(r')| / |r - r'|^alpha over radial pairs, plus the sup norm.
double holder_norm(const RadialProfile& u, double alpha, bool parallel = true);

struct Energy {
  double grad_sq = 0.0;      // ||grad phi||^2
  double velocity_sq = 0.0;  // ||psi||^2
  LogReal potential;         // 2 int F(phi), or (1/4pi) int (e^{4pi phi^2} - 1) for the 2D exp energy
  LogReal total;
};
// E = ||grad phi||^2 + ||psi||^2 + 2 int F(phi).
Energy energy(const RadialProfile& phi, const RadialProfile* psi, const Nonlinearity& m);
// E = ||grad phi||^2 + ||psi||^2 + (1/4pi) int (e^{4pi phi^2} - 1), the critical 2D energy.
Energy energy_2d_exp(const RadialProfile& phi, const RadialProfile* psi);

// int (e^{alpha u^2} - 1) dx
LogReal moser_trudinger(const RadialProfile& u, double alpha);

struct LogInequality {
  double lhs = 0.0;       // ||u||_inf
  double besov = 0.0;     // ||u||_{B^1_{2,q'}}
  double holder = 0.0;    // ||u||_{C^alpha}
  double envelope = 0.0;  // ||u||_B log^{1/q}(e + ||u||_{C^alpha} / ||u||_B)
  double ratio = 0.0;     // lhs / envelope; the inequality holds with C = sup of this ratio
  int N = 0;              // ceil(log(e + ...) / (alpha log 2)), the proof's frequency split
};
// q' is the conjugate of q; q = 2 gives the H^1-type norm.
LogInequality log_inequality_check(const RadialProfile& u, double alpha, double q);

struct HMuInequality {
  double lhs = 0.0;       // ||u||_inf^2
  double hmu_sq = 0.0;    // ||grad u||^2 + mu^2 ||u||^2
  double argument = 0.0;  // 8^alpha mu^{-alpha} ||u||_{C^alpha} / ||u||_{H_mu}
  double required_C = 0.0;  // smallest C_lambda making the inequality hold for this u
};
// lambda must exceed 1/(2 pi alpha).
HMuInequality h_mu_inequality_check(const RadialProfile& u, double alpha, double mu, double lambda);

}  // namespace nlw
