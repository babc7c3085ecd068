#pragma once

#include <string>
#include <vector>

#include "nlw/nonlinearity.hpp"
#include "nlw/profile.hpp"
#include "nlw/report.hpp"
#include "nlw/wave.hpp"

namespace nlw {

struct LinearFit {
  double slope = 0.0, intercept = 0.0;
  double max_residual = 0.0;  // largest |y - fit| over the samples
  double rms_residual = 0.0;
  double slope_stderr = 0.0;  // standard error of the slope (zero for two points)
};
// Least-squares line through (x, y); needs at least two distinct x.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct EnergyIllposedOptions {
  int d = 3;
  Nonlinearity model = Nonlinearity::pure_power(7);
  std::vector<double> ks{4, 16, 64, 256};
  // Oscillating data at fixed k for M = 1..M_max (3D, power 7 only); M_max = 0 skips.
  double k_osc = 4096;
  int M_max = 6;
  // Finite-volume run at the smallest k, measured on the physical cone.
  bool pde_check = true;
  double pde_dr = 1.0 / 3200;
};
Report run_energy_illposed(const EnergyIllposedOptions& opt = {});

struct DecoherenceOptions {
  double nu = 0.5;
  std::vector<double> ks;  // empty: 10, 11, ..., 40
  // Finite-volume run at k = pde_k up to min(t_k, a time that keeps half the plateau in the
  // numerical cone), compared with the ODE there.
  bool pde_check = true;
  double pde_k = 6;
};
Report run_decoherence(const DecoherenceOptions& opt);

enum class LowRegTarget { Lorentz, Besov, Hs, GkHs };
LowRegTarget parse_lowreg_target(const std::string& name);
std::string to_string(LowRegTarget t);

struct LowRegOptions {
  LowRegTarget target = LowRegTarget::Lorentz;
  double gamma = 1.2;
  double s = 0.5;  // Sobolev index of the Hs and GkHs targets
  std::vector<double> ks{4, 8, 12, 16, 20, 24};
  double slope_tol = 0.05;
};
Report run_lowreg_illposed(const LowRegOptions& opt);

// Groups: period, ode, integrals, resonance, inequalities, spectral.  Empty selects all.
Report run_lemma_suite(const std::vector<std::string>& groups = {});

Report run_strichartz(const StrichartzOptions& opt = {});

struct ModulusOptions {
  double k = 4;  // Moser data of the 2D Klein-Gordon exponential model
  double gamma = 0.5;
  std::vector<double> deltas{1e-1, 5e-2, 2.5e-2, 1.25e-2};
  double T = 0.5;
  double dr = 1.0 / 400;
};
Report run_flow_modulus(const ModulusOptions& opt = {});

// Profiles on which the spectral inequalities are exercised.
std::vector<RadialProfile> profile_corpus();

}  // namespace nlw
