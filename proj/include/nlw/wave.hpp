#pragma once

#include <cstdint>
#include <vector>

#include "nlw/nonlinearity.hpp"
#include "nlw/ode.hpp"
#include "nlw/profile.hpp"

namespace nlw {

struct WaveConfig {
  Nonlinearity model = Nonlinearity::pure_power(7);
  int d = 3;
  double mass = 0.0;     // 0 or 1
  bool free = false;     // drop the nonlinear force
  double T = 1.0;
  double dr = 1.0 / 200;
  double cfl = 0.75;     // dt = cfl * dr at most
  double margin = 0.5;   // extra room beyond support + T before the reflecting wall
  int slices = 11;       // stored time slices, including t = 0 and t = T
  double stiffness = 0.1;  // sub-cycle the pointwise force when |F''| dt^2 exceeds this
  bool parallel = true;
};

// Grid, stored slices and per-slice discrete energy.
struct WaveField {
  std::vector<double> r;
  double dr = 0.0, dt = 0.0;
  long steps = 0;
  int d = 3;
  double mass = 0.0;
  std::vector<double> times;
  std::vector<long> slice_steps;
  std::vector<std::vector<double>> u, v;
  std::vector<double> energy;  // modified energy, exactly conserved when the force is off
  long max_substeps = 1;
};

// Explicit conservative finite-volume scheme.  Each step is a Strang splitting: half a step of
// the pointwise oscillator u_tt = -F'(u), a full kick by the discrete Laplacian and mass
// term, and another half oscillator step.  psi may be null (zero velocity).
WaveField evolve(const RadialProfile& phi, const RadialProfile* psi, const WaveConfig& cfg);

// d = 3 only: leapfrog for w = r u at Courant number exactly 1, with the force as a pointwise
// source.  The free part is exact on the grid, so the numerical domain of dependence is the
// light cone and data jumps travel without smearing.  Meant for short runs: the source makes the
// grid-scale mode grow like e^{T sqrt(max F'')}.  cfg.dr is an upper bound on the spacing.
WaveField evolve_characteristic_3d(const RadialProfile& phi, const RadialProfile* psi, const WaveConfig& cfg);

// Cell volumes and face areas of the radial grid, normalised by the sphere area.
struct RadialGrid {
  std::vector<double> r, vol, face;  // face[i] sits at r_i + dr/2
  double dr = 0.0;
  int d = 3;
  RadialGrid(double R, double dr, int d);
  size_t size() const { return r.size(); }
};

// Same, from values already sampled on the grid r_i = i * dr.
WaveField evolve_samples(std::vector<double> u, std::vector<double> v, const WaveConfig& cfg);

// v += dt (Lap u - m u); the coupling half of each step.
void kick(const RadialGrid& g, double mass, double dt, const std::vector<double>& u, std::vector<double>& v,
          std::vector<double>& acc, bool parallel);
// Pointwise flow of u_tt = -F'(u) over time h (a plain drift when m is null), sub-cycled
// where |F''| h^2 is large; returns the largest sub-step count used.
long force_flow(const Nonlinearity* m, double h, double stiffness, std::vector<double>& u, std::vector<double>& v,
                bool parallel);
double discrete_energy(const RadialGrid& g, const Nonlinearity* m, double mass, double dt, const std::vector<double>& u,
                       const std::vector<double>& v);

// Values inside the numerical domain of dependence of the ball of radius rho.
struct ConeSample {
  double rho = 0.0;
  std::vector<double> times;
  std::vector<long> last_index;  // largest grid index inside the cone at each slice
  std::vector<std::vector<double>> u, v;
};
ConeSample cone_sample(const WaveField& f, double rho);

struct FspResult {
  std::vector<double> dr, deviation;
  double order = 0.0;  // smallest observed order across successive halvings
};
// Max deviation |u - x(t)|, |u_t - x'(t)| inside the cone, for fields on successively halved grids.
double cone_deviation(const WaveField& f, const Trajectory& traj, double rho);
FspResult fsp_check(const std::vector<WaveField>& fields, const Trajectory& traj, double rho);

struct StrichartzRow {
  int index = 0;
  double lhs_coarse = 0.0, lhs_fine = 0.0, rhs = 0.0;
  double ratio_coarse = 0.0, ratio_fine = 0.0;
  double refinement_change = 0.0;  // |fine / coarse - 1|
  bool skipped = false;
};
struct StrichartzOptions {
  int samples = 10;
  std::uint64_t seed = 20240601;
  double T = 1.0;
  double dr_coarse = 1.0 / 100;
  int time_slices = 32;
  int j_max = 3;
};
// ||u||_{L^4(0,T; B^{1/4}_{inf,2})} against ||u(0)||_{H^1} + ||u_t(0)||_{L^2} for free 2D Klein-Gordon.
std::vector<StrichartzRow> strichartz_spotcheck(const StrichartzOptions& opt);
double strichartz_lhs(const WaveField& f, int j_max);
// Random band-limited radial data (sums of Gaussians) used by the spot-check.
std::pair<RadialProfile, RadialProfile> strichartz_data(std::uint64_t seed, int index);

struct ModulusPoint {
  double delta = 0.0;
  double input_distance = 0.0;
  double output_distance = 0.0;  // sup over stored slices of the H^1 x L^2 distance
};
// Evolves phi and phi + delta * eta / ||eta||_{H^1} and records the separation.
std::vector<ModulusPoint> flow_modulus_probe(const RadialProfile& phi, const RadialProfile& eta,
                                             const std::vector<double>& deltas, const WaveConfig& cfg);

}  // namespace nlw
