#include "nlw/wave.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "nlw/errors.hpp"
#include "nlw/norms.hpp"
#include "nlw/profiles.hpp"
#include "nlw/quadrature.hpp"
#include "nlw/segment_integrals.hpp"
#include "nlw/spectral.hpp"

namespace nlw {

RadialGrid::RadialGrid(double R, double h, int dim) : dr(h), d(dim) {
  if (d != 2 && d != 3) throw DomainError("wave solver supports d = 2, 3");
  if (!(h > 0.0) || !(R > h)) throw DomainError("wave grid needs 0 < dr < R");
  long n = static_cast<long>(std::ceil(R / h - 1e-9));
  r.resize(n + 1), vol.resize(n + 1), face.resize(n + 1);
  for (long i = 0; i <= n; ++i) {
    r[i] = i * h;
    double lo = i == 0 ? 0.0 : (i - 0.5) * h, hi = (i + 0.5) * h;
    vol[i] = (std::pow(hi, d) - std::pow(lo, d)) / d;
    face[i] = i == n ? 0.0 : std::pow(hi, d - 1);  // reflecting wall beyond the last cell
  }
}

namespace {

inline double lap(const RadialGrid& g, const std::vector<double>& u, size_t i) {
  double right = i + 1 < u.size() ? g.face[i] * (u[i + 1] - u[i]) : 0.0;
  double left = i > 0 ? g.face[i - 1] * (u[i] - u[i - 1]) : 0.0;
  return (right - left) / (g.dr * g.vol[i]);
}

void accel(const RadialGrid& g, double mass, const std::vector<double>& u, std::vector<double>& a, bool parallel) {
  const long n = static_cast<long>(u.size());
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) a[i] = lap(g, u, i) - mass * u[i];
  } else {
    for (long i = 0; i < n; ++i) a[i] = lap(g, u, i) - mass * u[i];
  }
}

// <w, (-Lap + m) w> with the grid weights
double quad_form(const RadialGrid& g, double mass, const std::vector<double>& w) {
  double s = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i + 1 < w.size()) s += g.face[i] * std::pow(w[i + 1] - w[i], 2) / g.dr;
    s += mass * g.vol[i] * w[i] * w[i];
  }
  return s;
}

}  // namespace

void kick(const RadialGrid& g, double mass, double dt, const std::vector<double>& u, std::vector<double>& v,
          std::vector<double>& acc, bool parallel) {
  const long n = static_cast<long>(u.size());
  accel(g, mass, u, acc, parallel);
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) v[i] += dt * acc[i];
  } else {
    for (long i = 0; i < n; ++i) v[i] += dt * acc[i];
  }
}

namespace {

long flow_point(const Nonlinearity& m, double h, double stiffness, double& u, double& v) {
  double s = std::max(std::fabs(m.stiffness(u)), std::fabs(m.stiffness(u + h * v)));
  double need = std::ceil(h * std::sqrt(s / stiffness));
  if (!(need < 1e7)) throw NumericError("pointwise force too stiff to sub-cycle");
  long n = std::max(1L, static_cast<long>(need));
  double k = h / n, f = m.force(u);
  for (long j = 0; j < n; ++j) {
    v -= 0.5 * k * f;
    u += k * v;
    f = m.force(u);
    v -= 0.5 * k * f;
  }
  if (!std::isfinite(u) || !std::isfinite(v)) throw NumericError("non-finite value in the pointwise force flow");
  return n;
}

}  // namespace

long force_flow(const Nonlinearity* m, double h, double stiffness, std::vector<double>& u, std::vector<double>& v,
                bool parallel) {
  const long n = static_cast<long>(u.size());
  if (!m) {
    for (long i = 0; i < n; ++i) u[i] += h * v[i];
    return 1;
  }
  long most = 1;
  if (parallel) {
#pragma omp parallel for schedule(static) reduction(max : most)
    for (long i = 0; i < n; ++i) most = std::max(most, flow_point(*m, h, stiffness, u[i], v[i]));
  } else {
    for (long i = 0; i < n; ++i) most = std::max(most, flow_point(*m, h, stiffness, u[i], v[i]));
  }
  return most;
}

double discrete_energy(const RadialGrid& g, const Nonlinearity* m, double mass, double dt, const std::vector<double>& u,
                       const std::vector<double>& v) {
  double kin = 0.0, pot = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    kin += g.vol[i] * v[i] * v[i];
    if (m) pot += 2.0 * g.vol[i] * m->potential(u[i]);
  }
  // drift-kick-drift conserves |v|^2 - dt^2/4 <v, A v> + <u, A u> exactly for the linear part
  return sphere_area(g.d) * (kin - 0.25 * dt * dt * quad_form(g, mass, v) + quad_form(g, mass, u) + pot);
}

WaveField evolve_samples(std::vector<double> u, std::vector<double> v, const WaveConfig& cfg) {
  if (u.size() != v.size() || u.size() < 3) throw DomainError("evolve needs matching position and velocity samples");
  // stability limit of the stencil, set by the cell at the origin: 0.909 in 2D, 0.793 in 3D
  double limit = cfg.d == 2 ? 0.9 : 0.79;
  if (!(cfg.cfl > 0.0 && cfg.cfl <= limit))
    throw DomainError("CFL number must lie in (0, " + std::to_string(limit) + "] for d = " + std::to_string(cfg.d));
  if (!(cfg.T > 0.0)) throw DomainError("evolve needs T > 0");
  if (cfg.slices < 2) throw DomainError("evolve stores at least the first and last slice");
  RadialGrid g((u.size() - 1) * cfg.dr, cfg.dr, cfg.d);
  WaveField f;
  f.r = g.r, f.dr = cfg.dr, f.d = cfg.d, f.mass = cfg.mass;
  f.steps = static_cast<long>(std::ceil(cfg.T / (cfg.cfl * cfg.dr) - 1e-9));
  f.dt = cfg.T / f.steps;
  for (int s = 0; s < cfg.slices; ++s) f.slice_steps.push_back(std::lround(double(s) * f.steps / (cfg.slices - 1)));
  const Nonlinearity* m = cfg.free ? nullptr : &cfg.model;
  std::vector<double> acc(u.size());
  size_t next = 0;
  for (long n = 0;; ++n) {
    if (next < f.slice_steps.size() && f.slice_steps[next] == n) {
      f.times.push_back(n * f.dt);
      f.u.push_back(u);
      f.v.push_back(v);
      f.energy.push_back(discrete_energy(g, m, cfg.mass, f.dt, u, v));
      ++next;
    }
    if (n == f.steps) break;
    f.max_substeps = std::max(f.max_substeps, force_flow(m, 0.5 * f.dt, cfg.stiffness, u, v, cfg.parallel));
    kick(g, cfg.mass, f.dt, u, v, acc, cfg.parallel);
    f.max_substeps = std::max(f.max_substeps, force_flow(m, 0.5 * f.dt, cfg.stiffness, u, v, cfg.parallel));
  }
  return f;
}

WaveField evolve(const RadialProfile& phi, const RadialProfile* psi, const WaveConfig& cfg) {
  if (phi.dim() != cfg.d || (psi && psi->dim() != cfg.d)) throw DomainError("data dimension differs from the run");
  for (const RadialProfile* p : {&phi, psi}) {
    if (!p) continue;
    double w = p->min_feature();
    if (w < 10.0 * cfg.dr)
      throw ResolutionError("data '" + p->label() + "' has a feature of width " + std::to_string(w) +
                            ", below 10 * dr = " + std::to_string(10.0 * cfg.dr));
  }
  double support = std::max(phi.support_radius(), psi ? psi->support_radius() : 0.0);
  RadialGrid g(support + cfg.T + cfg.margin, cfg.dr, cfg.d);
  std::vector<double> u(g.size()), v(g.size(), 0.0);
  for (size_t i = 0; i < g.size(); ++i) {
    u[i] = phi.value(g.r[i]);
    if (psi) v[i] = psi->value(g.r[i]);
  }
  return evolve_samples(std::move(u), std::move(v), cfg);
}

ConeSample cone_sample(const WaveField& f, double rho) {
  ConeSample c;
  c.rho = rho;
  long edge = static_cast<long>(std::floor(rho / f.dr));
  for (size_t s = 0; s < f.times.size(); ++s) {
    // u after n steps depends on data within n cells, the velocity within n + 1
    long last = edge - f.slice_steps[s] - 1;
    if (last < 0) {
      if (s == 0) throw DomainError("cone of radius " + std::to_string(rho) + " is empty on this grid");
      break;
    }
    last = std::min<long>(last, static_cast<long>(f.r.size()) - 1);
    c.times.push_back(f.times[s]);
    c.last_index.push_back(last);
    c.u.emplace_back(f.u[s].begin(), f.u[s].begin() + last + 1);
    c.v.emplace_back(f.v[s].begin(), f.v[s].begin() + last + 1);
  }
  if (c.times.size() < f.times.size())
    throw DomainError("time " + std::to_string(f.times.back()) + " lies past the apex of the cone of radius " +
                      std::to_string(rho));
  return c;
}

double cone_deviation(const WaveField& f, const Trajectory& traj, double rho) {
  ConeSample c = cone_sample(f, rho);
  double dev = 0.0;
  for (size_t s = 0; s < c.times.size(); ++s) {
    OdeState x = traj.at(c.times[s]);
    for (size_t i = 0; i < c.u[s].size(); ++i)
      dev = std::max({dev, std::fabs(c.u[s][i] - x.x), std::fabs(c.v[s][i] - x.v)});
  }
  return dev;
}

FspResult fsp_check(const std::vector<WaveField>& fields, const Trajectory& traj, double rho) {
  if (fields.size() < 2) throw DomainError("fsp_check needs at least two resolutions");
  FspResult r;
  for (const auto& f : fields) {
    r.dr.push_back(f.dr);
    r.deviation.push_back(cone_deviation(f, traj, rho));
  }
  r.order = INFINITY;
  for (size_t i = 1; i < fields.size(); ++i)
    r.order = std::min(r.order, std::log(r.deviation[i - 1] / r.deviation[i]) / std::log(r.dr[i - 1] / r.dr[i]));
  return r;
}

namespace {

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::pair<RadialProfile, RadialProfile> strichartz_data(std::uint64_t seed, int index) {
  std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(index + 1)));
  auto gaussians = [&](int n) {
    std::vector<double> c, s;
    for (int i = 0; i < n; ++i) {
      c.push_back(2.0 * unit_draw(rng) - 1.0);
      s.push_back(0.15 + 0.35 * unit_draw(rng));
    }
    return build_gaussian_sum(c, s, 2);
  };
  RadialProfile phi = gaussians(1 + static_cast<int>(rng() % 3));
  RadialProfile psi = index % 2 ? gaussians(1) : RadialProfile({constant_seg(0.0, 1.0, 0.0)}, 2, "zero");
  return {phi, psi};
}

double strichartz_lhs(const WaveField& f, int j_max) {
  if (f.d != 2) throw DomainError("the Strichartz spot-check is two-dimensional");
  RadialGrid g(f.r.back(), f.dr, 2);
  const double top = std::ldexp(1.0, j_max + 2);
  const double R = f.r.back();
  // frequency nodes resolving J0(2 pi rho r) for r <= R
  double x[16], w[16];
  gauss_legendre(16, x, w);
  long panels = static_cast<long>(std::ceil(top * 2.0 * R)) + 1;
  double h = top / panels;
  std::vector<double> rho, wt;
  for (long p = 0; p < panels; ++p)
    for (int i = 0; i < 16; ++i) {
      rho.push_back((p + 0.5) * h + 0.5 * h * x[i]);
      wt.push_back(0.5 * h * w[i]);
    }
  const long nr = static_cast<long>(rho.size()), ng = static_cast<long>(g.size());
  std::vector<double> J(nr * ng);
#pragma omp parallel for schedule(static)
  for (long k = 0; k < nr; ++k)
    for (long i = 0; i < ng; ++i) J[k * ng + i] = ::j0(2.0 * std::numbers::pi * rho[k] * g.r[i]);

  std::vector<double> b(f.times.size());
  for (size_t s = 0; s < f.times.size(); ++s) {
    const auto& u = f.u[s];
    std::vector<double> uhat(nr);
#pragma omp parallel for schedule(static)
    for (long k = 0; k < nr; ++k) {
      double acc = 0.0;
      for (long i = 0; i < ng; ++i) acc += g.vol[i] * u[i] * J[k * ng + i];
      uhat[k] = 2.0 * std::numbers::pi * acc;
    }
    double sum = 0.0;
    for (int j = -1; j <= j_max; ++j) {
      std::vector<long> ks;
      std::vector<double> cw;
      for (long k = 0; k < nr; ++k) {
        double m = j < 0 ? LPBank::chi(rho[k]) : LPBank::psi(std::ldexp(rho[k], -j));
        if (m != 0.0) ks.push_back(k), cw.push_back(wt[k] * 2.0 * std::numbers::pi * rho[k] * m * uhat[k]);
      }
      double sup = 0.0;
#pragma omp parallel for schedule(static) reduction(max : sup)
      for (long i = 0; i < ng; ++i) {
        double acc = 0.0;
        for (size_t q = 0; q < ks.size(); ++q) acc += cw[q] * J[ks[q] * ng + i];
        sup = std::max(sup, std::fabs(acc));
      }
      sum += std::pow(std::pow(2.0, 0.25 * j) * sup, 2);
    }
    b[s] = std::sqrt(sum);
  }
  double integral = 0.0;
  for (size_t s = 1; s < b.size(); ++s)
    integral += 0.5 * (f.times[s] - f.times[s - 1]) * (std::pow(b[s], 4) + std::pow(b[s - 1], 4));
  return std::pow(integral, 0.25);
}

std::vector<StrichartzRow> strichartz_spotcheck(const StrichartzOptions& opt) {
  std::vector<StrichartzRow> rows;
  WaveConfig cfg;
  cfg.d = 2, cfg.mass = 1.0, cfg.free = true, cfg.T = opt.T, cfg.slices = opt.time_slices + 1;
  for (int i = 0; i < opt.samples; ++i) {
    auto [phi, psi] = strichartz_data(opt.seed, i);
    StrichartzRow row;
    row.index = i;
    auto a = radial_norms(phi), b = radial_norms(psi);
    row.rhs = std::hypot(a.l2, a.grad_l2) + b.l2;
    if (row.rhs == 0.0) {
      row.skipped = true;
      rows.push_back(row);
      continue;
    }
    cfg.dr = opt.dr_coarse;
    row.lhs_coarse = strichartz_lhs(evolve(phi, &psi, cfg), opt.j_max);
    cfg.dr = 0.5 * opt.dr_coarse;
    row.lhs_fine = strichartz_lhs(evolve(phi, &psi, cfg), opt.j_max);
    row.ratio_coarse = row.lhs_coarse / row.rhs;
    row.ratio_fine = row.lhs_fine / row.rhs;
    row.refinement_change = std::fabs(row.lhs_fine / row.lhs_coarse - 1.0);
    rows.push_back(row);
  }
  return rows;
}

std::vector<ModulusPoint> flow_modulus_probe(const RadialProfile& phi, const RadialProfile& eta,
                                             const std::vector<double>& deltas, const WaveConfig& cfg) {
  auto en = radial_norms(eta);
  double scale = std::hypot(en.l2, en.grad_l2);
  if (!(scale > 0.0)) throw DomainError("perturbation direction must be nonzero");
  double support = std::max(phi.support_radius(), eta.support_radius());
  RadialGrid g(support + cfg.T + cfg.margin, cfg.dr, cfg.d);
  std::vector<double> u0(g.size()), e(g.size()), zero(g.size(), 0.0);
  for (size_t i = 0; i < g.size(); ++i) u0[i] = phi.value(g.r[i]), e[i] = eta.value(g.r[i]) / scale;
  WaveField base = evolve_samples(u0, zero, cfg);
  auto distance = [&](const WaveField& f, size_t s) {
    std::vector<double> du(g.size());
    double kin = 0.0;
    for (size_t i = 0; i < g.size(); ++i) {
      du[i] = f.u[s][i] - base.u[s][i];
      kin += g.vol[i] * std::pow(f.v[s][i] - base.v[s][i], 2);
    }
    return std::sqrt(sphere_area(g.d) * (kin + quad_form(g, 1.0, du)));
  };
  std::vector<ModulusPoint> out;
  for (double delta : deltas) {
    std::vector<double> u(g.size());
    for (size_t i = 0; i < g.size(); ++i) u[i] = u0[i] + delta * e[i];
    WaveField f = evolve_samples(u, zero, cfg);
    ModulusPoint p;
    p.delta = delta;
    p.input_distance = distance(f, 0);
    for (size_t s = 0; s < f.times.size(); ++s) p.output_distance = std::max(p.output_distance, distance(f, s));
    out.push_back(p);
  }
  return out;
}

}  // namespace nlw

namespace nlw {

WaveField evolve_characteristic_3d(const RadialProfile& phi, const RadialProfile* psi, const WaveConfig& cfg) {
  if (cfg.d != 3 || phi.dim() != 3 || (psi && psi->dim() != 3))
    throw DomainError("characteristic solver is three-dimensional");
  if (!(cfg.T > 0.0 && cfg.dr > 0.0)) throw DomainError("evolve needs T > 0 and dr > 0");
  if (cfg.slices < 2) throw DomainError("evolve stores at least the first and last slice");
  WaveField f;
  f.d = 3, f.mass = cfg.mass;
  f.steps = static_cast<long>(std::ceil(cfg.T / cfg.dr - 1e-9));
  const double h = cfg.T / f.steps;
  f.dt = f.dr = h;
  double support = std::max(phi.support_radius(), psi ? psi->support_radius() : 0.0);
  const size_t N = static_cast<size_t>(std::ceil((support + cfg.T + cfg.margin) / h)) + 1;
  f.r.resize(N);
  for (size_t i = 0; i < N; ++i) f.r[i] = i * h;
  for (int s = 0; s < cfg.slices; ++s) f.slice_steps.push_back(std::lround(double(s) * f.steps / (cfg.slices - 1)));
  const Nonlinearity* m = cfg.free ? nullptr : &cfg.model;
  // source of w_tt = w_rr + s(w)
  auto source = [&](const std::vector<double>& w, size_t i) {
    if (i == 0) return 0.0;
    double r = f.r[i];
    return -cfg.mass * w[i] - (m ? r * m->force(w[i] / r) : 0.0);
  };
  std::vector<double> prev(N), cur(N), next(N);
  for (size_t i = 1; i < N; ++i) prev[i] = f.r[i] * phi.value(f.r[i]);
  prev[N - 1] = 0.0;
  for (size_t i = 1; i + 1 < N; ++i)
    cur[i] = 0.5 * (prev[i + 1] + prev[i - 1]) + (psi ? h * f.r[i] * psi->value(f.r[i]) : 0.0) +
             0.5 * h * h * source(prev, i);
  // u = w / r with the second-order limit at the origin
  auto to_u = [&](const std::vector<double>& w, std::vector<double>& out, double scale) {
    out.resize(N);
    for (size_t i = 1; i < N; ++i) out[i] = scale * w[i] / f.r[i];
    out[0] = scale * (4.0 * w[1] - w[2]) / (2.0 * h);
  };
  size_t slot = 0;
  auto record = [&](long n, const std::vector<double>& w, const std::vector<double>& wm, const std::vector<double>& wp) {
    while (slot < f.slice_steps.size() && f.slice_steps[slot] == n) {
      std::vector<double> u, v;
      to_u(w, u, 1.0);
      if (n == 0 && !psi) {
        v.assign(N, 0.0);
      } else if (n == 0) {
        v.resize(N);
        for (size_t i = 0; i < N; ++i) v[i] = psi->value(f.r[i]);
      } else {
        std::vector<double> dw(N);
        for (size_t i = 0; i < N; ++i) dw[i] = wp[i] - wm[i];
        to_u(dw, v, 0.5 / h);
      }
      f.times.push_back(n * h);
      f.u.push_back(std::move(u));
      f.v.push_back(std::move(v));
      ++slot;
    }
  };
  record(0, prev, prev, prev);
  for (long n = 1; n <= f.steps; ++n) {
    // cur holds step n, prev step n - 1
#pragma omp parallel for if (cfg.parallel)
    for (long i = 1; i < static_cast<long>(N) - 1; ++i)
      next[i] = cur[i + 1] + cur[i - 1] - prev[i] + h * h * source(cur, i);
    next[0] = next[N - 1] = 0.0;
    record(n, cur, prev, next);
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return f;
}

}  // namespace nlw
