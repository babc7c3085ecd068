#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "nlw/experiments.hpp"
#include "nlw/ode.hpp"
#include "nlw/profiles.hpp"
#include "nlw/wave.hpp"

using namespace nlw;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string join(const std::vector<std::string>& v, size_t limit = 4) {
  std::string s;
  for (size_t i = 0; i < v.size() && i < limit; ++i) s += (i ? "; " : "") + v[i];
  if (v.size() > limit) s += "; ... (" + std::to_string(v.size()) + " failures)";
  return s;
}

// Failed flag names with the number of rows failing each; summary flags are marked.
std::string tally(const Report& r) {
  std::vector<std::pair<std::string, int>> count;
  auto add = [&](const std::string& name) {
    for (auto& [n, c] : count)
      if (n == name) return void(++c);
    count.emplace_back(name, 1);
  };
  for (const auto& row : r.rows)
    for (const auto& f : row.failing_flags()) add(f);
  for (const auto& f : r.summary.failing_flags()) add(f + " (summary)");
  std::string s;
  for (const auto& [n, c] : count) s += (s.empty() ? "" : ", ") + n + (c > 1 ? " x" + std::to_string(c) : "");
  return "failed " + s;
}

Outcome from_report(const Report& r) {
  if (r.all_pass()) return {true, std::to_string(r.rows.size()) + " rows pass"};
  return {false, tally(r) + "; first: " + join(r.failures(), 1)};
}

template <class F>
double seconds(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome timed_suite(const std::vector<std::string>& groups, double budget) {
  Report r;
  double t = seconds([&] { r = run_lemma_suite(groups); });
  Outcome o = from_report(r);
  o.detail += ", " + std::to_string(t) + " s";
  if (t > budget) {
    o.pass = false;
    o.detail += " exceeds " + std::to_string(budget) + " s";
  }
  return o;
}

Outcome finite_speed() {
  auto m = Nonlinearity::pure_power(7);
  auto sh = build_step_harmonic(4, 3, m);
  WaveConfig c;
  c.T = 0.2;
  std::vector<WaveField> fs;
  for (double dr : {1.0 / 200, 1.0 / 400, 1.0 / 800}) {
    c.dr = dr;
    fs.push_back(evolve(sh.profile, nullptr, c));
  }
  auto traj = integrate_ode(m, sh.profile.plateau_value(), 0.0, 0.25, period(m, sh.profile.plateau_value()).period / 4000);
  auto r = fsp_check(fs, traj, sh.profile.plateau_radius());
  bool ok = r.order >= 1.8;
  for (size_t i = 1; i < r.deviation.size(); ++i) ok = ok && r.deviation[i] < r.deviation[i - 1];

  // perturb the data outside rho and compare the cone interiors
  c.dr = 1.0 / 400;
  RadialGrid g(1.0, c.dr, 3);
  double rho = sh.profile.plateau_radius();
  std::vector<double> u(g.size()), w(g.size()), v(g.size(), 0.0);
  for (size_t i = 0; i < g.size(); ++i) {
    u[i] = sh.profile.value(g.r[i]);
    w[i] = u[i] + (g.r[i] > rho ? 0.1 * std::sin(9.0 * g.r[i]) : 0.0);
  }
  auto a = cone_sample(evolve_samples(u, v, c), rho), b = cone_sample(evolve_samples(w, v, c), rho);
  double worst = 0.0;
  for (size_t s = 0; s < a.times.size(); ++s)
    for (size_t i = 0; i < a.u[s].size(); ++i)
      worst = std::max({worst, std::fabs(a.u[s][i] - b.u[s][i]), std::fabs(a.v[s][i] - b.v[s][i])});
  ok = ok && worst <= 1e-12;
  std::ostringstream d;
  d << "deviations";
  for (double x : r.deviation) d << ' ' << x;
  d << ", order " << r.order << ", perturbation leak " << worst;
  return {ok, d.str()};
}

Outcome decoherence() {
  Outcome o{true, ""};
  for (double nu : {0.25, 0.5}) {
    DecoherenceOptions opt;
    opt.nu = nu;
    auto r = run_decoherence(opt);
    o.pass = o.pass && r.all_pass();
    o.detail += (o.detail.empty() ? "" : " | ") + std::string("nu=") + format_double(nu) + ": " +
                (r.all_pass() ? "pass" : tally(r)) + ", surrogate margin " +
                format_double(r.summary.get("margin"));
  }
  return o;
}

Outcome lowreg() {
  struct Case {
    LowRegTarget t;
    double gamma;
  };
  Outcome o{true, ""};
  for (auto c : {Case{LowRegTarget::Lorentz, 1.2}, Case{LowRegTarget::Besov, 1.5}, Case{LowRegTarget::Hs, 0.2},
                 Case{LowRegTarget::GkHs, 0.75}}) {
    LowRegOptions opt;
    opt.target = c.t;
    opt.gamma = c.gamma;
    auto r = run_lowreg_illposed(opt);
    o.pass = o.pass && r.all_pass();
    const Cell* slope = r.summary.find("inflation_slope");
    o.detail += (o.detail.empty() ? "" : " | ") + to_string(c.t) + " slope " +
                (slope ? format_double(slope->num) : std::string("n/a")) + (r.all_pass() ? " pass" : " FAIL");
  }
  return o;
}

Outcome strichartz() {
  Report r;
  double t = seconds([&] { r = run_strichartz(); });
  Outcome o = from_report(r);
  o.pass = o.pass && t <= 300.0;
  o.detail += ", ratio max " + format_double(r.summary.get("ratio_max")) + ", max refinement change " +
              format_double(r.summary.get("max_refinement_change")) + ", " + std::to_string(t) + " s";
  return o;
}

Outcome determinism() {
  std::vector<std::function<Report()>> runs{
      [] { return run_lemma_suite({"integrals", "resonance"}); },
      [] { return run_energy_illposed(); },
      [] {
        LowRegOptions o;
        o.target = LowRegTarget::Hs;
        o.gamma = 0.2;
        return run_lowreg_illposed(o);
      },
      [] {
        StrichartzOptions o;
        o.samples = 2;
        return run_strichartz(o);
      },
  };
  int saved = omp_get_max_threads();
  Outcome o{true, ""};
  for (const auto& run : runs) {
    omp_set_num_threads(1);
    std::string a = run().csv();
    omp_set_num_threads(2);
    std::string b = run().csv(), c = run().csv();
    bool same = a == b && b == c;
    o.pass = o.pass && same;
    o.detail += std::string(o.detail.empty() ? "" : ", ") + (same ? "identical " : "DIFFERENT ") +
                std::to_string(a.size()) + " bytes";
  }
  omp_set_num_threads(saved);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int only = 0;
  app.add_option("--only", only, "run a single criterion (1-11)")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"period engine", [] { return timed_suite({"period"}, 5.0); }},
      {"ODE conservation", [] { return from_report(run_lemma_suite({"ode"})); }},
      {"lemma suite", [] { return timed_suite({"integrals", "inequalities"}, 30.0); }},
      {"resonance algebra", [] { return from_report(run_lemma_suite({"resonance"})); }},
      {"finite speed of propagation", finite_speed},
      {"energy ill-posedness (3D)", [] { return from_report(run_energy_illposed()); }},
      {"decoherence", decoherence},
      {"low-regularity ill-posedness", lowreg},
      {"spectral stack", [] { return from_report(run_lemma_suite({"spectral"})); }},
      {"Strichartz spot-check", strichartz},
      {"determinism", determinism},
  };
  bool all = true;
  for (size_t i = 0; i < criteria.size(); ++i) {
    int id = static_cast<int>(i) + 1;
    if (only && id != only) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d %s: %s -- %s\n", id, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
