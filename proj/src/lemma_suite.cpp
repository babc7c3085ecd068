#include <algorithm>
#include <cmath>
#include <numbers>

#include "nlw/errors.hpp"
#include "nlw/experiments.hpp"
#include "nlw/lemmas.hpp"
#include "nlw/norms.hpp"
#include "nlw/ode.hpp"
#include "nlw/parallel.hpp"
#include "nlw/profiles.hpp"
#include "nlw/spectral.hpp"

namespace nlw {

namespace {

constexpr double kPi = std::numbers::pi;

// Largest I(A) e^{A^2/2} / A over A in [1.1, 12], attained at A = 1.1, and reference ratios.
constexpr double kRatioEnvelope = 1.650054606580963;
constexpr double kRatioA[] = {1.1, 2.0, 5.0, 12.0};
constexpr double kRatioRef[] = {1.650054606580963, 1.189597329576866, 1.028014607602154, 1.004821841440980};

// Envelope for the ratio ||u||_inf / (||u||_B log^{1/q}(...)) on the Moser family.
constexpr double kLogEnvelope = 10.0;

Row lemma_row(const std::string& lemma, double computed, double bound, bool ok) {
  Row r;
  r.text("lemma", lemma).num("computed", computed).num("bound", bound).num("margin", bound - computed);
  r.flag("ok", ok);
  return r;
}

bool wanted(const std::vector<std::string>& groups, const std::string& g) {
  return groups.empty() || std::find(groups.begin(), groups.end(), g) != groups.end();
}

void period_rows(std::vector<Row>& out) {
  auto m = Nonlinearity::pure_power(7);
  double T1 = period(m, 1.0).period;
  for (double a : {0.5, 1.0, 2.0, 4.0}) {
    double T = period(m, a).period;
    double rel = std::fabs(measured_period(m, a, 5, 2000) / T - 1.0);
    out.push_back(lemma_row("period_vs_stepping", rel, 1e-6, rel <= 1e-6).num("a", a).num("period", T));
  }
  for (double a : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    double dev = std::fabs(period(m, a).period * a * a * a / T1 - 1.0);
    out.push_back(lemma_row("period_scaling", dev, 1e-8, dev <= 1e-8).num("a", a));
  }
  auto h = Nonlinearity::harmonic();
  for (double a : {0.5, 1.0, 2.0}) {
    double dev = std::fabs(period(h, a).period - 2.0 * kPi);
    out.push_back(lemma_row("harmonic_period", dev, 1e-8, dev <= 1e-8).num("a", a));
  }
}

void ode_rows(std::vector<Row>& out) {
  for (const char* tag : {"power:7", "kg-exp"}) {
    auto m = Nonlinearity::parse(tag);
    double x0 = std::sqrt(1.0 / (4.0 * kPi));
    double T = period(m, x0).period;
    auto tr = integrate_ode(m, x0, 0.0, 50.0 * T, T / 1000.0);
    double drift = tr.energy_drift();
    out.push_back(lemma_row("energy_drift_50_periods", drift, 1e-7, drift <= 1e-7).text("model", tag));
    double vmax = std::sqrt(2.0 * m.potential(x0)), worst = 0.0;
    for (const auto& s : tr.states()) {
      double ident = std::sqrt(std::max(0.0, 2.0 * (m.potential(x0) - m.potential(s.x))));
      worst = std::max(worst, std::fabs(std::fabs(s.v) - ident) / vmax);
    }
    out.push_back(lemma_row("velocity_identity", worst, 1e-6, worst <= 1e-6).text("model", tag));
  }
}

void integral_rows(std::vector<Row>& out) {
  for (int i = 1; i <= 99; ++i) {
    double a = 0.01 * i;
    auto q = lemma_I_a(a);
    out.push_back(lemma_row("I(a)", q.value, 2.0, q.ok() && q.value <= 2.0).num("a", a));
  }
  for (double a : {1.0, 1.25, 1.5, 2.0})
    for (int k = 1; k <= 40; ++k) {
      auto q = lemma_I_ak(a, k);
      double b = lemma_I_ak_log_bound(a, k);
      out.push_back(lemma_row("log I(a,k)", q.value.log_abs, b, q.ok() && q.value.log_abs <= b).num("a", a).num("k", k));
    }
  for (int i = 0; i <= 17; ++i) {
    double A = 1.5 + 0.5 * i;
    for (double l : {0.1, 0.5, 1.0}) {
      auto q = lemma_J(A, l);
      double b = lemma_J_log_bound(A, l);
      out.push_back(lemma_row("log J(A,lambda)", q.value.log_abs, b, q.ok() && q.value.log_abs <= b).num("A", A).num("lambda", l));
    }
  }
  std::vector<double> As{1.1};
  for (double A = 1.5; A <= 12.0 + 1e-9; A += 0.5) As.push_back(A);
  for (double A : As) {
    double ratio = lemma_I_A_ratio(A);
    // lower bound I(A) >= A e^{-A^2/2} and the stored two-sided envelope
    out.push_back(lemma_row("I(A) e^{A^2/2}/A", ratio, kRatioEnvelope, ratio >= 1.0 && ratio <= kRatioEnvelope * (1 + 1e-9))
                      .num("A", A));
  }
  for (int i = 0; i < 4; ++i) {
    double dev = std::fabs(lemma_I_A_ratio(kRatioA[i]) / kRatioRef[i] - 1.0);
    out.push_back(lemma_row("I(A) ratio regression", dev, 0.05, dev <= 0.05).num("A", kRatioA[i]));
  }
}

void resonance_rows(std::vector<Row>& out) {
  for (int M = 1; M <= 6; ++M) {
    auto s = resonance_schedule(4096, M);
    out.push_back(lemma_row("eta identity", s.eta_residual, 1e-12, s.eta_residual <= 1e-12).num("M", M).num("eta", s.eta));
  }
  for (double k : {4.0, 64.0, 4096.0})
    for (int M = 1; M <= 6; ++M) {
      auto s = resonance_schedule(k, M);
      double rel = s.identity_residual / s.t;
      out.push_back(lemma_row("crucial identity / t_k", rel, 1e-10, rel <= 1e-10).num("k", k).num("M", M));
    }
}

void inequality_rows(std::vector<Row>& out) {
  for (double k : {2.0, 4.0, 8.0, 16.0, 32.0}) {
    auto f = build_moser(k);
    auto li = log_inequality_check(f, 0.5, 2.0);
    out.push_back(lemma_row("log Besov inequality ratio", li.ratio, kLogEnvelope, li.ratio > 0.0 && li.ratio <= kLogEnvelope)
                      .num("k", k).num("N", li.N));
    auto h = h_mu_inequality_check(f, 0.5, 1.0, 1.0);
    out.push_back(lemma_row("H_mu inequality required C", h.required_C, 1.0, h.required_C <= 1.0).num("k", k));
  }
  // Moser-Trudinger: bounded for alpha < 4 pi, growing at 4 pi
  for (double c : {1.0, 2.0, 3.0, 4.0}) {
    double alpha = c * kPi;
    auto ratio = [&](double k) {
      auto f = build_moser(k);
      double l2 = radial_norms(f).l2;
      return moser_trudinger(f, alpha).value() / (l2 * l2);
    };
    double r16 = ratio(16), r32 = ratio(32);
    if (c < 4.0)
      out.push_back(lemma_row("MT ratio decays", r32, r16, r32 <= r16).num("alpha_over_pi", c));
    else
      out.push_back(lemma_row("MT ratio grows at 4pi", 1.5 * r16, r32, r32 >= 1.5 * r16).num("alpha_over_pi", c));
  }
  for (double q : {1.0, 1.5, 2.0, 3.0}) {
    double C = calibrate_g_q_constant(q, 1.5, 200), worst = 0.0;
    for (double u = -1.5; u <= 1.5; u += 0.137)
      for (double v = -1.5; v <= 1.5; v += 0.219) {
        double b = g_q_difference_bound(q, 1.02 * C, u, v);
        if (b > 0.0) worst = std::max(worst, std::fabs(g_q(q, u) - g_q(q, v)) / b);
      }
    out.push_back(lemma_row("g_q difference bound", worst, 1.0, worst <= 1.0).num("q", q).num("C", C));
  }
}

// sqrt of 2 [4 (1+16 pi^2)^s + sum_{j>=0} (1+16 pi^2 4^j)^s 4^{-j}]: H^s <= C_s B^1_{2,inf}.
double embedding_constant(double s) {
  double sum = 4.0 * std::pow(1.0 + 16.0 * kPi * kPi, s);
  for (int j = 0; j < 200; ++j) sum += std::pow(1.0 + 16.0 * kPi * kPi * std::ldexp(1.0, 2 * j), s) * std::ldexp(1.0, -2 * j);
  return std::sqrt(2.0 * sum);
}

void spectral_rows(std::vector<Row>& out) {
  auto corpus = profile_corpus();
  std::vector<std::vector<Row>> per(corpus.size());
  std::vector<std::exception_ptr> err(corpus.size());
#pragma omp parallel for schedule(dynamic)
  for (long c = 0; c < static_cast<long>(corpus.size()); ++c) {
    try {
      const auto& u = corpus[c];
      auto sp = Spectrum::of_profile(u, false);
      auto n = radial_norms(u);
      double rel = std::fabs(sp.l2_sq() / (n.l2 * n.l2) - 1.0);
      per[c].push_back(lemma_row("Plancherel", rel, 1e-6, rel <= 1e-6).text("profile", u.label()));
      for (int j = -1; j <= 4; ++j) {
        double sup = band_sup(u, j, false), l2 = std::sqrt(sp.band_sq(j));
        double cap = (j < 0 ? std::sqrt(4.0 * kPi) : 4.0 * std::sqrt(kPi) * std::ldexp(1.0, j)) * l2;
        per[c].push_back(lemma_row("Bernstein", sup, cap, sup <= cap * (1 + 1e-6)).text("profile", u.label()).num("j", j));
      }
      double h1 = std::hypot(n.l2, n.grad_l2), b = besov_norm(sp, 1.0, INFINITY), hs = std::sqrt(sp.hs_sq(0.5));
      per[c].push_back(lemma_row("B^1_{2,inf} <= H^1 / 2", b, 0.5 * h1, b <= 0.5 * h1 * (1 + 1e-6)).text("profile", u.label()));
      double cs = embedding_constant(0.5);
      per[c].push_back(lemma_row("H^{1/2} <= C B^1_{2,inf}", hs, cs * b, hs <= cs * b).text("profile", u.label()));
    } catch (...) {
      err[c] = std::current_exception();
    }
  }
  for (auto& e : err)
    if (e) std::rethrow_exception(e);
  for (auto& v : per)
    for (auto& r : v) out.push_back(std::move(r));

  // sup_a ||g_a||_{B^0_{2,inf}} over a = 2^-1 .. 2^-10
  std::vector<double> ga(10);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < 10; ++i) {
    double a = std::ldexp(1.0, -(i + 1));
    int top = i + 1 + 8;
    Spectrum sp(ga_density(a), SpectrumOptions{-16, top, 2.0 * a, 64, 1 << 12, false}, 2);
    double best = 0.0;
    for (int j = -16; j < top; ++j) best = std::max(best, sp.band_sq(j, true));
    ga[i] = std::sqrt(best);
  }
  double lo = *std::min_element(ga.begin(), ga.end()), hi = *std::max_element(ga.begin(), ga.end());
  out.push_back(lemma_row("g_a uniform B^0_{2,inf} (max/min)", hi / lo, 2.0, hi / lo <= 2.0).num("min", lo).num("max", hi));

  Spectrum x1(x1_over_r_density(), SpectrumOptions{-12, 12, 1.0, 64, 1 << 12, false}, 2);
  double ref = std::sqrt(x1.band_sq(0, true)), worst = 0.0;
  for (int j = -8; j <= 8; ++j) worst = std::max(worst, std::fabs(std::ldexp(std::sqrt(x1.band_sq(j, true)), j) / ref - 1.0));
  out.push_back(lemma_row("x1/r: 2^j ||Delta_j|| spread", worst, 0.10, worst <= 0.10));
}

}  // namespace

std::vector<RadialProfile> profile_corpus() {
  std::vector<RadialProfile> c;
  for (double k : {2.0, 4.0, 8.0}) c.push_back(build_moser(k));
  c.push_back(build_moser(4.0, 0.5, 1.2));
  c.push_back(build_log_2d(4.0, Nonlinearity::kg_exp()).profile);
  c.push_back(build_besov_data(6.0, 1.5).profile);
  c.push_back(build_piecewise_log_gk(4.0, 0.75));
  c.push_back(build_cutoff(0.3));
  c.push_back(build_bump_family(4.0, BumpMode::Besov).profile);
  c.push_back(build_gaussian_sum({1.0, -0.5}, {0.3, 0.1}, 2));
  return c;
}

Report run_lemma_suite(const std::vector<std::string>& groups) {
  static const std::vector<std::string> known{"period", "ode", "integrals", "resonance", "inequalities", "spectral"};
  for (const auto& g : groups)
    if (std::find(known.begin(), known.end(), g) == known.end()) throw DomainError("unknown lemma group '" + g + "'");
  Report rep;
  rep.id = "lemmas";
  rep.meta.emplace_back("threads", std::to_string(thread_count()));
  std::string sel;
  for (const auto& g : known)
    if (wanted(groups, g)) sel += (sel.empty() ? "" : " ") + g;
  rep.meta.emplace_back("groups", sel);
  auto run = [&](const std::string& g, void (*fn)(std::vector<Row>&)) {
    if (!wanted(groups, g)) return;
    std::vector<Row> rows;
    fn(rows);
    for (auto& r : rows) {
      Row tagged;
      tagged.text("group", g);
      for (const auto& [n, c] : r.cells()) {
        if (c.kind == Cell::Kind::Num) tagged.num(n, c.num);
        else if (c.kind == Cell::Kind::Log) tagged.log(n, c.log);
        else if (c.kind == Cell::Kind::Text) tagged.text(n, c.text);
        else tagged.flag(n, c.flag);
      }
      rep.rows.push_back(std::move(tagged));
    }
  };
  run("period", period_rows);
  run("ode", ode_rows);
  run("integrals", integral_rows);
  run("resonance", resonance_rows);
  run("inequalities", inequality_rows);
  run("spectral", spectral_rows);
  return rep;
}

}  // namespace nlw
