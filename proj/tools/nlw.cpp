#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nlw/config.hpp"
#include "nlw/experiments.hpp"
#include "nlw/norms.hpp"
#include "nlw/ode.hpp"
#include "nlw/parallel.hpp"
#include "nlw/report.hpp"
#include "nlw/wave.hpp"

using nlohmann::json;
using namespace nlw;

namespace {

// A subcommand whose flags mirror the keys of its schema.
struct Command {
  Schema schema;
  CLI::App* app = nullptr;
  std::map<std::string, std::string> text;
  std::map<std::string, bool> flag;
  std::map<std::string, CLI::Option*> opts;
  std::string config;
  CLI::Option* config_opt = nullptr;
  std::string verb;  // positional form of the "action" key
  CLI::Option* verb_opt = nullptr;
};

std::string flag_of(const std::string& key) {
  std::string s = key;
  std::replace(s.begin(), s.end(), '_', '-');
  return "--" + s;
}

void bind(Command& c) {
  for (const auto& f : c.schema.fields) {
    std::string help = f.help;
    if (!f.fallback.is_null()) help += " (default " + f.fallback.dump() + ")";
    if (f.type == FieldType::Bool) c.opts[f.key] = c.app->add_flag(flag_of(f.key), c.flag[f.key], help);
    else c.opts[f.key] = c.app->add_option(flag_of(f.key), c.text[f.key], help);
  }
  c.config_opt = c.app->add_option("--config", c.config, "JSON file; its keys override the flags");
}

json resolve(const Command& c) {
  json doc = json::object();
  for (const auto& f : c.schema.fields) {
    if (c.opts.at(f.key)->count() == 0) continue;
    if (f.type == FieldType::Bool) {
      doc[f.key] = c.flag.at(f.key);
      continue;
    }
    try {
      doc[f.key] = parse_field(f, c.text.at(f.key));
    } catch (const DomainError& e) {
      throw ConfigError(flag_of(f.key) + ": " + e.what());
    }
  }
  if (c.verb_opt && c.verb_opt->count()) doc["action"] = c.verb;
  if (c.config_opt->count()) {
    std::ifstream in(c.config);
    if (!in) throw ConfigError("--config: cannot open '" + c.config + "'");
    json file;
    try {
      file = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError("--config: " + c.config + ": " + e.what());
    }
    if (!file.is_object()) throw ConfigError("$: expected an object");
    for (auto it = file.begin(); it != file.end(); ++it) doc[it.key()] = it.value();
  }
  return validate_config(c.schema, doc);
}

void write_text(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << body;
}

std::vector<Field> output_fields(const std::string& emit) {
  return {{"emit", FieldType::String, emit, "stdout format: csv or json"},
          {"csv_out", FieldType::String, nullptr, "also write the CSV here"},
          {"json_out", FieldType::String, nullptr, "also write the JSON here"}};
}

// Prints the report in the requested format, writes requested files, returns the exit code.
int publish(const Report& rep, const json& cfg) {
  std::string emit = cfg.at("emit").get<std::string>();
  if (emit != "csv" && emit != "json") throw ConfigError("$.emit: expected csv or json");
  std::string csv = rep.csv(), js = rep.json() + "\n";
  write_text("-", emit == "csv" ? csv : js);
  if (cfg.contains("csv_out")) write_text(cfg["csv_out"].get<std::string>(), csv);
  if (cfg.contains("json_out")) write_text(cfg["json_out"].get<std::string>(), js);
  auto bad = rep.failures();
  for (const auto& line : bad) std::cerr << line << "\n";
  return bad.empty() ? 0 : 1;
}

std::vector<Field> with(std::vector<Field> a, const std::vector<Field>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

namespace {

const char* kind_name(FormKind k) {
  switch (k) {
    case FormKind::Constant: return "constant";
    case FormKind::LogAffine: return "log_affine";
    case FormKind::Power: return "power";
    case FormKind::Affine: return "affine";
    case FormKind::Smooth: return "smooth";
  }
  return "";
}

json segments_json(const RadialProfile& u) {
  json segs = json::array();
  for (const auto& s : u.segments())
    segs.push_back({{"r0", s.r0}, {"r1", s.r1}, {"kind", kind_name(s.kind)}, {"a", s.a}, {"b", s.b}, {"p", s.p}});
  return {{"label", u.label()}, {"dim", u.dim()}, {"support_radius", u.support_radius()},
          {"plateau_radius", u.plateau_radius()}, {"segments", segs}};
}

// Log-spaced radii from well inside the smallest feature to the support, plus every knot.
std::vector<double> sample_radii(const RadialProfile& u, int points) {
  double R = u.support_radius(), lo = R;
  for (double kn : u.knots())
    if (kn > 0.0) lo = std::min(lo, kn);
  lo = std::max(lo / 10.0, R * 1e-300);
  std::vector<double> r{0.0};
  for (int i = 0; i < points; ++i) r.push_back(lo * std::pow(R / lo, static_cast<double>(i) / (points - 1)));
  for (double kn : u.knots()) r.push_back(kn);
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

int cmd_profile(const json& cfg) {
  auto u = make_profile(cfg);
  int points = cfg.at("points").get<int>();
  if (points < 2) throw ConfigError("$.points: need at least 2");
  Report rep;
  rep.id = "profile";
  rep.meta.emplace_back("label", u.label());
  for (double r : sample_radii(u, points)) {
    Row row;
    row.num("r", r).num("value", u.value(r)).num("derivative", u.d1(r));
    rep.rows.push_back(row);
  }
  if (cfg.at("emit") == "json") {
    json j = segments_json(u);
    j["samples"] = json::array();
    for (const auto& row : rep.rows) j["samples"].push_back({row.get("r"), row.get("value")});
    write_text("-", j.dump(2) + "\n");
    if (cfg.contains("json_out")) write_text(cfg["json_out"].get<std::string>(), j.dump(2) + "\n");
    if (cfg.contains("csv_out")) write_text(cfg["csv_out"].get<std::string>(), rep.csv());
    return 0;
  }
  if (cfg.at("emit") != "csv") throw ConfigError("$.emit: expected csv or json");
  write_text("-", rep.csv());
  if (cfg.contains("csv_out")) write_text(cfg["csv_out"].get<std::string>(), rep.csv());
  if (cfg.contains("json_out")) write_text(cfg["json_out"].get<std::string>(), segments_json(u).dump(2) + "\n");
  return 0;
}

json log_json(LogReal x) {
  if (x.sign == 0) return 0.0;
  return {{"log10_abs", x.log10_abs()}, {"sign", x.sign}};
}

int cmd_norms(const json& cfg) {
  auto u = make_profile(cfg);
  auto n = radial_norms(u);
  json j = {{"profile", u.label()}, {"dim", u.dim()}, {"l2", n.l2}, {"grad_l2", n.grad_l2}, {"sup", sup_norm(u)}};
  if (cfg.at("all").get<bool>()) {
    double s = cfg.at("hs_index").get<double>(), alpha = cfg.at("alpha").get<double>();
    j["lorentz_2inf"] = lorentz_2inf(u, false);
    j["lorentz_2inf_gradient"] = lorentz_2inf(u, true);
    if (u.dim() == 2) {
      auto sp = Spectrum::of_profile(u);
      j["besov_1_2inf"] = besov_norm(sp, 1.0, INFINITY);
      j["besov_0_2inf_homogeneous"] = besov_norm(sp, 0.0, INFINITY, true);
      j["hs"] = {{"s", s}, {"value", std::sqrt(sp.hs_sq(s))}};
      auto e = energy_2d_exp(u, nullptr);
      j["energy_2d_exp"] = {{"grad_sq", e.grad_sq}, {"potential", log_json(e.potential)}, {"total", log_json(e.total)}};
    }
    j["holder"] = {{"alpha", alpha}, {"value", holder_norm(u, alpha)}};
    if (u.dim() == 3) {
      auto e = energy(u, nullptr, Nonlinearity::parse(cfg.at("model").get<std::string>()));
      j["energy"] = {{"model", cfg.at("model")}, {"grad_sq", e.grad_sq}, {"potential", log_json(e.potential)},
                     {"total", log_json(e.total)}};
    }
  }
  write_text("-", j.dump(2) + "\n");
  if (cfg.contains("json_out")) write_text(cfg["json_out"].get<std::string>(), j.dump(2) + "\n");
  return 0;
}

}  // namespace

namespace {

int cmd_ode(const json& cfg) {
  auto m = Nonlinearity::parse(cfg.at("model").get<std::string>());
  double x0 = cfg.at("x0").get<double>();
  std::string action = cfg.at("action").get<std::string>();
  if (action == "period") {
    auto p = period(m, x0);
    json j = {{"model", m.tag()},          {"x0", x0},
              {"alpha", p.alpha},          {"beta", p.beta},
              {"period", p.period},        {"log_period", p.log_period},
              {"quarter_period", p.quarter_period}, {"quad_error", p.quad_error}};
    write_text("-", j.dump(2) + "\n");
    return 0;
  }
  if (action == "descent") {
    double y = cfg.at("y").get<double>();
    json j = {{"model", m.tag()}, {"x0", x0}, {"y", y}, {"descent_time", log_json(descent_time(m, x0, y))},
              {"speed", log_json(speed_at(m, x0, y))}};
    write_text("-", j.dump(2) + "\n");
    return 0;
  }
  if (action == "trajectory") {
    double T = period(m, x0).period;
    double dt = cfg.contains("dt") ? cfg["dt"].get<double>() : T / 1000.0;
    auto tr = integrate_ode(m, x0, 0.0, cfg.at("periods").get<double>() * T, dt);
    Report rep;
    rep.id = "trajectory";
    int every = std::max(1, cfg.at("every").get<int>());
    const auto& st = tr.states();
    for (size_t i = 0; i < st.size(); i += every) {
      Row r;
      r.num("t", st[i].t).num("x", st[i].x).num("v", st[i].v).num("energy", tr.energy(st[i]));
      rep.rows.push_back(r);
    }
    rep.summary.num("energy_drift", tr.energy_drift());
    write_text("-", rep.csv());
    if (cfg.contains("csv_out")) write_text(cfg["csv_out"].get<std::string>(), rep.csv());
    return 0;
  }
  throw ConfigError("$.action: expected period, descent or trajectory");
}

int cmd_evolve(const json& cfg) {
  auto phi = make_profile(cfg);
  WaveConfig wc;
  wc.model = Nonlinearity::parse(cfg.at("model").get<std::string>());
  wc.d = phi.dim();
  if (cfg.contains("d") && cfg["d"].get<int>() != phi.dim())
    throw ConfigError("$.d: the data family produced a profile on R^" + std::to_string(phi.dim()));
  wc.mass = cfg.at("mass").get<double>();
  wc.free = cfg.at("free").get<bool>();
  wc.T = cfg.at("T").get<double>();
  wc.dr = cfg.at("dr").get<double>();
  wc.slices = cfg.at("slices").get<int>();
  if (cfg.contains("cfl")) wc.cfl = cfg["cfl"].get<double>();
  std::string solver = cfg.at("solver").get<std::string>();
  WaveField f;
  if (solver == "fv") f = evolve(phi, nullptr, wc);
  else if (solver == "characteristic") f = evolve_characteristic_3d(phi, nullptr, wc);
  else throw ConfigError("$.solver: expected fv or characteristic");

  Report rep;
  rep.id = "evolve";
  rep.meta.emplace_back("profile", phi.label());
  rep.meta.emplace_back("model", wc.model.tag());
  int stride = std::max(1, cfg.at("stride").get<int>());
  for (size_t s = 0; s < f.times.size(); ++s)
    for (size_t i = 0; i < f.r.size(); i += stride) {
      Row r;
      r.num("t", f.times[s]).num("r", f.r[i]).num("u", f.u[s][i]).num("u_t", f.v[s][i]);
      rep.rows.push_back(r);
    }
  write_text("-", rep.csv());
  if (cfg.contains("csv_out")) write_text(cfg["csv_out"].get<std::string>(), rep.csv());

  double rho = cfg.contains("rho") ? cfg["rho"].get<double>() : phi.plateau_radius();
  json cone = {{"rho", rho}, {"dr", f.dr}, {"dt", f.dt}, {"energy", f.energy}};
  if (rho > wc.T) {
    auto cs = cone_sample(f, rho);
    cone["times"] = cs.times;
    cone["last_index"] = cs.last_index;
    cone["u"] = cs.u;
    cone["u_t"] = cs.v;
  } else {
    cone["note"] = "cone apex reached before T; no sample";
  }
  if (cfg.contains("json_out")) write_text(cfg["json_out"].get<std::string>(), cone.dump(2) + "\n");
  else std::cerr << cone.dump() << "\n";
  return 0;
}

}  // namespace

namespace {

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');)
    if (!tok.empty()) out.push_back(tok);
  return out;
}

int cmd_lemmas(const json& cfg) {
  return publish(run_lemma_suite(split_csv(cfg.at("groups").get<std::string>())), cfg);
}

std::vector<double> ks_or(const json& cfg, std::vector<double> def) {
  return cfg.contains("k") ? cfg["k"].get<std::vector<double>>() : def;
}

int cmd_report(const json& cfg) {
  std::string ex = cfg.at("experiment").get<std::string>();
  Report rep;
  if (ex == "energy-illposed") {
    EnergyIllposedOptions o;
    o.ks = ks_or(cfg, o.ks);
    o.M_max = cfg.contains("M_max") ? cfg["M_max"].get<int>() : o.M_max;
    o.pde_check = cfg.at("pde").get<bool>();
    rep = run_energy_illposed(o);
  } else if (ex == "decoherence") {
    DecoherenceOptions o;
    o.nu = cfg.contains("nu") ? cfg["nu"].get<double>() : o.nu;
    o.ks = ks_or(cfg, {});
    o.pde_check = cfg.at("pde").get<bool>();
    rep = run_decoherence(o);
  } else if (ex == "lowreg") {
    LowRegOptions o;
    o.target = parse_lowreg_target(cfg.at("target").get<std::string>());
    o.gamma = cfg.contains("gamma") ? cfg["gamma"].get<double>() : o.gamma;
    o.s = cfg.contains("s") ? cfg["s"].get<double>() : o.s;
    o.ks = ks_or(cfg, o.ks);
    rep = run_lowreg_illposed(o);
  } else if (ex == "strichartz") {
    StrichartzOptions o;
    o.seed = cfg.contains("seed") ? cfg["seed"].get<std::uint64_t>() : o.seed;
    o.samples = cfg.contains("samples") ? cfg["samples"].get<int>() : o.samples;
    rep = run_strichartz(o);
  } else if (ex == "flow-modulus") {
    ModulusOptions o;
    o.k = cfg.contains("k") ? cfg["k"].get<std::vector<double>>().at(0) : o.k;
    o.gamma = cfg.contains("gamma") ? cfg["gamma"].get<double>() : o.gamma;
    if (cfg.contains("deltas")) o.deltas = cfg["deltas"].get<std::vector<double>>();
    rep = run_flow_modulus(o);
  } else if (ex == "lemmas") {
    rep = run_lemma_suite();
  } else {
    throw ConfigError("$.experiment: unknown experiment '" + ex +
                      "' (known: energy-illposed, decoherence, lowreg, strichartz, flow-modulus, lemmas)");
  }
  return publish(rep, cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for supercritical semilinear wave equations"};
  app.require_subcommand(1);
  app.footer("Thread count: NLW_THREADS.  Exit codes: 0 all checks pass, 1 failing rows, 2 usage or config error.");

  using F = FieldType;
  std::vector<std::pair<Command, int (*)(const json&)>> cmds;
  auto add = [&](const std::string& name, const std::string& desc, std::vector<Field> fields, int (*run)(const json&)) {
    Command c;
    c.schema = Schema{name, std::move(fields)};
    c.app = app.add_subcommand(name, desc);
    cmds.emplace_back(std::move(c), run);
  };
  add("profile", "sample a data profile", with(family_fields("moser"), {
      {"model", F::String, nullptr, "nonlinearity used by model-dependent families"},
      {"points", F::Integer, 200, "log-spaced samples"},
      {"emit", F::String, "csv", "csv samples or json samples plus segments"},
      {"csv_out", F::String, nullptr, "also write the CSV here"},
      {"json_out", F::String, nullptr, "also write the segment JSON here"}}), cmd_profile);
  add("norms", "norms of a data profile", with(family_fields("moser"), {
      {"all", F::Bool, false, "Lorentz, Besov, H^s, Holder and energy as well"},
      {"hs_index", F::Number, 0.5, "Sobolev index of the H^s norm"},
      {"alpha", F::Number, 0.5, "Holder exponent"},
      {"model", F::String, "power:7", "nonlinearity of the 3D energy"},
      {"json_out", F::String, nullptr, "also write the JSON here"}}), cmd_norms);
  add("ode", "period, descent time or trajectory of x'' + F'(x) = 0", {
      {"action", F::String, "period", "period, descent or trajectory"},
      {"model", F::String, "power:7", "nonlinearity tag"},
      {"x0", F::Number, 1.0, "release point"},
      {"y", F::Number, 0.0, "descent target"},
      {"periods", F::Number, 1.0, "trajectory length in periods"},
      {"dt", F::Number, nullptr, "step (default period / 1000)"},
      {"every", F::Integer, 1, "print every n-th step"},
      {"csv_out", F::String, nullptr, "also write the CSV here"}}, cmd_ode);
  add("evolve", "radial wave evolution", with(family_fields("step-harmonic"), {
      {"model", F::String, "power:7", "nonlinearity tag"},
      {"mass", F::Number, 0.0, "Klein-Gordon mass (0 or 1)"},
      {"free", F::Bool, false, "drop the nonlinear force"},
      {"T", F::Number, 0.1, "final time"},
      {"dr", F::Number, 1.0 / 400, "grid spacing"},
      {"cfl", F::Number, nullptr, "time step / dr"},
      {"slices", F::Integer, 5, "stored time slices"},
      {"solver", F::String, "fv", "fv or characteristic (3D)"},
      {"stride", F::Integer, 1, "print every n-th grid point"},
      {"rho", F::Number, nullptr, "cone base radius (default the plateau radius)"},
      {"csv_out", F::String, nullptr, "also write the slice CSV here"},
      {"json_out", F::String, nullptr, "write the cone sample JSON here (else stderr)"}}), cmd_evolve);
  add("lemmas", "run the lemma verification suite", with({
      {"groups", F::String, "", "comma-separated subset of period,ode,integrals,resonance,inequalities,spectral"}},
      output_fields("csv")), cmd_lemmas);
  add("report", "run an experiment report", with({
      {"experiment", F::String, "decoherence", "energy-illposed, decoherence, lowreg, strichartz, flow-modulus, lemmas"},
      {"k", F::NumberList, nullptr, "k grid: lo:hi[:step] or a comma list"},
      {"nu", F::Number, nullptr, "amplitude factor"},
      {"target", F::String, "lorentz", "lowreg target: lorentz, besov, hs, gk"},
      {"gamma", F::Number, nullptr, "family exponent"},
      {"s", F::Number, nullptr, "Sobolev index"},
      {"M_max", F::Integer, nullptr, "largest resonance order"},
      {"pde", F::Bool, true, "run the PDE cross-check"},
      {"seed", F::Integer, nullptr, "random seed"},
      {"samples", F::Integer, nullptr, "random samples"},
      {"deltas", F::NumberList, nullptr, "perturbation sizes"}}, output_fields("csv")), cmd_report);

  for (auto& [c, run] : cmds) {
    bind(c);
    if (c.schema.find("action")) c.verb_opt = c.app->add_option("verb", c.verb, "same as --action");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    configure_threads();
    for (auto& [c, run] : cmds) {
      if (!c.app->parsed()) continue;
      return run(resolve(c));
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
