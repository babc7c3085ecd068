#include "nlw/config.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "nlw/nonlinearity.hpp"
#include "nlw/profiles.hpp"

namespace nlw {

using nlohmann::json;

const Field* Schema::find(const std::string& key) const {
  for (const auto& f : fields)
    if (f.key == key) return &f;
  return nullptr;
}

namespace {

const char* type_name(FieldType t) {
  switch (t) {
    case FieldType::Number: return "a number";
    case FieldType::Integer: return "an integer";
    case FieldType::String: return "a string";
    case FieldType::Bool: return "a boolean";
    case FieldType::NumberList: return "a list of numbers or a range string";
  }
  return "";
}

double parse_number(const std::string& s) {
  const char* b = s.c_str();
  char* e = nullptr;
  double x = std::strtod(b, &e);
  if (e == b || *e != '\0' || !std::isfinite(x)) throw DomainError("'" + s + "' is not a number");
  return x;
}

json check(const Field& f, const json& v, const std::string& path) {
  auto fail = [&] { throw ConfigError(path + ": expected " + type_name(f.type)); };
  switch (f.type) {
    case FieldType::Number:
      if (!v.is_number()) fail();
      return v.get<double>();
    case FieldType::Integer:
      if (v.is_number_integer()) return v;
      if (v.is_number_float() && v.get<double>() == std::floor(v.get<double>())) return static_cast<long>(v.get<double>());
      fail();
      break;
    case FieldType::String:
      if (!v.is_string()) fail();
      return v;
    case FieldType::Bool:
      if (!v.is_boolean()) fail();
      return v;
    case FieldType::NumberList: {
      if (v.is_string()) {
        try {
          return parse_number_list(v.get<std::string>());
        } catch (const DomainError& e) {
          throw ConfigError(path + ": " + e.what());
        }
      }
      if (v.is_number()) return json::array({v.get<double>()});
      if (!v.is_array()) fail();
      json out = json::array();
      for (size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) throw ConfigError(path + "[" + std::to_string(i) + "]: expected a number");
        out.push_back(v[i].get<double>());
      }
      return out;
    }
  }
  return v;
}

}  // namespace

json validate_config(const Schema& schema, const json& doc, const std::string& path) {
  if (!doc.is_object()) throw ConfigError(path + ": expected an object");
  json out = json::object();
  for (const auto& f : schema.fields)
    if (!f.fallback.is_null()) out[f.key] = f.fallback;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const Field* f = schema.find(it.key());
    if (!f) throw ConfigError(path + "." + it.key() + ": unknown key for '" + schema.command + "'");
    if (it.value().is_null()) continue;
    out[it.key()] = check(*f, it.value(), path + "." + it.key());
  }
  return out;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<double> p;
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ':');) p.push_back(parse_number(tok));
    if (p.size() < 2 || p.size() > 3) throw DomainError("range '" + text + "' must be lo:hi or lo:hi:step");
    double step = p.size() == 3 ? p[2] : 1.0;
    if (!(step > 0.0) || p[1] < p[0]) throw DomainError("range '" + text + "' is empty or has a non-positive step");
    long n = static_cast<long>(std::floor((p[1] - p[0]) / step + 1e-9));
    if (n > 100000) throw DomainError("range '" + text + "' is too long");
    for (long i = 0; i <= n; ++i) out.push_back(p[0] + static_cast<double>(i) * step);
    return out;
  }
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) out.push_back(parse_number(tok));
  if (out.empty()) throw DomainError("empty list");
  return out;
}

json parse_field(const Field& f, const std::string& text) {
  switch (f.type) {
    case FieldType::Number: return parse_number(text);
    case FieldType::Integer: {
      double x = parse_number(text);
      if (x != std::floor(x)) throw DomainError("'" + text + "' is not an integer");
      return static_cast<long>(x);
    }
    case FieldType::String: return text;
    case FieldType::Bool:
      if (text == "true" || text == "1") return true;
      if (text == "false" || text == "0") return false;
      throw DomainError("'" + text + "' is not a boolean");
    case FieldType::NumberList: return parse_number_list(text);
  }
  return nullptr;
}

std::vector<std::string> family_names() {
  return {"moser", "step-harmonic", "log-2d", "oscillating", "besov-data", "gk", "bump", "cutoff", "gaussian"};
}

std::vector<Field> family_fields(const std::string& default_family) {
  return {
      {"family", FieldType::String, default_family, "data family"},
      {"k", FieldType::Number, 8.0, "family index k"},
      {"nu", FieldType::Number, 1.0, "Moser amplitude factor"},
      {"gamma", FieldType::Number, nullptr, "family exponent"},
      {"M", FieldType::Integer, 1, "resonance order of the oscillating data"},
      {"a", FieldType::Number, 0.5, "cutoff radius"},
      {"s", FieldType::Number, 0.0, "Sobolev index of the bump family"},
      {"mode", FieldType::String, "besov", "bump normalisation: besov or sobolev"},
      {"c", FieldType::NumberList, json::array({1.0}), "Gaussian coefficients"},
      {"sigma", FieldType::NumberList, json::array({0.25}), "Gaussian widths"},
      {"d", FieldType::Integer, nullptr, "space dimension"},
  };
}

RadialProfile make_profile(const json& cfg) {
  const std::string fam = cfg.at("family").get<std::string>();
  const double k = cfg.at("k").get<double>();
  auto num = [&](const char* key, double def) { return cfg.contains(key) ? cfg[key].get<double>() : def; };
  auto dim = [&](int def) { return cfg.contains("d") ? cfg["d"].get<int>() : def; };
  auto model = [&](const char* def) { return Nonlinearity::parse(cfg.contains("model") ? cfg["model"].get<std::string>() : def); };
  if (fam == "moser") return build_moser(k, num("nu", 1.0), num("gamma", 1.0));
  if (fam == "step-harmonic") return build_step_harmonic(k, dim(3), model("power:7")).profile;
  if (fam == "log-2d") return build_log_2d(k, model("kg-exp")).profile;
  if (fam == "oscillating") return build_oscillating(k, cfg.value("M", 1)).profile;
  if (fam == "besov-data") return build_besov_data(k, num("gamma", 1.5)).profile;
  if (fam == "gk") return build_piecewise_log_gk(k, num("gamma", 0.75));
  if (fam == "bump") {
    std::string mode = cfg.value("mode", std::string("besov"));
    if (mode != "besov" && mode != "sobolev") throw ConfigError("$.mode: expected besov or sobolev");
    return build_bump_family(k, mode == "besov" ? BumpMode::Besov : BumpMode::Sobolev, num("s", 0.0), dim(2)).profile;
  }
  if (fam == "cutoff") return build_cutoff(num("a", 0.5), dim(2));
  if (fam == "gaussian")
    return build_gaussian_sum(cfg.at("c").get<std::vector<double>>(), cfg.at("sigma").get<std::vector<double>>(), dim(2));
  std::string known;
  for (const auto& n : family_names()) known += (known.empty() ? "" : ", ") + n;
  throw ConfigError("$.family: unknown family '" + fam + "' (known: " + known + ")");
}

}  // namespace nlw
