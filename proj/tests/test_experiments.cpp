#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "json.hpp"
#include "nlw/config.hpp"
#include "nlw/experiments.hpp"
#include "nlw/parallel.hpp"
#include "nlw/profiles.hpp"

using namespace nlw;
using doctest::Approx;
using nlohmann::json;

TEST_CASE("csv carries a representation column per numeric column") {
  Report r;
  r.id = "t";
  Row a;
  a.num("x", 0.5).log("big", LogReal::from(1.0)).text("note", "a,b").flag("ok", true);
  Row b;
  b.num("x", -2.0).log("big", LogReal::from(-1.0)).flag("ok", false).num("extra", 3.0);
  r.rows = {a, b};
  std::string csv = r.csv();
  std::string head = csv.substr(0, csv.find('\n'));
  CHECK(head == "x,x_repr,big,big_repr,note,ok,extra,extra_repr,pass");
  CHECK(csv.find("0.5,linear,0,log10,\"a,b\",true,,,true") != std::string::npos);
  CHECK(csv.find("-2,linear,0,neg_log10,,false,3,linear,false") != std::string::npos);
  CHECK_FALSE(r.all_pass());
  REQUIRE(r.failures().size() == 1);
  CHECK(r.failures()[0].find("row 1 failed: ok") != std::string::npos);
}

TEST_CASE("json report keeps order and log cells") {
  Report r;
  r.id = "t";
  r.meta.emplace_back("seed", "7");
  Row a;
  a.num("z", 1.0).num("a", 2.0).log("L", LogReal::from(100.0));
  r.rows.push_back(a);
  r.summary.flag("fine", true);
  auto j = nlohmann::ordered_json::parse(r.json());
  CHECK(j["experiment"] == "t");
  CHECK(j["meta"]["seed"] == "7");
  CHECK(j["rows"][0].begin().key() == "z");
  CHECK(j["rows"][0]["L"]["log10_abs"].get<double>() == Approx(2.0));
  CHECK(j["all_pass"] == true);
}

TEST_CASE("formatting round-trips doubles") {
  for (double x : {0.1, 1.0 / 3.0, 6.02e23, -5e-300}) CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
  CHECK(format_double(0.0) == "0");
}

TEST_CASE("fit_line recovers an exact line") {
  auto f = fit_line({1, 2, 3, 4, 5}, {3, 5, 7, 9, 11});
  CHECK(f.slope == Approx(2.0));
  CHECK(f.intercept == Approx(1.0));
  CHECK(f.max_residual < 1e-12);
  CHECK(f.slope_stderr < 1e-12);
  CHECK_THROWS_AS(fit_line({1, 1}, {2, 3}), DomainError);
}

TEST_CASE("number lists and ranges") {
  CHECK(parse_number_list("10:40").size() == 31);
  CHECK(parse_number_list("1:2:0.25") == std::vector<double>{1, 1.25, 1.5, 1.75, 2});
  CHECK(parse_number_list("4,16,64") == std::vector<double>{4, 16, 64});
  CHECK_THROWS_AS(parse_number_list("4:1"), DomainError);
  CHECK_THROWS_AS(parse_number_list("a,b"), DomainError);
}

TEST_CASE("config schema validation") {
  Schema s{"demo", {{"k", FieldType::Number, 8.0, ""}, {"n", FieldType::Integer, nullptr, ""},
                    {"ks", FieldType::NumberList, nullptr, ""}, {"name", FieldType::String, "x", ""}}};
  auto ok = validate_config(s, json{{"n", 3}, {"ks", "1:3"}});
  CHECK(ok["k"] == 8.0);
  CHECK(ok["ks"].size() == 3);
  CHECK(ok["name"] == "x");
  auto message = [&](const json& doc) {
    try {
      validate_config(s, doc);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message(json{{"bogus", 1}}).rfind("$.bogus:", 0) == 0);
  CHECK(message(json{{"k", "eight"}}).rfind("$.k:", 0) == 0);
  CHECK(message(json{{"n", 2.5}}).rfind("$.n:", 0) == 0);
  CHECK(message(json{{"ks", json::array({1, "x"})}}).rfind("$.ks[1]:", 0) == 0);
  CHECK(message(json::array()).rfind("$:", 0) == 0);
}

TEST_CASE("profiles from config") {
  Schema s{"p", family_fields("moser")};
  auto u = make_profile(validate_config(s, json{{"k", 4}}));
  CHECK(u.dim() == 2);
  CHECK(u.plateau_value() == build_moser(4).plateau_value());
  for (const auto& fam : family_names()) {
    json doc = {{"family", fam}, {"k", fam == "oscillating" ? 4096 : 4}};
    CHECK_NOTHROW(make_profile(validate_config(s, doc)));
  }
  CHECK_THROWS_AS(make_profile(validate_config(s, json{{"family", "nope"}})), ConfigError);
}

TEST_CASE("thread count from the environment") {
  setenv("NLW_THREADS", "1", 1);
  CHECK(configure_threads() == 1);
  setenv("NLW_THREADS", "zero", 1);
  CHECK_THROWS_AS(configure_threads(), DomainError);
  unsetenv("NLW_THREADS");
}

TEST_CASE("lemma suite groups") {
  auto r = run_lemma_suite({"period", "resonance"});
  CHECK(r.all_pass());
  CHECK(r.rows.front().find("group")->text == "period");
  CHECK_THROWS_AS(run_lemma_suite({"nothing"}), DomainError);
}

TEST_CASE("flow modulus maps zero to zero and is monotone") {
  ModulusOptions o;
  o.deltas = {0.0, 0.05, 0.1};
  o.dr = 1.0 / 200;
  auto r = run_flow_modulus(o);
  CHECK(r.all_pass());
  CHECK(r.rows.back().get("output_distance") == 0.0);
}

TEST_CASE("energy report on a short k grid") {
  EnergyIllposedOptions o;
  o.ks = {4, 16};
  o.M_max = 0;
  o.pde_check = false;
  auto r = run_energy_illposed(o);
  CHECK(r.rows.size() == 2);
  CHECK(r.all_pass());
}

TEST_CASE("low-regularity targets") {
  CHECK(parse_lowreg_target("gk") == LowRegTarget::GkHs);
  CHECK(to_string(LowRegTarget::Besov) == "besov");
  CHECK_THROWS_AS(parse_lowreg_target("l2"), DomainError);
  LowRegOptions o;
  o.ks = {4, 8};
  CHECK_THROWS_AS(run_lowreg_illposed(o), DomainError);
}
