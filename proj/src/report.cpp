#include "nlw/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace nlw {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Row& Row::put(const std::string& name, Cell c) {
  for (auto& [n, old] : cells_)
    if (n == name) {
      old = std::move(c);
      return *this;
    }
  cells_.emplace_back(name, std::move(c));
  return *this;
}

Row& Row::num(const std::string& name, double x) {
  Cell c;
  c.num = x;
  return put(name, c);
}

Row& Row::log(const std::string& name, LogReal x) {
  Cell c;
  c.kind = Cell::Kind::Log;
  c.log = x;
  return put(name, c);
}

Row& Row::text(const std::string& name, const std::string& s) {
  Cell c;
  c.kind = Cell::Kind::Text;
  c.text = s;
  return put(name, c);
}

Row& Row::flag(const std::string& name, bool ok) {
  Cell c;
  c.kind = Cell::Kind::Flag;
  c.flag = ok;
  return put(name, c);
}

const Cell* Row::find(const std::string& name) const {
  for (const auto& [n, c] : cells_)
    if (n == name) return &c;
  return nullptr;
}

double Row::get(const std::string& name) const {
  const Cell* c = find(name);
  if (!c) throw std::out_of_range("no column " + name);
  if (c->kind == Cell::Kind::Num) return c->num;
  if (c->kind == Cell::Kind::Log) return c->log.value();
  throw std::out_of_range("column " + name + " is not numeric");
}

bool Row::pass() const {
  for (const auto& [n, c] : cells_)
    if (c.kind == Cell::Kind::Flag && !c.flag) return false;
  return true;
}

std::vector<std::string> Row::failing_flags() const {
  std::vector<std::string> out;
  for (const auto& [n, c] : cells_)
    if (c.kind == Cell::Kind::Flag && !c.flag) out.push_back(n);
  return out;
}

bool Report::all_pass() const {
  for (const auto& r : rows)
    if (!r.pass()) return false;
  return summary.pass();
}

namespace {

bool numeric(Cell::Kind k) { return k == Cell::Kind::Num || k == Cell::Kind::Log; }

// Value and representation tag of a numeric cell.
std::pair<std::string, std::string> numeric_text(const Cell& c) {
  if (c.kind == Cell::Kind::Num) return {format_double(c.num), "linear"};
  if (c.log.sign == 0) return {"0", "linear"};
  return {format_double(c.log.log10_abs()), c.log.sign > 0 ? "log10" : "neg_log10"};
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

nlohmann::ordered_json cell_json(const Cell& c) {
  switch (c.kind) {
    case Cell::Kind::Num:
      if (std::isfinite(c.num)) return c.num;
      return format_double(c.num);
    case Cell::Kind::Log:
      if (c.log.sign == 0) return 0.0;
      return {{"log10_abs", c.log.log10_abs()}, {"sign", c.log.sign}};
    case Cell::Kind::Text:
      return c.text;
    case Cell::Kind::Flag:
      return c.flag;
  }
  return nullptr;
}

nlohmann::ordered_json row_json(const Row& r) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [n, c] : r.cells()) j[n] = cell_json(c);
  j["pass"] = r.pass();
  return j;
}

}  // namespace

std::string Report::csv() const {
  std::vector<std::pair<std::string, Cell::Kind>> cols;
  for (const auto& r : rows)
    for (const auto& [n, c] : r.cells()) {
      bool seen = false;
      for (const auto& col : cols) seen = seen || col.first == n;
      if (!seen) cols.emplace_back(n, c.kind);
    }
  std::string out;
  for (size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ',';
    out += quote(cols[i].first);
    if (numeric(cols[i].second)) out += ',' + quote(cols[i].first + "_repr");
  }
  out += ",pass\n";
  for (const auto& r : rows) {
    for (size_t i = 0; i < cols.size(); ++i) {
      if (i) out += ',';
      const Cell* c = r.find(cols[i].first);
      bool num_col = numeric(cols[i].second);
      if (!c) {
        if (num_col) out += ',';
        continue;
      }
      if (num_col) {
        if (numeric(c->kind)) {
          auto [v, rep] = numeric_text(*c);
          out += v + ',' + rep;
        } else {
          out += quote(c->kind == Cell::Kind::Text ? c->text : (c->flag ? "true" : "false")) + ",text";
        }
      } else if (numeric(c->kind)) {
        out += numeric_text(*c).first;
      } else {
        out += quote(c->kind == Cell::Kind::Text ? c->text : (c->flag ? "true" : "false"));
      }
    }
    out += r.pass() ? ",true\n" : ",false\n";
  }
  return out;
}

std::string Report::json(int indent) const {
  nlohmann::ordered_json j;
  j["experiment"] = id;
  nlohmann::ordered_json m = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta) m[k] = v;
  j["meta"] = m;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) j["rows"].push_back(row_json(r));
  j["summary"] = row_json(summary);
  j["all_pass"] = all_pass();
  return j.dump(indent);
}

std::vector<std::string> Report::failures() const {
  std::vector<std::string> out;
  auto describe = [](const Row& r) {
    std::string s;
    for (const auto& [n, c] : r.cells()) {
      if (c.kind == Cell::Kind::Flag) continue;
      if (!s.empty()) s += ' ';
      s += n + '=';
      if (c.kind == Cell::Kind::Num) s += format_double(c.num);
      else if (c.kind == Cell::Kind::Log) s += c.log.sign == 0 ? "0" : "1e" + format_double(c.log.log10_abs());
      else s += c.text;
      if (s.size() > 200) break;
    }
    return s;
  };
  for (size_t i = 0; i < rows.size(); ++i) {
    auto bad = rows[i].failing_flags();
    if (bad.empty()) continue;
    std::string line = id + " row " + std::to_string(i) + " failed:";
    for (const auto& b : bad) line += ' ' + b;
    out.push_back(line + " | " + describe(rows[i]));
  }
  auto bad = summary.failing_flags();
  if (!bad.empty()) {
    std::string line = id + " summary failed:";
    for (const auto& b : bad) line += ' ' + b;
    out.push_back(line + " | " + describe(summary));
  }
  return out;
}

}  // namespace nlw
