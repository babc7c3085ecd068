#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nlw/logreal.hpp"

namespace nlw {

// A report cell: plain number, log-space number, text or checked inequality.
struct Cell {
  enum class Kind { Num, Log, Text, Flag };
  Kind kind = Kind::Num;
  double num = 0.0;
  LogReal log;
  std::string text;
  bool flag = false;
};

class Row {
 public:
  Row& num(const std::string& name, double x);
  Row& log(const std::string& name, LogReal x);
  Row& text(const std::string& name, const std::string& s);
  Row& flag(const std::string& name, bool ok);
  const std::vector<std::pair<std::string, Cell>>& cells() const { return cells_; }
  const Cell* find(const std::string& name) const;
  double get(const std::string& name) const;  // numeric value of a Num or Log cell
  bool pass() const;                          // every flag holds
  std::vector<std::string> failing_flags() const;

 private:
  Row& put(const std::string& name, Cell c);
  std::vector<std::pair<std::string, Cell>> cells_;
};

struct Report {
  std::string id;
  std::vector<Row> rows;
  Row summary;  // fits, trends and other whole-report checks
  std::vector<std::pair<std::string, std::string>> meta;

  bool all_pass() const;
  // Header row, then one line per row; every numeric column is followed by <name>_repr.
  std::string csv() const;
  std::string json(int indent = 2) const;
  // Human-readable lines for rows (and the summary) with failed flags.
  std::vector<std::string> failures() const;
};

// Deterministic round-trip formatting of a double.
std::string format_double(double x);

}  // namespace nlw
