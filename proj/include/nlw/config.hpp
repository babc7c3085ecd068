#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "nlw/errors.hpp"
#include "nlw/profile.hpp"

namespace nlw {

// Schema violation; the message starts with the JSON path of the offending field.
struct ConfigError : DomainError {
  using DomainError::DomainError;
};

enum class FieldType { Number, Integer, String, Bool, NumberList };

struct Field {
  std::string key;
  FieldType type = FieldType::Number;
  nlohmann::json fallback;  // null: optional without default
  std::string help;
};

struct Schema {
  std::string command;
  std::vector<Field> fields;
  const Field* find(const std::string& key) const;
};

// Checks every key and type of doc against the schema (unknown keys rejected) and fills defaults.
nlohmann::json validate_config(const Schema& schema, const nlohmann::json& doc, const std::string& path = "$");
// Typed value of a command-line string.
nlohmann::json parse_field(const Field& f, const std::string& text);
// "10:40" (unit step), "1:2:0.25" or "4,16,64".
std::vector<double> parse_number_list(const std::string& text);

// Fields naming a data family and its parameters, shared by several commands.
std::vector<Field> family_fields(const std::string& default_family);
// Builds the profile named by cfg["family"] from the family fields.
RadialProfile make_profile(const nlohmann::json& cfg);
std::vector<std::string> family_names();

}  // namespace nlw
