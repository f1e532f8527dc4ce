#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ewake/units.hpp"

namespace ewake {

// Shared dialect for catalog, chain and scenario files:
//
//   # comment
//   [section-name]
//   key = value
//
// Values keep their raw text; quantity interpretation happens at the point
// of use so errors can name the field.
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_no(line) {}
  int line_no;
};

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct ConfigSection {
  std::string name;
  int line = 0;
  std::vector<ConfigEntry> entries;

  const ConfigEntry* find(std::string_view key) const;
  // Required lookup; throws ParseError naming the section and key.
  const std::string& get(std::string_view key) const;
  bool has(std::string_view key) const { return find(key) != nullptr; }
};

struct ConfigDoc {
  std::vector<ConfigSection> sections;

  const ConfigSection* find(std::string_view name) const;
  std::vector<const ConfigSection*> with_prefix(std::string_view prefix) const;
};

ConfigDoc parse_config(std::string_view text);
ConfigDoc parse_config_file(const std::string& path);

// Applies "section.key=value" overrides to an already-parsed document.
// Unknown targets are rejected.
void apply_override(ConfigDoc& doc, std::string_view dotted_assignment);

// Field-level quantity access with errors that carry the config line.
double get_quantity(const ConfigSection& sec, std::string_view key, Dim dim);
double get_quantity_or(const ConfigSection& sec, std::string_view key, Dim dim, double fallback);
std::optional<double> get_quantity_opt(const ConfigSection& sec, std::string_view key, Dim dim);

}  // namespace ewake
