#include "ewake/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace ewake {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

const ConfigEntry* ConfigSection::find(std::string_view key) const {
  for (const ConfigEntry& e : entries)
    if (e.key == key) return &e;
  return nullptr;
}

const std::string& ConfigSection::get(std::string_view key) const {
  const ConfigEntry* e = find(key);
  if (!e)
    throw ParseError("section [" + name + "] is missing required key '" + std::string(key) + "'",
                     line);
  return e->value;
}

const ConfigSection* ConfigDoc::find(std::string_view name) const {
  for (const ConfigSection& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

std::vector<const ConfigSection*> ConfigDoc::with_prefix(std::string_view prefix) const {
  std::vector<const ConfigSection*> out;
  for (const ConfigSection& s : sections)
    if (s.name.rfind(prefix, 0) == 0) out.push_back(&s);
  return out;
}

ConfigDoc parse_config(std::string_view text) {
  ConfigDoc doc;
  ConfigSection* current = nullptr;
  int line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    std::string_view body = line;
    if (std::size_t hash = body.find('#'); hash != std::string_view::npos)
      body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;

    if (body.front() == '[') {
      if (body.back() != ']')
        throw ParseError("unterminated section header '" + std::string(body) + "'", line_no);
      std::string name(trim(body.substr(1, body.size() - 2)));
      if (name.empty()) throw ParseError("empty section name", line_no);
      doc.sections.push_back(ConfigSection{name, line_no, {}});
      current = &doc.sections.back();
      continue;
    }

    std::size_t eq = body.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("expected 'key = value', got '" + std::string(body) + "'", line_no);
    std::string key(trim(body.substr(0, eq)));
    std::string value(trim(body.substr(eq + 1)));
    if (key.empty()) throw ParseError("empty key", line_no);
    if (!current) throw ParseError("key '" + key + "' appears before any [section]", line_no);
    if (current->find(key))
      throw ParseError("duplicate key '" + key + "' in section [" + current->name + "]", line_no);
    current->entries.push_back(ConfigEntry{std::move(key), std::move(value), line_no});
  }
  return doc;
}

ConfigDoc parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void apply_override(ConfigDoc& doc, std::string_view dotted_assignment) {
  std::size_t eq = dotted_assignment.find('=');
  if (eq == std::string_view::npos)
    throw std::invalid_argument("override must look like section.key=value, got '" +
                                std::string(dotted_assignment) + "'");
  std::string_view target = trim(dotted_assignment.substr(0, eq));
  std::string value(trim(dotted_assignment.substr(eq + 1)));
  std::size_t dot = target.rfind('.');
  if (dot == std::string_view::npos)
    throw std::invalid_argument("override target '" + std::string(target) +
                                "' is missing the section part");
  std::string section(target.substr(0, dot));
  std::string key(target.substr(dot + 1));

  for (ConfigSection& s : doc.sections) {
    if (s.name != section) continue;
    for (ConfigEntry& e : s.entries) {
      if (e.key == key) {
        e.value = value;
        return;
      }
    }
    throw std::invalid_argument("override references unknown key '" + key + "' in section [" +
                                section + "]");
  }
  throw std::invalid_argument("override references unknown section [" + section + "]");
}

double get_quantity(const ConfigSection& sec, std::string_view key, Dim dim) {
  const ConfigEntry* e = sec.find(key);
  if (!e)
    throw ParseError("section [" + sec.name + "] is missing required key '" + std::string(key) + "'",
                     sec.line);
  try {
    return parse_quantity(e->value, dim);
  } catch (const UnitError& err) {
    throw ParseError(std::string(err.what()) + " in field '" + std::string(key) + "'", e->line);
  }
}

double get_quantity_or(const ConfigSection& sec, std::string_view key, Dim dim, double fallback) {
  return sec.has(key) ? get_quantity(sec, key, dim) : fallback;
}

std::optional<double> get_quantity_opt(const ConfigSection& sec, std::string_view key, Dim dim) {
  if (!sec.has(key)) return std::nullopt;
  return get_quantity(sec, key, dim);
}

}  // namespace ewake
