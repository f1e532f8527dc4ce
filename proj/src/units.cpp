#include "ewake/units.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

namespace ewake {

namespace {

struct UnitDef {
  std::string_view suffix;
  double factor;  // relative to the dimension's canonical unit
};

struct DimDef {
  std::string_view name;
  bool allow_bare;
  std::initializer_list<UnitDef> units;
};

const DimDef& dim_def(Dim dim) {
  static const DimDef current_na{"current", false,
      {{"fA", 1e-6}, {"pA", 1e-3}, {"nA", 1.0}, {"uA", 1e3}, {"mA", 1e6}, {"A", 1e9}}};
  static const DimDef current_a{"current", false,
      {{"fA", 1e-15}, {"pA", 1e-12}, {"nA", 1e-9}, {"uA", 1e-6}, {"mA", 1e-3}, {"A", 1.0}}};
  static const DimDef current_ua{"current", false,
      {{"fA", 1e-9}, {"pA", 1e-6}, {"nA", 1e-3}, {"uA", 1.0}, {"mA", 1e3}, {"A", 1e6}}};
  static const DimDef voltage{"voltage", false,
      {{"nV", 1e-9}, {"uV", 1e-6}, {"mV", 1e-3}, {"V", 1.0}}};
  static const DimDef frequency{"frequency", false,
      {{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}}};
  static const DimDef time_us{"duration", false,
      {{"ns", 1e-3}, {"us", 1.0}, {"ms", 1e3}, {"s", 1e6}}};
  static const DimDef time_s{"duration", false,
      {{"ns", 1e-9}, {"us", 1e-6}, {"ms", 1e-3}, {"s", 1.0}, {"min", 60.0}, {"h", 3600.0}}};
  static const DimDef power_dbm{"power", false, {{"dBm", 1.0}}};
  static const DimDef gain_db{"gain", false, {{"dB", 1.0}}};
  static const DimDef distance{"distance", false,
      {{"mm", 1e-3}, {"cm", 1e-2}, {"m", 1.0}, {"km", 1e3}}};
  static const DimDef bit_rate{"bit rate", false,
      {{"bps", 1.0}, {"kbps", 1e3}, {"bit/s", 1.0}}};
  static const DimDef rate{"rate", false,
      {{"/s", 1.0}, {"Hz", 1.0}, {"mHz", 1e-3}, {"/min", 1.0 / 60.0}, {"/h", 1.0 / 3600.0}}};
  static const DimDef inductance{"inductance", false, {{"nH", 1.0}, {"uH", 1e3}}};
  static const DimDef capacitance{"capacitance", false, {{"pF", 1.0}, {"nF", 1e3}}};
  static const DimDef charge{"capacity", false, {{"uAh", 1e-3}, {"mAh", 1.0}, {"Ah", 1e3}}};
  static const DimDef fraction{"fraction", true, {{"%", 1e-2}}};
  static const DimDef scalar{"scalar", true, {}};

  switch (dim) {
    case Dim::CurrentNa: return current_na;
    case Dim::CurrentA: return current_a;
    case Dim::CurrentUa: return current_ua;
    case Dim::VoltageV: return voltage;
    case Dim::FrequencyHz: return frequency;
    case Dim::TimeUs: return time_us;
    case Dim::TimeS: return time_s;
    case Dim::PowerDbm: return power_dbm;
    case Dim::GainDb: return gain_db;
    case Dim::DistanceM: return distance;
    case Dim::BitRateBps: return bit_rate;
    case Dim::RateHz: return rate;
    case Dim::InductanceNh: return inductance;
    case Dim::CapacitancePf: return capacitance;
    case Dim::ChargeMah: return charge;
    case Dim::Fraction: return fraction;
    case Dim::Scalar: return scalar;
  }
  throw UnitError("unknown dimension");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// "µ" (U+00B5) and "μ" (U+03BC) both normalize to "u".
std::string normalize_micro(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto c = static_cast<unsigned char>(s[i]);
    if (c == 0xC2 && i + 1 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0xB5) {
      out += 'u';
      ++i;
    } else if (c == 0xCE && i + 1 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0xBC) {
      out += 'u';
      ++i;
    } else {
      out += s[i];
    }
  }
  return out;
}

}  // namespace

double parse_quantity(std::string_view raw_text, Dim dim) {
  const DimDef& def = dim_def(dim);
  const std::string text = normalize_micro(trim(raw_text));
  if (text.empty()) throw UnitError("empty " + std::string(def.name) + " value");

  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  auto [num_end, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || num_end == begin)
    throw UnitError("malformed " + std::string(def.name) + " value '" + text + "'");

  std::string_view unit = trim(std::string_view(num_end, static_cast<std::size_t>(end - num_end)));
  if (unit.empty()) {
    if (def.allow_bare) return value;
    throw UnitError("missing unit on " + std::string(def.name) + " value '" + text +
                    "' (explicit units are required, e.g. '10 nH')");
  }
  for (const UnitDef& u : def.units) {
    if (unit == u.suffix) return value * u.factor;
  }
  throw UnitError("unknown " + std::string(def.name) + " unit '" + std::string(unit) + "'");
}

std::uint8_t parse_u8(std::string_view raw_text) {
  std::string_view text = trim(raw_text);
  int base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    base = 16;
    text.remove_prefix(2);
  }
  unsigned int value = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
  if (ec != std::errc{} || p != text.data() + text.size())
    throw UnitError("malformed 8-bit id '" + std::string(raw_text) + "'");
  if (value > 0xFF)
    throw UnitError("id '" + std::string(raw_text) + "' out of 8-bit range");
  return static_cast<std::uint8_t>(value);
}

std::string format_double(double value) {
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, p);
}

std::string format_hex_u8(std::uint8_t value) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "0x%02X", value);
  return std::string(buf);
}

}  // namespace ewake
