#pragma once

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ewake {

// Scale helpers. The config parser and the builtin catalog build values
// through the same expressions, so parsed quantities compare bit-equal
// against builtin ones.
constexpr double femto(double x) { return x * 1e-15; }
constexpr double pico(double x) { return x * 1e-12; }
constexpr double nano(double x) { return x * 1e-9; }
constexpr double micro(double x) { return x * 1e-6; }
constexpr double milli(double x) { return x * 1e-3; }
constexpr double kilo(double x) { return x * 1e3; }
constexpr double mega(double x) { return x * 1e6; }
constexpr double giga(double x) { return x * 1e9; }

// Quantity dimensions accepted in config files and CLI flags. Each has a
// canonical unit the parsed value is returned in.
enum class Dim {
  CurrentNa,      // canonical nA (fA..A)
  CurrentA,       // canonical A
  CurrentUa,      // canonical uA
  VoltageV,       // canonical V
  FrequencyHz,    // canonical Hz
  TimeUs,         // canonical us
  TimeS,          // canonical s
  PowerDbm,       // dBm, additive scale
  GainDb,         // dB
  DistanceM,      // canonical m
  BitRateBps,     // canonical bit/s
  RateHz,         // events per second ("/s" or Hz)
  InductanceNh,   // canonical nH
  CapacitancePf,  // canonical pF
  ChargeMah,      // canonical mAh
  Fraction,       // bare or %
  Scalar,         // bare number, no unit
};

struct UnitError : std::runtime_error {
  explicit UnitError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parses "<number> <unit>" with the unit mandatory for dimensioned
// quantities ("10 nH", "27mV", "-32 dBm"). Bare numbers are accepted only
// for Scalar and Fraction.
double parse_quantity(std::string_view text, Dim dim);

// 8-bit id/address, "0x"-prefixed hex or decimal.
std::uint8_t parse_u8(std::string_view text);

// Shortest round-trip decimal representation; deterministic across runs.
std::string format_double(double value);

std::string format_hex_u8(std::uint8_t value);  // "0x5A"

}  // namespace ewake
