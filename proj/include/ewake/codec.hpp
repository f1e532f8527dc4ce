#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace ewake {

inline constexpr int kFrameBits = 16;  // 8-bit network id + 8-bit address
inline constexpr double kDefaultBitRateBps = 1000.0;
inline constexpr double kDefaultWakeDelayUs = 5.0;
inline constexpr double kDefaultPreambleUs = 2000.0;
inline constexpr double kDefaultTxPowerDbm = 14.0;

// Payload of one wake-up transmission. The preamble gives the matcher MCU
// time to leave sleep before the modulated bits arrive.
struct WakeFrame {
  std::uint8_t network_id = 0x5A;
  std::uint8_t target_address = 0x01;
  double preamble_us = kDefaultPreambleUs;

  bool operator==(const WakeFrame&) const = default;
};

struct OokSegment {
  double duration_us = 0.0;
  bool carrier = false;

  bool operator==(const OokSegment&) const = default;
};

// Piecewise-constant carrier envelope: preamble, one-bit-period OFF
// delimiter, then 16 one-bit-period payload segments.
struct OokTimeline {
  double tx_power_dbm = kDefaultTxPowerDbm;
  double bit_rate_bps = kDefaultBitRateBps;
  std::vector<OokSegment> segments;

  double total_duration_us() const;
};

struct DecoderConfig {
  std::uint8_t network_id = 0x5A;
  std::set<std::uint8_t> addresses = {0x01};
  double bit_rate_bps = kDefaultBitRateBps;
  double wake_delay_us = kDefaultWakeDelayUs;  // MCU startup after the wake interrupt

  void validate() const;
  bool matches(const WakeFrame& frame) const;
};

struct DecodeOutcome {
  enum class Kind { Wake, NoMatch, FramingError };
  enum class Reason { None, WrongNetwork, WrongAddress, NoPreamble, Truncated };

  Kind kind = Kind::FramingError;
  Reason reason = Reason::NoPreamble;
  std::uint8_t address = 0;  // valid for Wake only

  static DecodeOutcome wake(std::uint8_t address) {
    return {Kind::Wake, Reason::None, address};
  }
  static DecodeOutcome no_match(Reason reason) { return {Kind::NoMatch, reason, 0}; }
  static DecodeOutcome framing_error(Reason reason) { return {Kind::FramingError, reason, 0}; }

  bool is_wake() const { return kind == Kind::Wake; }
  std::string describe() const;

  bool operator==(const DecodeOutcome&) const = default;
};

// Binary comparator-output stream: timestamped level samples, strictly
// increasing in time, level constant until the next sample.
struct Sample {
  double time_us = 0.0;
  bool level = false;

  bool operator==(const Sample&) const = default;
};

using Waveform = std::vector<Sample>;

// network_id then target_address, both MSB-first.
std::array<bool, kFrameBits> frame_bits(const WakeFrame& frame);

// Carrier ON for the preamble, OFF for one bit period, then one segment per
// payload bit (ON = 1). min_wake_delay_us lets the caller assert the
// receivers' startup requirement at encode time.
OokTimeline encode_frame(const WakeFrame& frame, double bit_rate_bps,
                         double tx_power_dbm = kDefaultTxPowerDbm,
                         double min_wake_delay_us = 0.0);

// Uniform sampling of a timeline at samples_per_bit times the bit rate,
// endpoint included.
Waveform sample_timeline(const OokTimeline& timeline, int samples_per_bit = 8);

// Transition-accurate sampling: one sample at every segment boundary and
// midpoint, plus the end instant. Edges land exactly where the timeline
// puts them.
Waveform ideal_waveform(const OokTimeline& timeline);

// The matcher state machine: wake on the first rising edge, ignore the line
// for wake_delay_us, ride the preamble to its falling edge, then sample the
// 16 payload bits at mid-bit instants one delimiter period later.
DecodeOutcome decode_stream(const Waveform& waveform, const DecoderConfig& config);

double frame_airtime_us(const WakeFrame& frame, double bit_rate_bps);

// CSV formats: timelines as t_start_us,duration_us,carrier and waveforms as
// time_us,level.
void write_timeline_csv(const OokTimeline& timeline, std::ostream& out);
void write_waveform_csv(const Waveform& waveform, std::ostream& out);
Waveform read_waveform_csv(std::istream& in);

}  // namespace ewake
