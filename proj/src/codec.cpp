#include "ewake/codec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ewake/config.hpp"
#include "ewake/units.hpp"

namespace ewake {

double OokTimeline::total_duration_us() const {
  double total = 0.0;
  for (const OokSegment& s : segments) total += s.duration_us;
  return total;
}

void DecoderConfig::validate() const {
  if (addresses.empty()) throw std::invalid_argument("decoder needs at least one wake address");
  if (bit_rate_bps <= 0.0) throw std::invalid_argument("decoder bit rate must be positive");
  if (wake_delay_us < 0.0) throw std::invalid_argument("wake delay must be non-negative");
}

bool DecoderConfig::matches(const WakeFrame& frame) const {
  return frame.network_id == network_id && addresses.count(frame.target_address) > 0;
}

std::string DecodeOutcome::describe() const {
  switch (kind) {
    case Kind::Wake:
      return "wake address=" + format_hex_u8(address);
    case Kind::NoMatch:
      return reason == Reason::WrongNetwork ? "no-match wrong-network" : "no-match wrong-address";
    case Kind::FramingError:
      return reason == Reason::NoPreamble ? "framing-error no-preamble"
                                          : "framing-error truncated";
  }
  return "invalid";
}

std::array<bool, kFrameBits> frame_bits(const WakeFrame& frame) {
  std::array<bool, kFrameBits> bits{};
  for (int i = 0; i < 8; ++i) {
    bits[static_cast<std::size_t>(i)] = (frame.network_id >> (7 - i)) & 1;
    bits[static_cast<std::size_t>(8 + i)] = (frame.target_address >> (7 - i)) & 1;
  }
  return bits;
}

OokTimeline encode_frame(const WakeFrame& frame, double bit_rate_bps, double tx_power_dbm,
                         double min_wake_delay_us) {
  if (bit_rate_bps <= 0.0) throw std::invalid_argument("bit rate must be positive");
  if (frame.preamble_us <= 0.0) throw std::invalid_argument("preamble duration must be positive");
  if (frame.preamble_us < min_wake_delay_us)
    throw std::invalid_argument("preamble shorter than the receiver wake delay");

  const double bit_us = 1e6 / bit_rate_bps;
  OokTimeline timeline;
  timeline.tx_power_dbm = tx_power_dbm;
  timeline.bit_rate_bps = bit_rate_bps;
  timeline.segments.reserve(2 + kFrameBits);
  timeline.segments.push_back({frame.preamble_us, true});
  timeline.segments.push_back({bit_us, false});  // delimiter: falling edge aligns the bit clock
  for (bool bit : frame_bits(frame)) timeline.segments.push_back({bit_us, bit});
  return timeline;
}

double frame_airtime_us(const WakeFrame& frame, double bit_rate_bps) {
  if (bit_rate_bps <= 0.0) throw std::invalid_argument("bit rate must be positive");
  return frame.preamble_us + (1 + kFrameBits) * (1e6 / bit_rate_bps);
}

Waveform sample_timeline(const OokTimeline& timeline, int samples_per_bit) {
  if (timeline.segments.empty()) throw std::invalid_argument("timeline has no segments");
  if (samples_per_bit < 1) throw std::invalid_argument("samples_per_bit must be at least 1");
  for (const OokSegment& s : timeline.segments)
    if (s.duration_us <= 0.0) throw std::invalid_argument("timeline segment with zero duration");

  const double step_us = 1e6 / timeline.bit_rate_bps / samples_per_bit;
  const double total_us = timeline.total_duration_us();

  Waveform out;
  out.reserve(static_cast<std::size_t>(total_us / step_us) + 2);
  std::size_t seg = 0;
  double seg_end = timeline.segments[0].duration_us;
  for (std::int64_t i = 0;; ++i) {
    double t = static_cast<double>(i) * step_us;
    bool last = t >= total_us;
    if (last) t = total_us;
    while (seg + 1 < timeline.segments.size() && t >= seg_end) {
      ++seg;
      seg_end += timeline.segments[seg].duration_us;
    }
    out.push_back({t, timeline.segments[seg].carrier});
    if (last) break;
  }
  return out;
}

Waveform ideal_waveform(const OokTimeline& timeline) {
  if (timeline.segments.empty()) throw std::invalid_argument("timeline has no segments");
  Waveform out;
  out.reserve(timeline.segments.size() * 2 + 1);
  double t = 0.0;
  for (const OokSegment& s : timeline.segments) {
    if (s.duration_us <= 0.0) throw std::invalid_argument("timeline segment with zero duration");
    out.push_back({t, s.carrier});
    out.push_back({t + s.duration_us / 2.0, s.carrier});
    t += s.duration_us;
  }
  out.push_back({t, timeline.segments.back().carrier});
  return out;
}

namespace {

// Level at time t: the last sample at or before t holds.
bool level_at(const Waveform& w, double t_us) {
  auto it = std::upper_bound(w.begin(), w.end(), t_us,
                             [](double t, const Sample& s) { return t < s.time_us; });
  if (it == w.begin()) return false;
  return std::prev(it)->level;
}

}  // namespace

DecodeOutcome decode_stream(const Waveform& waveform, const DecoderConfig& config) {
  config.validate();
  for (std::size_t i = 1; i < waveform.size(); ++i)
    if (waveform[i].time_us <= waveform[i - 1].time_us)
      throw std::invalid_argument("waveform timestamps must be strictly increasing");

  // (1) Idle until the rising edge that fires the wake interrupt.
  std::size_t edge = waveform.size();
  for (std::size_t i = 0; i < waveform.size(); ++i) {
    if (waveform[i].level && (i == 0 || !waveform[i - 1].level)) {
      edge = i;
      break;
    }
  }
  if (edge == waveform.size())
    return DecodeOutcome::framing_error(DecodeOutcome::Reason::NoPreamble);

  const double t_edge = waveform[edge].time_us;
  const double t_end = waveform.back().time_us;

  // (2) MCU startup; the line is not observed until t_ready.
  const double t_ready = t_edge + config.wake_delay_us;
  if (t_ready > t_end) return DecodeOutcome::framing_error(DecodeOutcome::Reason::Truncated);
  if (!level_at(waveform, t_ready))
    return DecodeOutcome::framing_error(DecodeOutcome::Reason::NoPreamble);

  // (3) Falling edge ends the preamble and starts the delimiter.
  double t_fall = -1.0;
  for (const Sample& s : waveform) {
    if (s.time_us > t_ready && !s.level) {
      t_fall = s.time_us;
      break;
    }
  }
  if (t_fall < 0.0) return DecodeOutcome::framing_error(DecodeOutcome::Reason::Truncated);

  // (4) Sample the 16 payload bits mid-bit, one delimiter period after the
  // falling edge.
  const double bit_us = 1e6 / config.bit_rate_bps;
  std::array<bool, kFrameBits> bits{};
  for (int k = 0; k < kFrameBits; ++k) {
    const double t_sample = t_fall + (static_cast<double>(k) + 1.5) * bit_us;
    if (t_sample > t_end) return DecodeOutcome::framing_error(DecodeOutcome::Reason::Truncated);
    bits[static_cast<std::size_t>(k)] = level_at(waveform, t_sample);
  }

  // (5) Network id first, then address.
  std::uint8_t net = 0;
  std::uint8_t addr = 0;
  for (int i = 0; i < 8; ++i) {
    net = static_cast<std::uint8_t>((net << 1) | (bits[static_cast<std::size_t>(i)] ? 1 : 0));
    addr = static_cast<std::uint8_t>((addr << 1) | (bits[static_cast<std::size_t>(8 + i)] ? 1 : 0));
  }
  if (net != config.network_id)
    return DecodeOutcome::no_match(DecodeOutcome::Reason::WrongNetwork);
  if (config.addresses.count(addr) == 0)
    return DecodeOutcome::no_match(DecodeOutcome::Reason::WrongAddress);
  return DecodeOutcome::wake(addr);
}

void write_timeline_csv(const OokTimeline& timeline, std::ostream& out) {
  out << "t_start_us,duration_us,carrier\n";
  double t = 0.0;
  for (const OokSegment& s : timeline.segments) {
    out << format_double(t) << "," << format_double(s.duration_us) << ","
        << (s.carrier ? 1 : 0) << "\n";
    t += s.duration_us;
  }
}

void write_waveform_csv(const Waveform& waveform, std::ostream& out) {
  out << "time_us,level\n";
  for (const Sample& s : waveform)
    out << format_double(s.time_us) << "," << (s.level ? 1 : 0) << "\n";
}

Waveform read_waveform_csv(std::istream& in) {
  Waveform out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("time_us", 0) == 0) continue;
    std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw ParseError("expected 'time_us,level'", line_no);
    try {
      double t = parse_quantity(line.substr(0, comma) + " us", Dim::TimeUs);
      double level = parse_quantity(line.substr(comma + 1), Dim::Scalar);
      if (level != 0.0 && level != 1.0) throw UnitError("level must be 0 or 1");
      out.push_back({t, level != 0.0});
    } catch (const UnitError& err) {
      throw ParseError(err.what(), line_no);
    }
  }
  return out;
}

}  // namespace ewake
