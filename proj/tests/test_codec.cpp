#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "ewake/codec.hpp"
#include "ewake/config.hpp"

using namespace ewake;

namespace {

std::array<bool, 16> bits_from_string(const char* s) {
  std::array<bool, 16> out{};
  for (int i = 0; i < 16; ++i) out[static_cast<std::size_t>(i)] = s[i] == '1';
  return out;
}

DecoderConfig config_for(const WakeFrame& frame, double bit_rate = kDefaultBitRateBps) {
  DecoderConfig config;
  config.network_id = frame.network_id;
  config.addresses = {frame.target_address};
  config.bit_rate_bps = bit_rate;
  return config;
}

}  // namespace

TEST_CASE("frame bits are network id then address, MSB first") {
  CHECK(frame_bits({0x00, 0x00, 1.0}) == bits_from_string("0000000000000000"));
  CHECK(frame_bits({0xA5, 0x01, 1.0}) == bits_from_string("1010010100000001"));
  CHECK(frame_bits({0xFF, 0xFF, 1.0}) == bits_from_string("1111111111111111"));
  CHECK(frame_bits({0x5A, 0x02, 1.0}) == bits_from_string("0101101000000010"));
}

TEST_CASE("encoding lays out preamble, delimiter and one segment per bit") {
  WakeFrame frame{0xA5, 0x01, 500.0};
  OokTimeline timeline = encode_frame(frame, 1000.0, 14.0);

  REQUIRE(timeline.segments.size() == 18);
  CHECK(timeline.tx_power_dbm == 14.0);
  CHECK(timeline.bit_rate_bps == 1000.0);
  CHECK(timeline.segments[0] == OokSegment{500.0, true});
  CHECK(timeline.segments[1] == OokSegment{1000.0, false});
  const auto bits = frame_bits(frame);
  for (int k = 0; k < kFrameBits; ++k) {
    CHECK(timeline.segments[static_cast<std::size_t>(2 + k)].duration_us == 1000.0);
    CHECK(timeline.segments[static_cast<std::size_t>(2 + k)].carrier ==
          bits[static_cast<std::size_t>(k)]);
  }
  CHECK(timeline.total_duration_us() == doctest::Approx(500.0 + 17 * 1000.0));
}

TEST_CASE("all-ones payload is continuous carrier after the delimiter") {
  OokTimeline timeline = encode_frame({0xFF, 0xFF, 2000.0}, 1000.0, 14.0);
  CHECK(timeline.segments[0].carrier);
  CHECK_FALSE(timeline.segments[1].carrier);
  for (std::size_t i = 2; i < timeline.segments.size(); ++i) CHECK(timeline.segments[i].carrier);
}

TEST_CASE("the preamble duration passes straight through") {
  OokTimeline timeline = encode_frame({0x11, 0x22, 10.0}, 1000.0, 14.0);
  CHECK(timeline.segments[0] == OokSegment{10.0, true});
}

TEST_CASE("encode rejects invalid rate, preamble and wake-delay budget") {
  CHECK_THROWS_AS(encode_frame({0x01, 0x02, 1000.0}, 0.0, 14.0), std::invalid_argument);
  CHECK_THROWS_AS(encode_frame({0x01, 0x02, 1000.0}, -5.0, 14.0), std::invalid_argument);
  CHECK_THROWS_AS(encode_frame({0x01, 0x02, 0.0}, 1000.0, 14.0), std::invalid_argument);
  CHECK_THROWS_AS(encode_frame({0x01, 0x02, -1.0}, 1000.0, 14.0), std::invalid_argument);
  // Preamble must cover the receivers' startup when the caller states it.
  CHECK_THROWS_AS(encode_frame({0x01, 0x02, 3.0}, 1000.0, 14.0, 5.0), std::invalid_argument);
  CHECK_NOTHROW(encode_frame({0x01, 0x02, 8.0}, 1000.0, 14.0, 5.0));
}

TEST_CASE("ideal round trip wakes the matching decoder") {
  WakeFrame frame{0x5A, 0x01, 2000.0};
  Waveform waveform = sample_timeline(encode_frame(frame, 1000.0, 14.0));
  CHECK(decode_stream(waveform, config_for(frame)) == DecodeOutcome::wake(0x01));
}

TEST_CASE("wrong network id is rejected before the address check") {
  WakeFrame frame{0x5A, 0x01, 2000.0};
  Waveform waveform = sample_timeline(encode_frame(frame, 1000.0, 14.0));
  DecoderConfig config = config_for(frame);
  config.network_id = 0x3C;
  CHECK(decode_stream(waveform, config) ==
        DecodeOutcome::no_match(DecodeOutcome::Reason::WrongNetwork));
}

TEST_CASE("wrong address reports a no-match") {
  WakeFrame frame{0x5A, 0x07, 2000.0};
  Waveform waveform = sample_timeline(encode_frame(frame, 1000.0, 14.0));
  DecoderConfig config;
  config.network_id = 0x5A;
  config.addresses = {0x01, 0x02};
  CHECK(decode_stream(waveform, config) ==
        DecodeOutcome::no_match(DecodeOutcome::Reason::WrongAddress));
}

TEST_CASE("nodes can listen on several wake addresses") {
  WakeFrame frame{0x5A, 0x02, 2000.0};
  Waveform waveform = sample_timeline(encode_frame(frame, 1000.0, 14.0));
  DecoderConfig config;
  config.network_id = 0x5A;
  config.addresses = {0x01, 0x02};
  CHECK(decode_stream(waveform, config) == DecodeOutcome::wake(0x02));
}

TEST_CASE("framing errors: silence, truncation, short preamble") {
  DecoderConfig config;

  CHECK(decode_stream({}, config) ==
        DecodeOutcome::framing_error(DecodeOutcome::Reason::NoPreamble));
  CHECK(decode_stream({{0.0, false}, {5000.0, false}}, config) ==
        DecodeOutcome::framing_error(DecodeOutcome::Reason::NoPreamble));

  // Ends mid-payload.
  WakeFrame frame{0x5A, 0x01, 2000.0};
  Waveform waveform = sample_timeline(encode_frame(frame, 1000.0, 14.0));
  waveform.resize(waveform.size() / 2);
  CHECK(decode_stream(waveform, config) ==
        DecodeOutcome::framing_error(DecodeOutcome::Reason::Truncated));

  // Preamble over before the MCU is listening.
  DecoderConfig slow = config;
  slow.wake_delay_us = 500.0;
  Waveform short_preamble = sample_timeline(encode_frame({0x5A, 0x01, 100.0}, 1000.0, 14.0));
  CHECK(decode_stream(short_preamble, slow) ==
        DecodeOutcome::framing_error(DecodeOutcome::Reason::NoPreamble));
}

TEST_CASE("waveform timestamps must strictly increase") {
  CHECK_THROWS_AS(decode_stream({{0.0, true}, {0.0, true}}, DecoderConfig{}),
                  std::invalid_argument);
}

TEST_CASE("round trip holds over random frames, rates and preambles") {
  std::mt19937 rng(868001);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_real_distribution<double> preamble_extra(0.0, 5000.0);
  const double rates[] = {250.0, 1000.0, 10000.0};

  for (int i = 0; i < 1200; ++i) {
    const double rate = rates[static_cast<std::size_t>(i % 3)];
    const double bit_us = 1e6 / rate;
    WakeFrame frame;
    frame.network_id = static_cast<std::uint8_t>(byte(rng));
    frame.target_address = static_cast<std::uint8_t>(byte(rng));
    frame.preamble_us = kDefaultWakeDelayUs + bit_us + preamble_extra(rng);

    const Waveform waveform = sample_timeline(encode_frame(frame, rate, 14.0));
    const DecodeOutcome outcome = decode_stream(waveform, config_for(frame, rate));
    CAPTURE(i);
    CAPTURE(rate);
    REQUIRE(outcome == DecodeOutcome::wake(frame.target_address));

    DecoderConfig wrong = config_for(frame, rate);
    wrong.network_id = static_cast<std::uint8_t>(frame.network_id ^ (1 + byte(rng) % 255));
    REQUIRE(decode_stream(waveform, wrong) ==
            DecodeOutcome::no_match(DecodeOutcome::Reason::WrongNetwork));
  }
}

TEST_CASE("address matching is exhaustive and exclusive over all 256 addresses") {
  DecoderConfig config;
  config.network_id = 0x42;
  config.addresses = {0x10, 0x80, 0xFE};

  int wakes = 0;
  for (int addr = 0; addr < 256; ++addr) {
    WakeFrame frame{0x42, static_cast<std::uint8_t>(addr), 2000.0};
    const Waveform waveform = sample_timeline(encode_frame(frame, 1000.0, 14.0));
    const DecodeOutcome outcome = decode_stream(waveform, config);
    if (config.addresses.count(static_cast<std::uint8_t>(addr)) > 0) {
      REQUIRE(outcome == DecodeOutcome::wake(static_cast<std::uint8_t>(addr)));
      ++wakes;
    } else {
      REQUIRE(outcome == DecodeOutcome::no_match(DecodeOutcome::Reason::WrongAddress));
    }
  }
  CHECK(wakes == 3);
}

TEST_CASE("decoding is a pure function of waveform and config") {
  WakeFrame frame{0x77, 0x33, 2000.0};
  const Waveform waveform = sample_timeline(encode_frame(frame, 1000.0, 14.0));
  const DecoderConfig config = config_for(frame);
  CHECK(decode_stream(waveform, config) == decode_stream(waveform, config));
}

TEST_CASE("a preamble shorter than the wake delay never wakes") {
  std::mt19937 rng(868002);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_real_distribution<double> fraction(0.05, 0.95);

  for (int i = 0; i < 300; ++i) {
    DecoderConfig config;
    config.network_id = static_cast<std::uint8_t>(byte(rng));
    config.addresses = {static_cast<std::uint8_t>(byte(rng))};
    config.wake_delay_us = 200.0 + fraction(rng) * 2000.0;

    WakeFrame frame{config.network_id, *config.addresses.begin(),
                    config.wake_delay_us * fraction(rng)};
    // Edge-accurate sampling: the margin between preamble end and wake
    // delay can be smaller than any uniform sampling step.
    const Waveform waveform = ideal_waveform(encode_frame(frame, 1000.0, 14.0));
    const DecodeOutcome outcome = decode_stream(waveform, config);
    CAPTURE(config.wake_delay_us);
    CAPTURE(frame.preamble_us);
    REQUIRE_FALSE(outcome.is_wake());
  }
}

TEST_CASE("decoder config validation") {
  DecoderConfig config;
  config.addresses.clear();
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.addresses = {0x01};
  config.bit_rate_bps = 0.0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.bit_rate_bps = 1000.0;
  config.wake_delay_us = -1.0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("timeline CSV has one row per structural segment") {
  OokTimeline timeline = encode_frame({0x5A, 0x01, 10.0}, 1000.0, 14.0);
  std::ostringstream out;
  write_timeline_csv(timeline, out);

  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "t_start_us,duration_us,carrier");
  std::getline(in, line);
  CHECK(line == "0,10,1");  // the 10 us preamble leads
  int rows = 1;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 18);
}

TEST_CASE("waveform CSV round-trips") {
  WakeFrame frame{0x12, 0x34, 2000.0};
  const Waveform waveform = sample_timeline(encode_frame(frame, 1000.0, 14.0), 4);

  std::stringstream buf;
  write_waveform_csv(waveform, buf);
  const Waveform reread = read_waveform_csv(buf);
  REQUIRE(reread.size() == waveform.size());
  CHECK(reread == waveform);
  CHECK(decode_stream(reread, config_for(frame)) == DecodeOutcome::wake(0x34));
}

TEST_CASE("waveform CSV errors carry line numbers") {
  std::istringstream bad("time_us,level\n0,1\nnot-a-row\n");
  CHECK_THROWS_WITH_AS(read_waveform_csv(bad), doctest::Contains("line 3"), ParseError);
  std::istringstream bad_level("time_us,level\n0,7\n");
  CHECK_THROWS_AS(read_waveform_csv(bad_level), ParseError);
}

TEST_CASE("frame airtime covers preamble, delimiter and payload") {
  WakeFrame frame{0x01, 0x02, 2000.0};
  CHECK(frame_airtime_us(frame, 1000.0) == doctest::Approx(2000.0 + 17 * 1000.0));
  CHECK_THROWS_AS(frame_airtime_us(frame, 0.0), std::invalid_argument);
}
