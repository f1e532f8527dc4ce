// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Artifacts (Fig.-style trace CSV, demo reports) land under
// ./acceptance_out.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ewake/energy.hpp"
#include "ewake/loaders.hpp"
#include "ewake/netsim.hpp"
#include "ewake/presets.hpp"
#include "ewake/units.hpp"

using namespace ewake;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& title, const std::function<bool()>& body) {
  bool ok = false;
  std::string detail;
  try {
    ok = body();
  } catch (const std::exception& err) {
    detail = err.what();
  }
  std::printf("%s  criterion %d: %s\n", ok ? "PASS" : "FAIL", number, title.c_str());
  if (!ok) {
    ++g_failures;
    if (!detail.empty()) std::fprintf(stderr, "  criterion %d threw: %s\n", number, detail.c_str());
  }
}

bool expect(bool condition, const char* what) {
  if (!condition) std::fprintf(stderr, "  check failed: %s\n", what);
  return condition;
}

bool near(double value, double target, double tolerance, const char* what) {
  if (std::abs(value - target) <= tolerance) return true;
  std::fprintf(stderr, "  %s: got %.6f, want %.6f +/- %.3f\n", what, value, target, tolerance);
  return false;
}

// --- criterion 2 support: random strictly monotone calibrations ------------

DetectorCurve random_direct_curve(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> p0_range(-80.0, -40.0);
  std::uniform_real_distribution<double> step_db(4.0, 12.0);
  std::uniform_real_distribution<double> slope(0.05, 0.3);

  const double p0 = p0_range(rng);
  std::vector<std::pair<double, double>> anchors{{p0, micro(300.0)}};
  double p = p0;
  double log_v = std::log10(micro(300.0));
  for (int i = 0; i < 2; ++i) {
    const double dp = step_db(rng);
    p += dp;
    log_v += slope(rng) * dp;
    anchors.push_back({p, std::pow(10.0, log_v)});
  }
  p = p0;
  log_v = std::log10(micro(300.0));
  for (int i = 0; i < 2; ++i) {
    const double dp = step_db(rng);
    p -= dp;
    log_v -= slope(rng) * dp;
    anchors.insert(anchors.begin(), {p, std::pow(10.0, log_v)});
  }

  DetectorCurve curve;
  curve.anchors = std::move(anchors);
  curve.extrapolation_slope = slope(rng);
  curve.load_class = LoadClass::DirectLoad;
  curve.validate();
  return curve;
}

DetectorCurve shifted_high_impedance(const DetectorCurve& direct, double shift_db) {
  DetectorCurve curve = direct;
  for (auto& [p, v] : curve.anchors) p -= shift_db;
  curve.load_class = LoadClass::HighImpedance;
  return curve;
}

}  // namespace

int main() {
  const std::filesystem::path out_dir = "acceptance_out";
  std::filesystem::create_directories(out_dir);
  const WakeFrame probe_frame{0x5A, 0x01, 2000.0};

  criterion(1, "quiescent currents 580 / 450 / 600 nA, exact", [&] {
    bool ok = true;
    ok &= expect(quiescent_current_na(bundled_chain("ewake-default"), true) == 580.0,
                 "LPV811 + TLV3691 + matcher sleep == 580 nA");
    ok &= expect(quiescent_current_na(bundled_chain("ewake-lpv801"), true) == 450.0,
                 "LPV801 + TLV3691 + matcher sleep == 450 nA");
    ok &= expect(quiescent_current_na(bundled_chain("direct-lpv7215"), true) == 600.0,
                 "LPV7215 + matcher sleep == 600 nA");
    return ok;
  });

  criterion(2, "sensitivities -32 / -55 / -70 dBm and calibration-free ordering", [&] {
    bool ok = true;
    std::vector<ReceiverChain> chains = {bundled_chain("ewake-default"),
                                         bundled_chain("direct-lpv7215"),
                                         bundled_chain("direct-tlv3691")};
    const auto rows = sim::sensitivity_sweep(chains, probe_frame);
    ok &= expect(rows[0].sensitivity_dbm.has_value() && rows[1].sensitivity_dbm.has_value() &&
                     rows[2].sensitivity_dbm.has_value(),
                 "all bundled chains detectable");
    if (!ok) return false;
    ok &= near(*rows[0].sensitivity_dbm, -70.0, 0.1, "ewake-default sensitivity");
    ok &= near(*rows[1].sensitivity_dbm, -55.0, 0.1, "direct-lpv7215 sensitivity");
    ok &= near(*rows[2].sensitivity_dbm, -32.0, 0.1, "direct-tlv3691 sensitivity");

    // Ordering must hold for any strictly monotone calibration pair where
    // the unloaded detector outruns the loaded one.
    std::mt19937_64 rng(0x868);
    std::uniform_real_distribution<double> shift(3.0, 20.0);
    for (int trial = 0; trial < 100 && ok; ++trial) {
      const DetectorCurve direct = random_direct_curve(rng);
      const DetectorCurve high_z = shifted_high_impedance(direct, shift(rng));

      ReceiverChain ewake = bundled_chain("ewake-default");
      ewake.detector = high_z;
      ReceiverChain lpv = bundled_chain("direct-lpv7215");
      lpv.detector = direct;
      ReceiverChain tlv = bundled_chain("direct-tlv3691");
      tlv.detector = direct;

      const auto s_e = sensitivity_dbm(ewake, probe_frame);
      const auto s_l = sensitivity_dbm(lpv, probe_frame);
      const auto s_t = sensitivity_dbm(tlv, probe_frame);
      ok &= expect(s_e && s_l && s_t, "random calibration stays detectable");
      if (!ok) {
        std::fprintf(stderr, "  trial %d\n", trial);
        break;
      }
      ok &= expect(*s_e < *s_l && *s_l < *s_t, "ordering ewake < lpv7215 < tlv3691");
      if (!ok) {
        std::fprintf(stderr, "  trial %d: %.2f %.2f %.2f\n", trial, *s_e, *s_l, *s_t);
        break;
      }
    }
    return ok;
  });

  criterion(3, "codec round-trip, 1000+ random frames and 256-address exclusivity", [&] {
    bool ok = true;
    std::mt19937 rng(0x5A01);
    std::uniform_int_distribution<int> byte(0, 255);
    const double rates[] = {250.0, 1000.0, 10000.0};
    for (int i = 0; i < 1000 && ok; ++i) {
      const double rate = rates[static_cast<std::size_t>(i % 3)];
      WakeFrame frame;
      frame.network_id = static_cast<std::uint8_t>(byte(rng));
      frame.target_address = static_cast<std::uint8_t>(byte(rng));
      frame.preamble_us = kDefaultWakeDelayUs + 2e6 / rate;

      DecoderConfig config;
      config.network_id = frame.network_id;
      config.addresses = {frame.target_address};
      config.bit_rate_bps = rate;

      const Waveform waveform = sample_timeline(encode_frame(frame, rate, 14.0));
      ok &= expect(decode_stream(waveform, config) == DecodeOutcome::wake(frame.target_address),
                   "matching config wakes");

      DecoderConfig wrong = config;
      wrong.network_id = static_cast<std::uint8_t>(frame.network_id ^ (1 + byte(rng) % 255));
      ok &= expect(decode_stream(waveform, wrong) ==
                       DecodeOutcome::no_match(DecodeOutcome::Reason::WrongNetwork),
                   "mismatched network id rejects");
    }

    DecoderConfig config;
    config.network_id = 0x42;
    config.addresses = {0x10, 0x80, 0xFE};
    int wakes = 0;
    for (int addr = 0; addr < 256 && ok; ++addr) {
      WakeFrame frame{0x42, static_cast<std::uint8_t>(addr), 2000.0};
      const Waveform waveform = sample_timeline(encode_frame(frame, 1000.0, 14.0));
      if (decode_stream(waveform, config).is_wake()) ++wakes;
    }
    ok &= expect(wakes == 3, "exactly the configured addresses wake");
    return ok;
  });

  criterion(4, "matcher MCU active current 32 uA/MHz x 2 MHz = 64 uA, exact", [&] {
    return expect(PowerProfile::with_mcu_clock(2.0).mcu_active_ua == 64.0, "64 uA at 2 MHz") &&
           expect(kMcuCurrentPerMhzUa * 2.0 == 64.0, "coefficient arithmetic");
  });

  criterion(5, "comparator trace mirrors the bit pattern at -60 dBm (trace exported)", [&] {
    ReceiverChain chain = bundled_chain("ewake-default");
    const OokTimeline timeline = encode_frame(probe_frame, 1000.0, -60.0);
    const ChainResponse response = chain_response_injected(timeline, chain, -60.0);

    std::ofstream csv(out_dir / "fig3_trace.csv");
    write_trace_csv(response.trace, csv);

    auto level_at = [&](double t_us) {
      bool level = false;
      for (const Sample& s : response.binary)
        if (s.time_us <= t_us) level = s.level;
      return level;
    };

    bool ok = true;
    const auto bits = frame_bits(probe_frame);
    const double bit_us = 1e6 / 1000.0;
    for (int k = 0; k < kFrameBits; ++k) {
      const double t_mid = probe_frame.preamble_us + bit_us + (k + 0.5) * bit_us;
      if (level_at(t_mid) != bits[static_cast<std::size_t>(k)]) {
        std::fprintf(stderr, "  symbol %d differs from the transmitted bit\n", k);
        ok = false;
      }
    }
    ok &= expect(level_at(probe_frame.preamble_us / 2.0), "comparator high during preamble");
    ok &= expect(!level_at(probe_frame.preamble_us + bit_us / 2.0),
                 "comparator low during delimiter");
    ok &= expect(decode_stream(response.binary, chain.decoder) == DecodeOutcome::wake(0x01),
                 "frame decodable at -60 dBm");
    return ok;
  });

  criterion(6, "demo report byte-identical; 436 m wake boundary holds", [&] {
    bool ok = true;

    const sim::SimReport a = sim::run(demo_scenario());
    const sim::SimReport b = sim::run(demo_scenario());
    const std::string json_a = sim::summary_json(a);
    ok &= expect(json_a == sim::summary_json(b), "summary JSON identical across runs");
    for (std::size_t n = 0; n < a.nodes.size() && ok; ++n) {
      std::ostringstream csv_a, csv_b;
      sim::write_node_csv(a.nodes[n], csv_a);
      sim::write_node_csv(b.nodes[n], csv_b);
      ok &= expect(csv_a.str() == csv_b.str(), "node CSV identical across runs");
    }
    ok &= expect(a.total_true_wakes == 1 && a.total_missed_wakes == 0, "demo wakes one node");
    std::ofstream(out_dir / "demo_summary.json") << json_a;

    // d_max = 10^((14 - 31.2 + 70)/20) ~= 436 m with the documented link
    // defaults; 400 m wakes, 500 m misses.
    const double d_max = std::pow(10.0, (14.0 - 31.2 + 70.0) / 20.0);
    ok &= near(d_max, 436.5, 0.6, "analytic range bound");

    sim::Scenario range;
    range.link = LinkModel{1.0, 31.2, 2.0, 0.0};
    range.tx_power_dbm = 14.0;
    range.duration_s = 1.0;
    for (const auto& [id, dist] : {std::pair{"near", 400.0}, std::pair{"far", 500.0}}) {
      sim::NodeConfig node;
      node.node_id = id;
      node.distance_m = dist;
      node.chain = bundled_chain("ewake-default");
      range.nodes.push_back(std::move(node));
    }
    range.schedule.push_back({0.1, probe_frame});
    const sim::SimReport report = sim::run(range);
    ok &= expect(report.nodes[0].true_wakes == 1, "node at 400 m wakes");
    ok &= expect(report.nodes[1].true_wakes == 0 && report.nodes[1].missed_wakes == 1,
                 "node at 500 m misses");
    return ok;
  });

  criterion(7, "property suites: monotone detector, peak at f0, sensitivity, additivity", [&] {
    bool ok = true;
    std::mt19937_64 rng(0x7777);

    // Detector monotonicity across both calibrations.
    std::uniform_real_distribution<double> power(-120.0, 0.0);
    for (const DetectorCurve& curve :
         {direct_load_calibration(), high_impedance_calibration()}) {
      for (int i = 0; i < 300 && ok; ++i) {
        double p1 = power(rng);
        double p2 = power(rng);
        if (p1 == p2) continue;
        if (p1 > p2) std::swap(p1, p2);
        ok &= expect(detect_envelope_v(p1, curve) < detect_envelope_v(p2, curve),
                     "detector strictly monotone");
      }
    }

    // Matching gain peaks at the resonance within one grid step.
    std::uniform_real_distribution<double> l_range(5.0, 30.0);
    std::uniform_real_distribution<double> q_range(2.0, 50.0);
    for (int i = 0; i < 30 && ok; ++i) {
      MatchingSpec spec;
      spec.inductance_nh = l_range(rng);
      spec.capacitance_pf = 3.3;
      spec.q = q_range(rng);
      const double f0 = resonant_frequency_hz(spec.inductance_nh, spec.capacitance_pf);
      const int points = 501;
      const double lo = 0.8 * f0;
      const double step = (1.2 * f0 - lo) / (points - 1);
      double best_f = lo;
      double best_g = matching_gain_db(lo, spec);
      for (int k = 1; k < points; ++k) {
        const double f = lo + k * step;
        const double gain = matching_gain_db(f, spec);
        if (gain > best_g) {
          best_g = gain;
          best_f = f;
        }
      }
      ok &= expect(std::abs(best_f - f0) <= step, "argmax of matching gain within a grid step");
      ok &= expect(std::abs(matching_gain_db(f0, spec)) < 1e-9, "unity gain at resonance");
    }

    // Sensitivity improves (or holds) with gain, degrades with threshold.
    double prev = 1.0;
    for (double gain : {25.0, 50.0, 100.0, 200.0}) {
      ReceiverChain chain = bundled_chain("ewake-default");
      chain.amplifier->gain = gain;
      const auto s = sensitivity_dbm(chain, probe_frame);
      ok &= expect(s.has_value(), "gain variant detectable");
      if (!ok) break;
      if (prev <= 0.0) ok &= expect(*s <= prev, "more gain never raises sensitivity");
      prev = *s;
    }
    prev = -1000.0;
    for (double v_ref_mv : {10.0, 27.0, 54.0, 108.0}) {
      ReceiverChain chain = bundled_chain("ewake-default");
      chain.comparator.v_ref_v = milli(v_ref_mv);
      const auto s = sensitivity_dbm(chain, probe_frame);
      ok &= expect(s.has_value(), "v_ref variant detectable");
      if (!ok) break;
      ok &= expect(*s >= prev, "higher v_ref never improves sensitivity");
      prev = *s;
    }

    // Ledger additivity under concatenation.
    std::uniform_real_distribution<double> current(0.0, 50.0);
    for (int i = 0; i < 50 && ok; ++i) {
      EnergyLedger a, b;
      for (int k = 0; k < 10; ++k) {
        a.add("a", current(rng), 1.0);
        b.add("b", current(rng), 0.5);
      }
      EnergyLedger merged = a;
      merged.merge(b);
      ok &= expect(merged.total_charge_uc() == a.total_charge_uc() + b.total_charge_uc(),
                   "merged ledger charge is the exact sum");
    }
    return ok;
  });

  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", g_failures);
  return 1;
}
