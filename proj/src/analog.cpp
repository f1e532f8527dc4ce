#include "ewake/analog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ewake/units.hpp"

namespace ewake {

namespace {
constexpr double kSpeedOfLightMps = 299'792'458.0;
}

void LinkModel::validate() const {
  if (d0_m <= 0.0) throw std::invalid_argument("link reference distance must be positive");
  if (pl0_db < 0.0) throw std::invalid_argument("reference path loss must be non-negative");
  if (exponent < 0.0) throw std::invalid_argument("path loss exponent must be non-negative");
  if (extra_attenuation_db < 0.0)
    throw std::invalid_argument("extra attenuation must be non-negative");
}

double received_power_dbm(double tx_power_dbm, const LinkModel& link, double distance_m) {
  link.validate();
  if (distance_m < link.d0_m)
    throw std::invalid_argument("distance below the link reference distance");
  return tx_power_dbm - link.pl0_db - 10.0 * link.exponent * std::log10(distance_m / link.d0_m) -
         link.extra_attenuation_db;
}

double friis_reference_loss_db(double freq_hz, double d0_m) {
  if (freq_hz <= 0.0 || d0_m <= 0.0)
    throw std::invalid_argument("frequency and distance must be positive");
  return 20.0 * std::log10(4.0 * std::numbers::pi * d0_m * freq_hz / kSpeedOfLightMps);
}

MatchingSpec MatchingSpec::tuned_at(double f0_hz, double inductance_nh, double q) {
  if (f0_hz <= 0.0) throw std::invalid_argument("resonant frequency must be positive");
  const double l_h = nano(inductance_nh);
  const double omega = 2.0 * std::numbers::pi * f0_hz;
  const double c_f = 1.0 / (omega * omega * l_h);
  MatchingSpec spec;
  spec.inductance_nh = inductance_nh;
  spec.capacitance_pf = c_f / 1e-12;
  spec.q = q;
  spec.band_center_hz = f0_hz;
  return spec;
}

void MatchingSpec::validate() const {
  if (inductance_nh <= 0.0 || capacitance_pf <= 0.0)
    throw std::invalid_argument("matching L and C must be positive");
  if (q <= 0.0) throw std::invalid_argument("matching Q must be positive");
  if (band_center_hz <= 0.0) throw std::invalid_argument("band center must be positive");
}

double resonant_frequency_hz(double inductance_nh, double capacitance_pf) {
  if (inductance_nh <= 0.0 || capacitance_pf <= 0.0)
    throw std::invalid_argument("matching L and C must be positive");
  const double lc = nano(inductance_nh) * pico(capacitance_pf);
  return 1.0 / (2.0 * std::numbers::pi * std::sqrt(lc));
}

double matching_gain_db(double freq_hz, const MatchingSpec& spec) {
  spec.validate();
  if (freq_hz <= 0.0) throw std::invalid_argument("frequency must be positive");
  const double f0 = resonant_frequency_hz(spec.inductance_nh, spec.capacitance_pf);
  const double detune = freq_hz / f0 - f0 / freq_hz;
  return -10.0 * std::log10(1.0 + spec.q * spec.q * detune * detune);
}

void DetectorCurve::validate() const {
  if (anchors.empty()) throw std::invalid_argument("detector curve needs at least one anchor");
  if (extrapolation_slope <= 0.0)
    throw std::invalid_argument("detector extrapolation slope must be positive");
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    if (anchors[i].second <= 0.0)
      throw std::invalid_argument("detector anchor voltages must be positive");
    if (i > 0 && (anchors[i].first <= anchors[i - 1].first ||
                  anchors[i].second <= anchors[i - 1].second))
      throw std::invalid_argument("detector anchors must increase in both power and voltage");
  }
}

DetectorCurve direct_load_calibration() {
  DetectorCurve curve;
  curve.anchors = {{-55.0, micro(300.0)}, {-32.0, milli(3.0)}};
  curve.extrapolation_slope = 0.1;
  curve.load_class = LoadClass::DirectLoad;
  return curve;
}

DetectorCurve high_impedance_calibration() {
  DetectorCurve curve;
  curve.anchors = {{-70.0, micro(300.0)}};
  curve.extrapolation_slope = 0.1;
  curve.load_class = LoadClass::HighImpedance;
  return curve;
}

double detect_envelope_v(double p_in_dbm, const DetectorCurve& curve) {
  curve.validate();
  const auto& a = curve.anchors;

  double log_v = 0.0;
  if (p_in_dbm <= a.front().first) {
    log_v = std::log10(a.front().second) + curve.extrapolation_slope * (p_in_dbm - a.front().first);
  } else if (p_in_dbm >= a.back().first) {
    log_v = std::log10(a.back().second) + curve.extrapolation_slope * (p_in_dbm - a.back().first);
  } else {
    std::size_t hi = 1;
    while (a[hi].first < p_in_dbm) ++hi;
    const auto& [p0, v0] = a[hi - 1];
    const auto& [p1, v1] = a[hi];
    const double t = (p_in_dbm - p0) / (p1 - p0);
    log_v = std::log10(v0) + t * (std::log10(v1) - std::log10(v0));
  }
  return std::pow(10.0, log_v);
}

void AmplifierStage::validate() const {
  if (spec.kind != ComponentKind::OpAmp)
    throw std::invalid_argument("amplifier stage needs an op-amp component");
  if (gain < 1.0) throw std::invalid_argument("amplifier gain must be at least 1");
  if (rail_v <= 0.0) throw std::invalid_argument("amplifier rail must be positive");
}

double amplify_v(double v_in, const AmplifierStage& stage) {
  if (v_in < 0.0) throw std::invalid_argument("amplifier input must be non-negative");
  return std::min(stage.gain * v_in, stage.rail_v);
}

double ComparatorStage::v_os_v() const {
  if (v_os_override_v) return *v_os_override_v;
  if (spec.v_os_v) return *spec.v_os_v;
  throw std::invalid_argument("comparator '" + spec.name +
                              "' has no catalog V_OS; set an explicit override");
}

void ComparatorStage::validate() const {
  if (spec.kind != ComponentKind::Comparator)
    throw std::invalid_argument("comparator stage needs a comparator component");
  if (v_ref_v < 0.0) throw std::invalid_argument("comparator reference must be non-negative");
  if (hysteresis_v < 0.0) throw std::invalid_argument("hysteresis must be non-negative");
  (void)v_os_v();
}

bool compare_level(double v_in, const ComparatorStage& stage, bool prev_high) {
  const double rise = stage.v_ref_v + stage.v_os_v();
  const double fall = rise - stage.hysteresis_v;
  return v_in > (prev_high ? fall : rise);
}

void ReceiverChain::validate() const {
  matching.validate();
  detector.validate();
  if (amplifier) {
    amplifier->validate();
    if (detector.load_class != LoadClass::HighImpedance)
      throw std::invalid_argument(
          "chain with an amplifier stage needs a high-impedance detector calibration");
  } else if (detector.load_class != LoadClass::DirectLoad) {
    throw std::invalid_argument(
        "chain feeding the comparator directly needs a direct-load detector calibration");
  }
  comparator.validate();
  decoder.validate();
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

ChainResponse chain_response_injected(const OokTimeline& timeline, const ReceiverChain& chain,
                                      double injected_dbm, const NoiseModel& noise) {
  chain.validate();
  if (timeline.segments.empty()) throw std::invalid_argument("timeline has no segments");
  for (const OokSegment& s : timeline.segments)
    if (s.duration_us <= 0.0) throw std::invalid_argument("timeline segment with zero duration");

  const double p_on = injected_dbm + matching_gain_db(chain.matching.band_center_hz, chain.matching);
  const double envelope_on = detect_envelope_v(p_on, chain.detector);

  std::mt19937_64 rng(splitmix64(noise.seed));
  std::normal_distribution<double> gauss(0.0, noise.sigma_v > 0.0 ? noise.sigma_v : 1.0);
  const bool noisy = noise.sigma_v > 0.0;

  ChainResponse response;
  response.trace.reserve(timeline.segments.size() * 2 + 1);

  bool state = false;
  auto emit = [&](double t_us, bool carrier) {
    double a = carrier ? envelope_on : 0.0;
    if (noisy) a = std::max(0.0, a + gauss(rng));
    const double b = chain.amplifier ? amplify_v(a, *chain.amplifier) : a;
    state = compare_level(b, chain.comparator, state);
    response.trace.push_back({t_us, a, b, state});
  };

  double t = 0.0;
  for (const OokSegment& seg : timeline.segments) {
    emit(t, seg.carrier);
    emit(t + seg.duration_us / 2.0, seg.carrier);
    t += seg.duration_us;
  }
  emit(t, timeline.segments.back().carrier);

  response.binary.reserve(response.trace.size());
  for (const TracePoint& p : response.trace)
    response.binary.push_back({p.time_us, p.comparator});
  return response;
}

ChainResponse chain_response(const OokTimeline& timeline, const ReceiverChain& chain,
                             const LinkModel& link, double distance_m, const NoiseModel& noise) {
  return chain_response_injected(
      timeline, chain, received_power_dbm(timeline.tx_power_dbm, link, distance_m), noise);
}

std::optional<double> sensitivity_dbm(const ReceiverChain& chain, const WakeFrame& frame,
                                      double bit_rate_bps) {
  chain.validate();
  auto wakes_at = [&](double p_dbm) {
    const OokTimeline timeline = encode_frame(frame, bit_rate_bps, p_dbm);
    const ChainResponse r = chain_response_injected(timeline, chain, p_dbm);
    return decode_stream(r.binary, chain.decoder).is_wake();
  };

  double lo = kSensitivitySearchFloorDbm;
  double hi = kSensitivitySearchCeilDbm;
  if (!wakes_at(hi)) return std::nullopt;
  if (wakes_at(lo)) return lo;
  while (hi - lo > kSensitivityResolutionDb) {
    const double mid = (lo + hi) / 2.0;
    (wakes_at(mid) ? hi : lo) = mid;
  }
  // Snap to the search resolution, like an attenuator with 0.1 dB steps.
  return std::round(hi / kSensitivityResolutionDb) * kSensitivityResolutionDb;
}

TuneResult sweep_tune(const std::vector<MatchingSpec>& candidates, double band_center_hz,
                      double probe_power_dbm, const DetectorCurve& detector, int grid_points,
                      double span_fraction) {
  if (candidates.empty()) throw std::invalid_argument("tuning sweep needs at least one candidate");
  if (band_center_hz <= 0.0) throw std::invalid_argument("band center must be positive");
  if (grid_points < 2) throw std::invalid_argument("probe grid needs at least two points");
  if (span_fraction <= 0.0) throw std::invalid_argument("probe span must be positive");
  detector.validate();

  const double f_lo = band_center_hz * (1.0 - span_fraction);
  const double f_hi = band_center_hz * (1.0 + span_fraction);

  TuneResult result;
  result.responses.reserve(candidates.size());
  for (const MatchingSpec& spec : candidates) {
    spec.validate();
    SweepResponse response;
    response.spec = spec;
    response.points.reserve(static_cast<std::size_t>(grid_points));
    for (int i = 0; i < grid_points; ++i) {
      const double f =
          f_lo + (f_hi - f_lo) * static_cast<double>(i) / static_cast<double>(grid_points - 1);
      response.points.push_back(
          {f, detect_envelope_v(probe_power_dbm + matching_gain_db(f, spec), detector)});
    }
    response.envelope_at_center_v =
        detect_envelope_v(probe_power_dbm + matching_gain_db(band_center_hz, spec), detector);
    result.responses.push_back(std::move(response));
  }

  result.best_index = 0;
  for (std::size_t i = 1; i < result.responses.size(); ++i) {
    if (result.responses[i].envelope_at_center_v >
        result.responses[result.best_index].envelope_at_center_v)
      result.best_index = i;
  }
  return result;
}

void write_trace_csv(const std::vector<TracePoint>& trace, std::ostream& out) {
  out << "time_us,testpoint_a_volts,testpoint_b_volts,comparator\n";
  for (const TracePoint& p : trace)
    out << format_double(p.time_us) << "," << format_double(p.testpoint_a_v) << ","
        << format_double(p.testpoint_b_v) << "," << (p.comparator ? 1 : 0) << "\n";
}

void write_sweep_csv(const SweepResponse& response, std::ostream& out) {
  out << "freq_hz,envelope_volts\n";
  for (const SweepPoint& p : response.points)
    out << format_double(p.freq_hz) << "," << format_double(p.envelope_v) << "\n";
}

}  // namespace ewake
