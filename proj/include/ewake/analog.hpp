#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ewake/catalog.hpp"
#include "ewake/codec.hpp"

namespace ewake {

inline constexpr double kDefaultCarrierHz = 868e6;
inline constexpr double kDefaultMatchingQ = 10.0;
inline constexpr double kDefaultVrefV = 27e-3;
inline constexpr double kDefaultRailV = 3.3;
inline constexpr double kDefaultAmplifierGain = 100.0;

// Log-distance path loss with a fixed attenuator chain in series.
struct LinkModel {
  double d0_m = 1.0;                  // reference distance
  double pl0_db = 31.2;               // loss at d0 (free space at 868 MHz, 1 m)
  double exponent = 2.0;              // path loss exponent
  double extra_attenuation_db = 0.0;  // attenuators between tx and antenna

  void validate() const;
};

double received_power_dbm(double tx_power_dbm, const LinkModel& link, double distance_m);

// PL0 for free-space propagation: 20*log10(4*pi*d0*f/c).
double friis_reference_loss_db(double freq_hz, double d0_m = 1.0);

// Antenna L-C match. Off-resonance behaves as a single-pole band-pass with
// the given Q.
struct MatchingSpec {
  double inductance_nh = 10.0;
  double capacitance_pf = 3.3;
  double q = kDefaultMatchingQ;
  double band_center_hz = kDefaultCarrierHz;

  // Picks the capacitance that puts the resonance exactly on f0.
  static MatchingSpec tuned_at(double f0_hz, double inductance_nh = 10.0,
                               double q = kDefaultMatchingQ);

  void validate() const;
  bool operator==(const MatchingSpec&) const = default;
};

double resonant_frequency_hz(double inductance_nh, double capacitance_pf);
double matching_gain_db(double freq_hz, const MatchingSpec& spec);

// What the rectifier output sees. The high-impedance class models an
// amplifier input that barely loads the detector; feeding a comparator
// directly drains bias current from the held charge and yields less
// voltage at equal input power.
enum class LoadClass { DirectLoad, HighImpedance };

// Rectifier transfer curve, piecewise log-linear in (dBm, log10 volts).
// Outside the anchor range the curve continues at extrapolation_slope
// decades of voltage per dB.
struct DetectorCurve {
  std::vector<std::pair<double, double>> anchors;  // (input dBm, output V), strictly increasing
  double extrapolation_slope = 0.1;                // 0.1 = square-law (V proportional to mW)
  LoadClass load_class = LoadClass::DirectLoad;

  void validate() const;
};

// Calibrated against reported sensitivity/threshold pairs: 3 mV at -32 dBm
// and 300 uV at -55 dBm when driving a comparator directly, 300 uV at
// -70 dBm into a high-impedance amplifier input.
DetectorCurve direct_load_calibration();
DetectorCurve high_impedance_calibration();

double detect_envelope_v(double p_in_dbm, const DetectorCurve& curve);

struct AmplifierStage {
  ComponentSpec spec;                  // op-amp entry (drain, offset, bias)
  double gain = kDefaultAmplifierGain;
  double rail_v = kDefaultRailV;       // output saturates at the supply

  void validate() const;
};

double amplify_v(double v_in, const AmplifierStage& stage);

struct ComparatorStage {
  ComponentSpec spec;                    // comparator entry, houses V_OS and I_B
  double v_ref_v = 0.0;                  // external reference; 0 = offset-only threshold
  double hysteresis_v = 0.0;
  std::optional<double> v_os_override_v; // required when the catalog entry lacks V_OS

  double v_os_v() const;
  void validate() const;
};

// Threshold v_ref + V_OS, strict inequality, ties resolve low. With
// hysteresis the trip point for falling is lowered by hysteresis_v.
bool compare_level(double v_in, const ComparatorStage& stage, bool prev_high);

struct ReceiverChain {
  std::string name;
  MatchingSpec matching;
  DetectorCurve detector;
  std::optional<AmplifierStage> amplifier;
  ComparatorStage comparator;
  DecoderConfig decoder;

  void validate() const;
};

// Optional additive zero-mean Gaussian noise on the envelope, for
// false-wake studies. sigma_v = 0 disables it.
struct NoiseModel {
  double sigma_v = 0.0;
  std::uint64_t seed = 0;
};

struct TracePoint {
  double time_us = 0.0;
  double testpoint_a_v = 0.0;  // rectifier output
  double testpoint_b_v = 0.0;  // amplifier output (equals A without a stage)
  bool comparator = false;
};

struct ChainResponse {
  std::vector<TracePoint> trace;
  Waveform binary;  // comparator output, sampled at segment boundaries and mid-bits
};

// Receive-path evaluation of a timeline at a given injected power (as set
// with bench attenuators) or through a link at some distance. Envelope
// transitions are instantaneous; carrier-off segments sit at 0 V.
ChainResponse chain_response_injected(const OokTimeline& timeline, const ReceiverChain& chain,
                                      double injected_dbm, const NoiseModel& noise = {});
ChainResponse chain_response(const OokTimeline& timeline, const ReceiverChain& chain,
                             const LinkModel& link, double distance_m,
                             const NoiseModel& noise = {});

// Minimum injected power that still decodes to Wake, by bisection over
// [-120, 0] dBm at 0.1 dB resolution. nullopt when 0 dBm cannot wake the
// chain.
std::optional<double> sensitivity_dbm(const ReceiverChain& chain, const WakeFrame& frame,
                                      double bit_rate_bps = kDefaultBitRateBps);

inline constexpr double kSensitivitySearchFloorDbm = -120.0;
inline constexpr double kSensitivitySearchCeilDbm = 0.0;
inline constexpr double kSensitivityResolutionDb = 0.1;

// Emulated SDR tuning sweep: probe each candidate across a frequency grid
// around the band and keep the one with the strongest envelope at the band
// center. Ties keep the earlier candidate.
struct SweepPoint {
  double freq_hz = 0.0;
  double envelope_v = 0.0;
};

struct SweepResponse {
  MatchingSpec spec;
  double envelope_at_center_v = 0.0;
  std::vector<SweepPoint> points;
};

struct TuneResult {
  std::size_t best_index = 0;
  std::vector<SweepResponse> responses;

  const MatchingSpec& best() const { return responses[best_index].spec; }
};

TuneResult sweep_tune(const std::vector<MatchingSpec>& candidates, double band_center_hz,
                      double probe_power_dbm, const DetectorCurve& detector,
                      int grid_points = 101, double span_fraction = 0.2);

// CSV exports: traces as time_us,testpoint_a_volts,testpoint_b_volts,
// comparator; sweep tables as freq_hz,envelope_volts.
void write_trace_csv(const std::vector<TracePoint>& trace, std::ostream& out);
void write_sweep_csv(const SweepResponse& response, std::ostream& out);

}  // namespace ewake
