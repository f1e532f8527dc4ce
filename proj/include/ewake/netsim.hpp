#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ewake/analog.hpp"
#include "ewake/energy.hpp"

namespace ewake::sim {

struct NodeConfig {
  std::string node_id;
  double distance_m = 10.0;
  ReceiverChain chain;
  PowerProfile profile;
};

struct ScheduledFrame {
  double time_s = 0.0;
  WakeFrame frame;
};

struct Scenario {
  LinkModel link;
  double tx_power_dbm = kDefaultTxPowerDbm;
  double bit_rate_bps = kDefaultBitRateBps;
  std::vector<NodeConfig> nodes;
  std::vector<ScheduledFrame> schedule;  // strictly increasing, non-overlapping frames
  double duration_s = 1.0;
  double noise_sigma_v = 0.0;            // 0 disables envelope noise
  std::uint64_t noise_seed = 0;

  void validate() const;
};

struct FrameOutcome {
  int frame_index = 0;
  double time_s = 0.0;
  bool addressed = false;
  DecodeOutcome outcome;
};

struct NodeReport {
  std::string node_id;
  int true_wakes = 0;
  int missed_wakes = 0;    // addressed but not decoded
  int false_wakes = 0;     // woke without being addressed
  int matcher_decodes = 0; // frames that raised the wake interrupt at all
  std::vector<FrameOutcome> outcomes;
  EnergyLedger ledger;
};

struct SimReport {
  int frames_sent = 0;
  int total_true_wakes = 0;
  int total_missed_wakes = 0;
  int total_false_wakes = 0;
  double duration_s = 0.0;
  std::vector<NodeReport> nodes;
};

// Replays the schedule against every node: path loss, chain response,
// decode, classification, energy. Deterministic for a given scenario and
// seed; per-node noise streams derive from the seed and the node id.
SimReport run(const Scenario& scenario);

struct SensitivityRow {
  std::string chain;
  std::optional<double> sensitivity_dbm;  // nullopt = undetectable at 0 dBm
};

// analog sensitivity per chain, non-fatal on undetectable entries.
std::vector<SensitivityRow> sensitivity_sweep(const std::vector<ReceiverChain>& chains,
                                              const WakeFrame& frame,
                                              double bit_rate_bps = kDefaultBitRateBps);

void write_sensitivity_csv(const std::vector<SensitivityRow>& rows, std::ostream& out);

// Per-node outcome rows: frame_index,time_s,addressed,outcome.
void write_node_csv(const NodeReport& report, std::ostream& out);

// Structured roll-up of counts and energy, stable key order.
std::string summary_json(const SimReport& report);

}  // namespace ewake::sim
