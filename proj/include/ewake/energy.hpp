#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "ewake/analog.hpp"

namespace ewake {

inline constexpr double kMatcherSleepNa = 20.0;       // PIC12LF1552T in deepest sleep
inline constexpr double kMcuCurrentPerMhzUa = 32.0;   // PIC run-mode coefficient
inline constexpr double kDefaultMcuClockMhz = 2.0;
inline constexpr double kHostSleepNa = 20.0;          // STM32L432 stop mode

// Per-state current figures for one node. Currents in uA throughout.
struct PowerProfile {
  double mcu_sleep_ua = kMatcherSleepNa / 1000.0;
  double mcu_clock_mhz = kDefaultMcuClockMhz;
  double mcu_active_ua = kMcuCurrentPerMhzUa * kDefaultMcuClockMhz;
  double host_sleep_ua = kHostSleepNa / 1000.0;
  double host_active_ua = 10'000.0;       // 10 mA while measuring/reporting
  double host_active_duration_s = 0.1;    // per true wake
  double radio_listen_ua = 10'000.0;      // duty-cycled listening baseline

  // Derives the matcher run current from the per-MHz coefficient.
  static PowerProfile with_mcu_clock(double clock_mhz);

  void validate() const;
};

struct LedgerEntry {
  std::string state;
  double current_ua = 0.0;
  double duration_s = 0.0;

  double charge_uc() const { return current_ua * duration_s; }
};

// Per-state roll-up. Average current weights each state by its duration.
// Totals accumulate as entries arrive, so merging two ledgers adds their
// charges exactly.
class EnergyLedger {
 public:
  void add(std::string state, double current_ua, double duration_s);
  void merge(const EnergyLedger& other);

  double total_charge_uc() const { return total_charge_uc_; }
  double total_duration_s() const { return total_duration_s_; }
  double average_current_ua() const;

  const std::vector<LedgerEntry>& entries() const { return entries_; }

  // state,current_uA,duration_s,charge_uC rows plus a summary row.
  void write_csv(std::ostream& out) const;

 private:
  std::vector<LedgerEntry> entries_;
  double total_charge_uc_ = 0.0;
  double total_duration_s_ = 0.0;
};

// Steady listening drain: op-amp (if fitted) + comparator + optionally the
// matcher MCU sleeping on the interrupt pin. Rectifier and matching network
// are passive.
double quiescent_current_na(const ReceiverChain& chain, bool include_matcher_sleep,
                            double matcher_sleep_na = kMatcherSleepNa);

// Extra charge for one address-matching decode while the frame is on air.
double decode_event_charge_uc(const PowerProfile& profile, double frame_duration_s);

// Long-run average: quiescent listening plus matcher decodes for every
// frame heard plus host activity for true wakes only. False wakes stop at
// the matcher.
double average_current_ua(const PowerProfile& profile, const ReceiverChain& chain,
                          double wake_rate_hz, double false_wake_rate_hz,
                          double frame_duration_s, double host_active_duration_s);

// Conventional periodic-listening baseline for comparison.
double duty_cycle_average_ua(double radio_listen_ua, double duty_fraction);

double lifetime_hours(double battery_capacity_mah, double average_current_ua);

}  // namespace ewake
