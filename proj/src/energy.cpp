#include "ewake/energy.hpp"

#include <stdexcept>

#include "ewake/units.hpp"

namespace ewake {

PowerProfile PowerProfile::with_mcu_clock(double clock_mhz) {
  if (clock_mhz <= 0.0) throw std::invalid_argument("MCU clock must be positive");
  PowerProfile profile;
  profile.mcu_clock_mhz = clock_mhz;
  profile.mcu_active_ua = kMcuCurrentPerMhzUa * clock_mhz;
  return profile;
}

void PowerProfile::validate() const {
  if (mcu_sleep_ua < 0.0 || mcu_active_ua < 0.0 || host_sleep_ua < 0.0 ||
      host_active_ua < 0.0 || radio_listen_ua < 0.0)
    throw std::invalid_argument("profile currents must be non-negative");
  if (mcu_clock_mhz <= 0.0) throw std::invalid_argument("MCU clock must be positive");
  if (host_active_duration_s < 0.0)
    throw std::invalid_argument("host active duration must be non-negative");
}

void EnergyLedger::add(std::string state, double current_ua, double duration_s) {
  if (current_ua < 0.0) throw std::invalid_argument("ledger current must be non-negative");
  if (duration_s < 0.0) throw std::invalid_argument("ledger duration must be non-negative");
  entries_.push_back({std::move(state), current_ua, duration_s});
  total_charge_uc_ += entries_.back().charge_uc();
  total_duration_s_ += duration_s;
}

void EnergyLedger::merge(const EnergyLedger& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  total_charge_uc_ += other.total_charge_uc_;
  total_duration_s_ += other.total_duration_s_;
}

double EnergyLedger::average_current_ua() const {
  return total_duration_s_ > 0.0 ? total_charge_uc_ / total_duration_s_ : 0.0;
}

void EnergyLedger::write_csv(std::ostream& out) const {
  out << "state,current_uA,duration_s,charge_uC\n";
  for (const LedgerEntry& e : entries_)
    out << e.state << "," << format_double(e.current_ua) << "," << format_double(e.duration_s)
        << "," << format_double(e.charge_uc()) << "\n";
  out << "total," << format_double(average_current_ua()) << ","
      << format_double(total_duration_s()) << "," << format_double(total_charge_uc()) << "\n";
}

double quiescent_current_na(const ReceiverChain& chain, bool include_matcher_sleep,
                            double matcher_sleep_na) {
  chain.validate();
  double total_na = chain.comparator.spec.drain_na;
  if (chain.amplifier) total_na += chain.amplifier->spec.drain_na;
  if (include_matcher_sleep) total_na += matcher_sleep_na;
  return total_na;
}

double decode_event_charge_uc(const PowerProfile& profile, double frame_duration_s) {
  profile.validate();
  if (frame_duration_s < 0.0) throw std::invalid_argument("frame duration must be non-negative");
  return (profile.mcu_active_ua - profile.mcu_sleep_ua) * frame_duration_s;
}

double average_current_ua(const PowerProfile& profile, const ReceiverChain& chain,
                          double wake_rate_hz, double false_wake_rate_hz,
                          double frame_duration_s, double host_active_duration_s) {
  profile.validate();
  if (wake_rate_hz < 0.0 || false_wake_rate_hz < 0.0)
    throw std::invalid_argument("event rates must be non-negative");
  if (frame_duration_s < 0.0 || host_active_duration_s < 0.0)
    throw std::invalid_argument("durations must be non-negative");
  const double busy_fraction = (wake_rate_hz + false_wake_rate_hz) * frame_duration_s +
                               wake_rate_hz * host_active_duration_s;
  if (busy_fraction >= 1.0)
    throw std::invalid_argument("event rates and durations exceed full occupancy");

  const double idle_ua =
      quiescent_current_na(chain, /*include_matcher_sleep=*/true) / 1000.0 + profile.host_sleep_ua;
  const double decode_ua =
      (wake_rate_hz + false_wake_rate_hz) * decode_event_charge_uc(profile, frame_duration_s);
  const double host_ua =
      wake_rate_hz * (profile.host_active_ua - profile.host_sleep_ua) * host_active_duration_s;
  return idle_ua + decode_ua + host_ua;
}

double duty_cycle_average_ua(double radio_listen_ua, double duty_fraction) {
  if (radio_listen_ua < 0.0) throw std::invalid_argument("listen current must be non-negative");
  if (duty_fraction < 0.0 || duty_fraction > 1.0)
    throw std::invalid_argument("duty fraction must be within [0, 1]");
  return radio_listen_ua * duty_fraction;
}

double lifetime_hours(double battery_capacity_mah, double average_current_ua) {
  if (battery_capacity_mah <= 0.0 || average_current_ua <= 0.0)
    throw std::invalid_argument("capacity and average current must be positive");
  return battery_capacity_mah * 1000.0 / average_current_ua;
}

}  // namespace ewake
