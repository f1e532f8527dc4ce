#include "ewake/presets.hpp"

#include <stdexcept>

namespace ewake {

std::vector<std::string> bundled_chain_names() {
  return {"ewake-default", "direct-lpv7215", "direct-tlv3691"};
}

bool is_bundled_chain(std::string_view name) {
  return name == "ewake-default" || name == "ewake-lpv801" || name == "direct-lpv7215" ||
         name == "direct-tlv3691";
}

ReceiverChain bundled_chain(std::string_view name, const Catalog& catalog) {
  ReceiverChain chain;
  chain.name = std::string(name);
  chain.matching = MatchingSpec::tuned_at(kDefaultCarrierHz);
  chain.decoder = DecoderConfig{};

  if (name == "ewake-default" || name == "ewake-lpv801") {
    chain.detector = high_impedance_calibration();
    chain.amplifier =
        AmplifierStage{find_component(catalog, name == "ewake-lpv801" ? "LPV801" : "LPV811"),
                       kDefaultAmplifierGain, kDefaultRailV};
    chain.comparator = ComparatorStage{find_component(catalog, "TLV3691"), kDefaultVrefV, 0.0,
                                       std::nullopt};
  } else if (name == "direct-lpv7215") {
    chain.detector = direct_load_calibration();
    chain.comparator = ComparatorStage{find_component(catalog, "LPV7215"), 0.0, 0.0, std::nullopt};
  } else if (name == "direct-tlv3691") {
    chain.detector = direct_load_calibration();
    chain.comparator = ComparatorStage{find_component(catalog, "TLV3691"), 0.0, 0.0, std::nullopt};
  } else {
    throw std::invalid_argument("unknown bundled chain '" + std::string(name) + "'");
  }
  chain.validate();
  return chain;
}

WakeFrame matching_frame(const ReceiverChain& chain) {
  WakeFrame frame;
  frame.network_id = chain.decoder.network_id;
  frame.target_address = *chain.decoder.addresses.begin();
  const double bit_us = 1e6 / chain.decoder.bit_rate_bps;
  frame.preamble_us = std::max(kDefaultPreambleUs, chain.decoder.wake_delay_us + 2.0 * bit_us);
  return frame;
}

std::vector<MatchingSpec> bundled_tune_candidates() {
  auto candidate = [](double l_nh, double c_pf) {
    MatchingSpec spec;
    spec.inductance_nh = l_nh;
    spec.capacitance_pf = c_pf;
    return spec;
  };
  return {candidate(10.0, 3.3), candidate(12.0, 3.3), candidate(10.0, 2.7)};
}

sim::Scenario demo_scenario(const Catalog& catalog) {
  sim::Scenario scenario;
  scenario.link = LinkModel{1.0, 31.2, 2.0, 0.0};
  scenario.tx_power_dbm = kDefaultTxPowerDbm;
  scenario.bit_rate_bps = kDefaultBitRateBps;
  scenario.duration_s = 1.0;

  const std::uint8_t addresses[] = {0x01, 0x02, 0x03};
  const char* ids[] = {"node-01", "node-02", "node-03"};
  for (int i = 0; i < 3; ++i) {
    sim::NodeConfig node;
    node.node_id = ids[i];
    node.distance_m = 10.0;
    node.chain = bundled_chain("ewake-default", catalog);
    node.chain.decoder.addresses = {addresses[i]};
    node.profile = PowerProfile{};
    scenario.nodes.push_back(std::move(node));
  }

  WakeFrame frame;
  frame.network_id = 0x5A;
  frame.target_address = 0x02;
  scenario.schedule.push_back({0.1, frame});
  return scenario;
}

}  // namespace ewake
