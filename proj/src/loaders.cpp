#include "ewake/loaders.hpp"

#include <cctype>
#include <filesystem>
#include <set>

#include "ewake/presets.hpp"
#include "ewake/units.hpp"

namespace ewake {

namespace {

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view item = text.substr(pos, comma == std::string_view::npos ? comma : comma - pos);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front())))
      item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back())))
      item.remove_suffix(1);
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::set<std::uint8_t> parse_address_list(const ConfigSection& sec, const ConfigEntry& entry) {
  std::set<std::uint8_t> out;
  for (const std::string& item : split_list(entry.value)) {
    try {
      out.insert(parse_u8(item));
    } catch (const UnitError& err) {
      throw ParseError(std::string(err.what()) + " in field '" + entry.key + "' of section [" +
                           sec.name + "]",
                       entry.line);
    }
  }
  if (out.empty()) throw ParseError("empty address list in section [" + sec.name + "]", entry.line);
  return out;
}

std::uint8_t parse_id(const ConfigSection& sec, std::string_view key) {
  const ConfigEntry* entry = sec.find(key);
  if (!entry)
    throw ParseError("section [" + sec.name + "] is missing required key '" + std::string(key) + "'",
                     sec.line);
  try {
    return parse_u8(entry->value);
  } catch (const UnitError& err) {
    throw ParseError(std::string(err.what()) + " in field '" + std::string(key) + "'", entry->line);
  }
}

void apply_decoder_keys(const ConfigSection& sec, DecoderConfig& decoder) {
  if (sec.has("network")) decoder.network_id = parse_id(sec, "network");
  if (const ConfigEntry* addrs = sec.find("addresses"))
    decoder.addresses = parse_address_list(sec, *addrs);
  decoder.bit_rate_bps = get_quantity_or(sec, "bit_rate", Dim::BitRateBps, decoder.bit_rate_bps);
  decoder.wake_delay_us = get_quantity_or(sec, "wake_delay", Dim::TimeUs, decoder.wake_delay_us);
}

DetectorCurve detector_from_section(const ConfigSection& sec, LoadClass load_class) {
  DetectorCurve curve;
  curve.load_class = load_class;
  curve.extrapolation_slope = get_quantity_or(sec, "slope", Dim::Scalar, 0.1);
  const ConfigEntry* anchors = sec.find("anchors");
  if (!anchors)
    throw ParseError("[detector] section needs an 'anchors' list", sec.line);
  for (const std::string& pair : split_list(anchors->value)) {
    // Each anchor reads "<power> dBm <voltage>", e.g. "-55 dBm 0.3 mV".
    std::size_t split = pair.find("dBm");
    if (split == std::string::npos)
      throw ParseError("anchor '" + pair + "' is missing the dBm power part", anchors->line);
    try {
      const double p = parse_quantity(pair.substr(0, split + 3), Dim::PowerDbm);
      const double v = parse_quantity(pair.substr(split + 3), Dim::VoltageV);
      curve.anchors.push_back({p, v});
    } catch (const UnitError& err) {
      throw ParseError(std::string(err.what()) + " in field 'anchors'", anchors->line);
    }
  }
  return curve;
}

}  // namespace

ReceiverChain chain_from_config(const ConfigDoc& doc, const Catalog& catalog) {
  const ConfigSection* main = doc.find("chain");
  if (!main) throw ParseError("chain file needs a [chain] section", 1);

  ReceiverChain chain;
  chain.name = main->has("name") ? main->get("name") : "custom";

  if (main->has("amplifier")) {
    AmplifierStage stage;
    stage.spec = find_component(catalog, main->get("amplifier"));
    stage.gain = get_quantity_or(*main, "gain", Dim::Scalar, kDefaultAmplifierGain);
    stage.rail_v = get_quantity_or(*main, "rail", Dim::VoltageV, kDefaultRailV);
    chain.amplifier = std::move(stage);
  }

  chain.comparator.spec = find_component(catalog, main->get("comparator"));
  chain.comparator.v_ref_v = get_quantity_or(*main, "v_ref", Dim::VoltageV, 0.0);
  chain.comparator.hysteresis_v = get_quantity_or(*main, "hysteresis", Dim::VoltageV, 0.0);
  chain.comparator.v_os_override_v = get_quantity_opt(*main, "v_os", Dim::VoltageV);

  const LoadClass load_class =
      chain.amplifier ? LoadClass::HighImpedance : LoadClass::DirectLoad;
  if (const ConfigSection* det = doc.find("detector")) {
    chain.detector = detector_from_section(*det, load_class);
  } else {
    chain.detector = chain.amplifier ? high_impedance_calibration() : direct_load_calibration();
  }

  if (const ConfigSection* match = doc.find("matching")) {
    const double band = get_quantity_or(*match, "band", Dim::FrequencyHz, kDefaultCarrierHz);
    const double q = get_quantity_or(*match, "q", Dim::Scalar, kDefaultMatchingQ);
    if (match->has("l") && match->has("c")) {
      chain.matching.inductance_nh = get_quantity(*match, "l", Dim::InductanceNh);
      chain.matching.capacitance_pf = get_quantity(*match, "c", Dim::CapacitancePf);
      chain.matching.q = q;
      chain.matching.band_center_hz = band;
    } else {
      chain.matching =
          MatchingSpec::tuned_at(band, get_quantity_or(*match, "l", Dim::InductanceNh, 10.0), q);
    }
  } else {
    chain.matching = MatchingSpec::tuned_at(kDefaultCarrierHz);
  }

  chain.decoder = DecoderConfig{};
  if (const ConfigSection* dec = doc.find("decoder")) apply_decoder_keys(*dec, chain.decoder);

  chain.validate();
  return chain;
}

ReceiverChain load_chain_file(const std::string& path, const Catalog& catalog) {
  return chain_from_config(parse_config_file(path), catalog);
}

sim::Scenario scenario_from_config(const ConfigDoc& doc, const Catalog& catalog,
                                   const std::string& base_dir) {
  sim::Scenario scenario;

  if (const ConfigSection* link = doc.find("link")) {
    scenario.link.d0_m = get_quantity_or(*link, "d0", Dim::DistanceM, 1.0);
    scenario.link.pl0_db = get_quantity_or(*link, "pl0", Dim::GainDb, 31.2);
    scenario.link.exponent = get_quantity_or(*link, "exponent", Dim::Scalar, 2.0);
    scenario.link.extra_attenuation_db = get_quantity_or(*link, "attenuation", Dim::GainDb, 0.0);
  }
  if (const ConfigSection* tx = doc.find("tx")) {
    scenario.tx_power_dbm = get_quantity_or(*tx, "power", Dim::PowerDbm, kDefaultTxPowerDbm);
    scenario.bit_rate_bps = get_quantity_or(*tx, "bit_rate", Dim::BitRateBps, kDefaultBitRateBps);
  }
  if (const ConfigSection* simsec = doc.find("sim"))
    scenario.duration_s = get_quantity_or(*simsec, "duration", Dim::TimeS, 1.0);
  if (const ConfigSection* noise = doc.find("noise")) {
    scenario.noise_sigma_v = get_quantity_or(*noise, "sigma", Dim::VoltageV, 0.0);
    scenario.noise_seed =
        static_cast<std::uint64_t>(get_quantity_or(*noise, "seed", Dim::Scalar, 0.0));
  }

  for (const ConfigSection* sec : doc.with_prefix("node.")) {
    sim::NodeConfig node;
    node.node_id = sec->name.substr(5);
    node.distance_m = get_quantity(*sec, "distance", Dim::DistanceM);

    const std::string chain_ref = sec->has("chain") ? sec->get("chain") : "ewake-default";
    if (is_bundled_chain(chain_ref)) {
      node.chain = bundled_chain(chain_ref, catalog);
    } else {
      node.chain =
          load_chain_file((std::filesystem::path(base_dir) / chain_ref).string(), catalog);
    }
    apply_decoder_keys(*sec, node.chain.decoder);
    node.chain.decoder.bit_rate_bps = scenario.bit_rate_bps;

    node.profile = PowerProfile{};
    if (sec->has("mcu_clock"))
      node.profile = PowerProfile::with_mcu_clock(get_quantity(*sec, "mcu_clock", Dim::Scalar));
    scenario.nodes.push_back(std::move(node));
  }

  for (const ConfigSection* sec : doc.with_prefix("frame.")) {
    sim::ScheduledFrame entry;
    entry.time_s = get_quantity(*sec, "time", Dim::TimeS);
    entry.frame.network_id = parse_id(*sec, "network");
    entry.frame.target_address = parse_id(*sec, "address");
    entry.frame.preamble_us =
        get_quantity_or(*sec, "preamble", Dim::TimeUs, kDefaultPreambleUs);
    scenario.schedule.push_back(entry);
  }

  scenario.validate();
  return scenario;
}

sim::Scenario load_scenario_file(const std::string& path, const Catalog& catalog) {
  const std::string base_dir = std::filesystem::path(path).parent_path().string();
  return scenario_from_config(parse_config_file(path), catalog,
                              base_dir.empty() ? "." : base_dir);
}

}  // namespace ewake
