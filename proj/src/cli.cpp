#include "ewake/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "ewake/loaders.hpp"
#include "ewake/presets.hpp"
#include "ewake/units.hpp"

namespace ewake::cli {

namespace {

namespace fs = std::filesystem;

struct GlobalOptions {
  std::string out_dir = ".";
  std::string catalog_path;
  std::vector<std::string> overrides;
  bool have_seed = false;
  std::uint64_t seed = 0;
};

Catalog resolve_catalog(const GlobalOptions& opts) {
  if (opts.catalog_path.empty()) return builtin_catalog();
  return load_catalog_file(opts.catalog_path);
}

std::ofstream open_output(const GlobalOptions& opts, const std::string& filename) {
  fs::create_directories(opts.out_dir);
  const fs::path path = fs::path(opts.out_dir) / filename;
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write '" + path.string() + "'");
  return file;
}

ReceiverChain resolve_chain(const std::string& ref, const Catalog& catalog,
                            const std::vector<std::string>& overrides) {
  if (is_bundled_chain(ref)) {
    if (!overrides.empty())
      throw std::invalid_argument("--set needs a chain file, not a bundled chain name");
    return bundled_chain(ref, catalog);
  }
  ConfigDoc doc = parse_config_file(ref);
  for (const std::string& ov : overrides) apply_override(doc, ov);
  return chain_from_config(doc, catalog);
}

std::string sanitize_filename(std::string_view name) {
  std::string out;
  for (char c : name)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '-';
  return out;
}

// Flag values carry explicit units; a bad unit on the command line is a
// usage error rather than an input-file error.
struct FlagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double flag_quantity(const std::string& text, Dim dim, const char* flag) {
  try {
    return parse_quantity(text, dim);
  } catch (const UnitError& err) {
    throw FlagError(std::string(flag) + ": " + err.what());
  }
}

std::uint8_t flag_u8(const std::string& text, const char* flag) {
  try {
    return parse_u8(text);
  } catch (const UnitError& err) {
    throw FlagError(std::string(flag) + ": " + err.what());
  }
}

int cmd_encode(const GlobalOptions& g, const std::string& net, const std::string& addr,
               const std::string& rate, const std::string& preamble, const std::string& power,
               bool to_file, std::ostream& out) {
  WakeFrame frame;
  frame.network_id = flag_u8(net, "--net");
  frame.target_address = flag_u8(addr, "--addr");
  frame.preamble_us = flag_quantity(preamble, Dim::TimeUs, "--preamble");
  const double bit_rate = flag_quantity(rate, Dim::BitRateBps, "--rate");
  const double tx_power = flag_quantity(power, Dim::PowerDbm, "--power");

  const OokTimeline timeline = encode_frame(frame, bit_rate, tx_power);
  if (to_file) {
    auto file = open_output(g, "timeline.csv");
    write_timeline_csv(timeline, file);
  } else {
    write_timeline_csv(timeline, out);
  }
  return kExitOk;
}

int cmd_decode(const std::string& waveform_path, const std::string& net,
               const std::string& addrs, const std::string& rate, const std::string& wake_delay,
               std::ostream& out) {
  DecoderConfig config;
  config.network_id = flag_u8(net, "--net");
  config.addresses.clear();
  std::stringstream list(addrs);
  std::string item;
  while (std::getline(list, item, ','))
    if (!item.empty()) config.addresses.insert(flag_u8(item, "--addr"));
  config.bit_rate_bps = flag_quantity(rate, Dim::BitRateBps, "--rate");
  config.wake_delay_us = flag_quantity(wake_delay, Dim::TimeUs, "--wake-delay");

  std::ifstream in(waveform_path);
  if (!in) throw std::runtime_error("cannot open waveform '" + waveform_path + "'");
  const Waveform waveform = read_waveform_csv(in);
  out << decode_stream(waveform, config).describe() << "\n";
  return kExitOk;
}

int cmd_sense(const GlobalOptions& g, const std::vector<std::string>& chain_refs,
              const std::string& rate, std::ostream& out) {
  const Catalog catalog = resolve_catalog(g);
  std::vector<ReceiverChain> chains;
  if (chain_refs.empty()) {
    for (const std::string& name : bundled_chain_names())
      chains.push_back(bundled_chain(name, catalog));
  } else {
    for (const std::string& ref : chain_refs)
      chains.push_back(resolve_chain(ref, catalog, g.overrides));
  }

  const double bit_rate = flag_quantity(rate, Dim::BitRateBps, "--rate");
  const WakeFrame frame = matching_frame(chains.front());
  const auto rows = sim::sensitivity_sweep(chains, frame, bit_rate);

  auto file = open_output(g, "sensitivity.csv");
  sim::write_sensitivity_csv(rows, file);
  sim::write_sensitivity_csv(rows, out);
  return kExitOk;
}

int cmd_tune(const GlobalOptions& g, const std::string& band, const std::string& probe_power,
             const std::string& candidates_path, std::ostream& out) {
  const double band_hz = flag_quantity(band, Dim::FrequencyHz, "--band");
  const double probe_dbm = flag_quantity(probe_power, Dim::PowerDbm, "--probe-power");

  std::vector<MatchingSpec> candidates;
  if (candidates_path.empty()) {
    candidates = bundled_tune_candidates();
  } else {
    ConfigDoc doc = parse_config_file(candidates_path);
    for (const std::string& ov : g.overrides) apply_override(doc, ov);
    for (const ConfigSection* sec : doc.with_prefix("candidate.")) {
      MatchingSpec spec;
      spec.inductance_nh = get_quantity(*sec, "l", Dim::InductanceNh);
      spec.capacitance_pf = get_quantity(*sec, "c", Dim::CapacitancePf);
      spec.q = get_quantity_or(*sec, "q", Dim::Scalar, kDefaultMatchingQ);
      spec.band_center_hz = band_hz;
      candidates.push_back(spec);
    }
  }

  const TuneResult result =
      sweep_tune(candidates, band_hz, probe_dbm, high_impedance_calibration());

  auto summary = open_output(g, "tune_summary.csv");
  summary << "index,l_nh,c_pf,f0_hz,envelope_at_center_v,best\n";
  for (std::size_t i = 0; i < result.responses.size(); ++i) {
    const SweepResponse& r = result.responses[i];
    auto file = open_output(g, "tune_candidate_" + std::to_string(i) + ".csv");
    write_sweep_csv(r, file);
    summary << i << "," << format_double(r.spec.inductance_nh) << ","
            << format_double(r.spec.capacitance_pf) << ","
            << format_double(resonant_frequency_hz(r.spec.inductance_nh, r.spec.capacitance_pf))
            << "," << format_double(r.envelope_at_center_v) << ","
            << (i == result.best_index ? 1 : 0) << "\n";
  }

  const MatchingSpec& best = result.best();
  out << "best = (" << format_double(best.inductance_nh) << " nH, "
      << format_double(best.capacitance_pf) << " pF), f0 = "
      << format_double(resonant_frequency_hz(best.inductance_nh, best.capacitance_pf) / 1e6)
      << " MHz\n";
  return kExitOk;
}

int cmd_energy(const GlobalOptions& g, const std::string& chain_ref, const std::string& wake_rate,
               const std::string& false_rate, const std::string& preamble,
               const std::string& rate, const std::string& host_active,
               const std::string& battery, const std::string& duty, std::ostream& out) {
  const Catalog catalog = resolve_catalog(g);
  const ReceiverChain chain = resolve_chain(chain_ref, catalog, g.overrides);
  PowerProfile profile;

  const double wake_hz = flag_quantity(wake_rate, Dim::RateHz, "--wake-rate");
  const double false_hz = flag_quantity(false_rate, Dim::RateHz, "--false-rate");
  const double bit_rate = flag_quantity(rate, Dim::BitRateBps, "--rate");
  const double host_active_s = flag_quantity(host_active, Dim::TimeS, "--host-active");

  WakeFrame frame = matching_frame(chain);
  frame.preamble_us = flag_quantity(preamble, Dim::TimeUs, "--preamble");
  const double frame_s = frame_airtime_us(frame, bit_rate) / 1e6;

  const double quiescent_na = quiescent_current_na(chain, /*include_matcher_sleep=*/true);
  const double average_ua =
      average_current_ua(profile, chain, wake_hz, false_hz, frame_s, host_active_s);

  out << "chain = " << chain.name << "\n";
  out << "quiescent = " << format_double(quiescent_na) << " nA\n";
  out << "mcu_active = " << format_double(profile.mcu_active_ua) << " uA\n";
  out << "frame_airtime = " << format_double(frame_s * 1e3) << " ms\n";
  out << "decode_charge = " << format_double(decode_event_charge_uc(profile, frame_s))
      << " uC\n";
  out << "average = " << format_double(average_ua) << " uA\n";
  if (!battery.empty()) {
    const double capacity = flag_quantity(battery, Dim::ChargeMah, "--battery");
    out << "lifetime = " << format_double(lifetime_hours(capacity, average_ua)) << " h\n";
  }
  if (!duty.empty()) {
    const double duty_fraction = flag_quantity(duty, Dim::Fraction, "--duty");
    out << "duty_cycle_baseline = "
        << format_double(duty_cycle_average_ua(profile.radio_listen_ua, duty_fraction))
        << " uA\n";
  }

  // One-second normalized ledger: total charge in uC equals the average
  // current in uA.
  EnergyLedger ledger;
  ledger.add("idle", quiescent_na / 1000.0 + profile.host_sleep_ua, 1.0);
  ledger.add("matcher-decode", profile.mcu_active_ua - profile.mcu_sleep_ua,
             (wake_hz + false_hz) * frame_s);
  ledger.add("host-active", profile.host_active_ua - profile.host_sleep_ua,
             wake_hz * host_active_s);
  auto file = open_output(g, "energy.csv");
  ledger.write_csv(file);
  return kExitOk;
}

int cmd_sim(const GlobalOptions& g, const std::string& scenario_path, std::ostream& out) {
  const Catalog catalog = resolve_catalog(g);
  sim::Scenario scenario;
  if (scenario_path.empty()) {
    scenario = demo_scenario(catalog);
  } else {
    ConfigDoc doc = parse_config_file(scenario_path);
    for (const std::string& ov : g.overrides) apply_override(doc, ov);
    const std::string base_dir = fs::path(scenario_path).parent_path().string();
    scenario = scenario_from_config(doc, catalog, base_dir.empty() ? "." : base_dir);
  }
  if (g.have_seed) scenario.noise_seed = g.seed;

  const sim::SimReport report = sim::run(scenario);
  for (const sim::NodeReport& nr : report.nodes) {
    auto file = open_output(g, "node_" + sanitize_filename(nr.node_id) + ".csv");
    sim::write_node_csv(nr, file);
    auto energy = open_output(g, "energy_" + sanitize_filename(nr.node_id) + ".csv");
    nr.ledger.write_csv(energy);
  }
  const std::string summary = sim::summary_json(report);
  auto file = open_output(g, "summary.json");
  file << summary;
  out << summary;
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wake-up receiver protocol and behavioral simulation toolkit"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--out", g.out_dir, "Output directory for generated files");
  app.add_option("--catalog", g.catalog_path, "Component catalog file replacing the builtin one");
  app.add_option("--seed", g.seed, "Noise seed override for simulations")
      ->each([&](const std::string&) { g.have_seed = true; });
  app.add_option("--set", g.overrides,
                 "Override a config key before interpretation (section.key=value)");

  // encode
  auto* encode = app.add_subcommand("encode", "Encode a wake frame into an OOK timeline CSV");
  encode->fallthrough();
  std::string net, addr;
  std::string rate = "1000 bps", preamble = "2 ms", power = "14 dBm";
  bool encode_to_file = false;
  encode->add_option("--net", net, "Network id (hex or decimal)")->required();
  encode->add_option("--addr", addr, "Target address (hex or decimal)")->required();
  encode->add_option("--rate", rate, "Bit rate, e.g. 1000bps");
  encode->add_option("--preamble", preamble, "Preamble duration, e.g. 10us");
  encode->add_option("--power", power, "Transmit power, e.g. 14dBm");
  encode->add_flag("--to-file", encode_to_file, "Write timeline.csv under --out instead of stdout");

  // decode
  auto* decode = app.add_subcommand("decode", "Decode a binary waveform CSV into a wake decision");
  decode->fallthrough();
  std::string waveform_path, dec_net, dec_addrs;
  std::string dec_rate = "1000 bps", wake_delay = "5 us";
  decode->add_option("--waveform", waveform_path, "Waveform CSV (time_us,level)")->required();
  decode->add_option("--net", dec_net, "Decoder network id")->required();
  decode->add_option("--addr", dec_addrs, "Comma-separated wake addresses")->required();
  decode->add_option("--rate", dec_rate, "Decoder bit rate");
  decode->add_option("--wake-delay", wake_delay, "Matcher MCU startup time");

  // sense
  auto* sense = app.add_subcommand("sense", "Compute receiver sensitivity per chain");
  sense->fallthrough();
  std::vector<std::string> chain_refs;
  std::string sense_rate = "1000 bps";
  sense->add_option("--chain", chain_refs,
                    "Chain file or bundled name (repeatable; default: all bundled)");
  sense->add_option("--rate", sense_rate, "Probe frame bit rate");

  // tune
  auto* tune = app.add_subcommand("tune", "Emulated SDR sweep across matching candidates");
  tune->fallthrough();
  std::string band = "868 MHz", probe_power = "-40 dBm", candidates_path;
  tune->add_option("--band", band, "Band center frequency");
  tune->add_option("--probe-power", probe_power, "Probe power at the antenna");
  tune->add_option("--candidates", candidates_path, "Candidate file ([candidate.X] sections)");

  // energy
  auto* energy = app.add_subcommand("energy", "Quiescent/average current and lifetime report");
  energy->fallthrough();
  std::string chain_ref = "ewake-default";
  std::string wake_rate = "0 /s", false_rate = "0 /s", energy_preamble = "2 ms";
  std::string energy_rate = "1000 bps", host_active = "100 ms", battery, duty;
  energy->add_option("--chain", chain_ref, "Chain file or bundled name");
  energy->add_option("--wake-rate", wake_rate, "True wake events per second, e.g. 0.001/s");
  energy->add_option("--false-rate", false_rate, "False wake events per second");
  energy->add_option("--preamble", energy_preamble, "Frame preamble duration");
  energy->add_option("--rate", energy_rate, "Frame bit rate");
  energy->add_option("--host-active", host_active, "Host active time per true wake");
  energy->add_option("--battery", battery, "Battery capacity for a lifetime line, e.g. 1000mAh");
  energy->add_option("--duty", duty, "Duty-cycle fraction for the listening baseline, e.g. 1%");

  // sim
  auto* simulate = app.add_subcommand("sim", "Run a multi-node wake-up scenario");
  simulate->fallthrough();
  std::string scenario_path;
  simulate->add_option("--scenario", scenario_path, "Scenario file (default: bundled 3-node demo)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("ewake");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());

    if (encode->parsed())
      return cmd_encode(g, net, addr, rate, preamble, power, encode_to_file, out);
    if (decode->parsed())
      return cmd_decode(waveform_path, dec_net, dec_addrs, dec_rate, wake_delay, out);
    if (sense->parsed()) return cmd_sense(g, chain_refs, sense_rate, out);
    if (tune->parsed()) return cmd_tune(g, band, probe_power, candidates_path, out);
    if (energy->parsed())
      return cmd_energy(g, chain_ref, wake_rate, false_rate, energy_preamble, energy_rate,
                        host_active, battery, duty, out);
    if (simulate->parsed()) return cmd_sim(g, scenario_path, out);
    err << "no subcommand given\n";
    return kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const FlagError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace ewake::cli
