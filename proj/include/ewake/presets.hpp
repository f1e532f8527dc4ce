#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ewake/analog.hpp"
#include "ewake/netsim.hpp"

namespace ewake {

// Receiver configurations the tools ship with:
//   ewake-default   LPV811 x100 into a TLV3691 at 27 mV, high-impedance
//                   detector calibration
//   direct-lpv7215  envelope straight into an LPV7215 (offset-only threshold)
//   direct-tlv3691  envelope straight into a TLV3691 (offset-only threshold)
std::vector<std::string> bundled_chain_names();
ReceiverChain bundled_chain(std::string_view name, const Catalog& catalog = builtin_catalog());
bool is_bundled_chain(std::string_view name);

// A frame the chain's own decoder accepts; used for sensitivity probes.
WakeFrame matching_frame(const ReceiverChain& chain);

// L-C candidates for the emulated tuning sweep.
std::vector<MatchingSpec> bundled_tune_candidates();

// Three-node demo: addresses 0x01..0x03 at 10 m, one frame for 0x02.
sim::Scenario demo_scenario(const Catalog& catalog = builtin_catalog());

}  // namespace ewake
