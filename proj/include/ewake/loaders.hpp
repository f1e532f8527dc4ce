#pragma once

#include <string>

#include "ewake/analog.hpp"
#include "ewake/config.hpp"
#include "ewake/netsim.hpp"

namespace ewake {

// Builds a receiver chain from a parsed chain file. Component names resolve
// against the catalog; [matching], [detector] and [decoder] sections are
// optional and default to the bundled tuned-at-868-MHz setup.
ReceiverChain chain_from_config(const ConfigDoc& doc, const Catalog& catalog = builtin_catalog());
ReceiverChain load_chain_file(const std::string& path, const Catalog& catalog = builtin_catalog());

// Scenario files reference chains either by bundled name or by a path
// resolved relative to base_dir.
sim::Scenario scenario_from_config(const ConfigDoc& doc, const Catalog& catalog = builtin_catalog(),
                                   const std::string& base_dir = ".");
sim::Scenario load_scenario_file(const std::string& path,
                                 const Catalog& catalog = builtin_catalog());

}  // namespace ewake
