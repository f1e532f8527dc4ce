#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ewake/config.hpp"

namespace ewake {

enum class ComponentKind { Comparator, OpAmp };

std::string_view to_string(ComponentKind kind);
ComponentKind component_kind_from_string(std::string_view text);

// One comparator or op-amp entry. Offset voltage is absent for parts whose
// datasheet-style row does not specify it; chains using those need an
// explicit override.
struct ComponentSpec {
  std::string name;
  ComponentKind kind = ComponentKind::Comparator;
  double drain_na = 0.0;                           // quiescent supply current
  std::optional<double> v_os_v;                    // input offset voltage
  double i_bias_a = 0.0;                           // input bias current, may be negative
  std::optional<double> reported_sensitivity_dbm;  // from prior measurements

  bool operator==(const ComponentSpec&) const = default;
};

using Catalog = std::vector<ComponentSpec>;

// The 8 comparators and 7 op-amps the receiver design draws from.
const Catalog& builtin_catalog();

const ComponentSpec& find_component(const Catalog& catalog, std::string_view name);

// Catalog file round-trip. Currents serialize in nA (drain) and A (bias),
// voltages in V, so save -> load reproduces values bit-identically.
Catalog load_catalog(std::string_view text);
Catalog load_catalog_file(const std::string& path);
void save_catalog(const Catalog& catalog, std::ostream& out);

}  // namespace ewake
