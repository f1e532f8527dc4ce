#include "ewake/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ewake/units.hpp"

namespace ewake {

std::string_view to_string(ComponentKind kind) {
  return kind == ComponentKind::Comparator ? "comparator" : "op-amp";
}

ComponentKind component_kind_from_string(std::string_view text) {
  if (text == "comparator") return ComponentKind::Comparator;
  if (text == "op-amp" || text == "opamp") return ComponentKind::OpAmp;
  throw UnitError("unknown component kind '" + std::string(text) + "'");
}

const Catalog& builtin_catalog() {
  static const Catalog catalog = [] {
    Catalog c;
    auto cmp = [&](std::string name, double drain_na, std::optional<double> v_os_v,
                   double i_bias_a, std::optional<double> sens_dbm) {
      c.push_back({std::move(name), ComponentKind::Comparator, drain_na, v_os_v, i_bias_a,
                   sens_dbm});
    };
    auto amp = [&](std::string name, double drain_na, double v_os_v, double i_bias_a) {
      c.push_back({std::move(name), ComponentKind::OpAmp, drain_na, v_os_v, i_bias_a,
                   std::nullopt});
    };

    cmp("TLV3691", 110.0, milli(3.0), pico(80.0), -32.0);
    cmp("TLV7031/41", 335.0, micro(100.0), pico(2.0), std::nullopt);
    cmp("TLV3701", 560.0, micro(200.0), pico(80.0), std::nullopt);
    cmp("LPV7215", 580.0, micro(300.0), femto(-40.0), -55.0);
    cmp("LTC1540", 300.0, std::nullopt, femto(10.0), -51.0);
    cmp("MAX919", 350.0, milli(1.0), femto(150.0), std::nullopt);
    cmp("TS881", 260.0, micro(500.0), pico(1.0), std::nullopt);
    cmp("ADCMP380", 92.0, std::nullopt, nano(4.0), std::nullopt);

    amp("LPV521", 350.0, micro(100.0), femto(40.0));
    amp("LPV801", 320.0, micro(550.0), femto(100.0));
    amp("LPV811", 450.0, micro(55.0), femto(100.0));
    amp("LPV821", 650.0, micro(1.5), pico(7.0));
    amp("TLV8541", 480.0, micro(300.0), femto(100.0));
    amp("TLV8801", 450.0, micro(550.0), femto(100.0));
    amp("TLV8811", 450.0, micro(75.0), femto(100.0));
    return c;
  }();
  return catalog;
}

const ComponentSpec& find_component(const Catalog& catalog, std::string_view name) {
  auto it = std::find_if(catalog.begin(), catalog.end(),
                         [&](const ComponentSpec& s) { return s.name == name; });
  if (it == catalog.end())
    throw std::invalid_argument("unknown component '" + std::string(name) + "'");
  return *it;
}

Catalog load_catalog(std::string_view text) {
  ConfigDoc doc = parse_config(text);
  Catalog out;
  for (const ConfigSection& sec : doc.sections) {
    for (const ComponentSpec& existing : out) {
      if (existing.name == sec.name)
        throw ParseError("duplicate component name '" + sec.name + "'", sec.line);
    }
    ComponentSpec spec;
    spec.name = sec.name;
    try {
      spec.kind = component_kind_from_string(sec.get("kind"));
    } catch (const UnitError& err) {
      throw ParseError(std::string(err.what()) + " in field 'kind'", sec.line);
    }
    spec.drain_na = get_quantity(sec, "drain", Dim::CurrentNa);
    if (spec.drain_na <= 0.0)
      throw ParseError("drain must be positive for '" + sec.name + "'", sec.line);
    spec.v_os_v = get_quantity_opt(sec, "v_os", Dim::VoltageV);
    if (spec.v_os_v && *spec.v_os_v < 0.0)
      throw ParseError("v_os must be non-negative for '" + sec.name + "'", sec.line);
    spec.i_bias_a = get_quantity_or(sec, "i_bias", Dim::CurrentA, 0.0);
    spec.reported_sensitivity_dbm = get_quantity_opt(sec, "sensitivity", Dim::PowerDbm);
    out.push_back(std::move(spec));
  }
  return out;
}

Catalog load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open catalog file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_catalog(buf.str());
}

void save_catalog(const Catalog& catalog, std::ostream& out) {
  for (const ComponentSpec& spec : catalog) {
    out << "[" << spec.name << "]\n";
    out << "kind = " << to_string(spec.kind) << "\n";
    out << "drain = " << format_double(spec.drain_na) << " nA\n";
    if (spec.v_os_v) out << "v_os = " << format_double(*spec.v_os_v) << " V\n";
    out << "i_bias = " << format_double(spec.i_bias_a) << " A\n";
    if (spec.reported_sensitivity_dbm)
      out << "sensitivity = " << format_double(*spec.reported_sensitivity_dbm) << " dBm\n";
    out << "\n";
  }
}

}  // namespace ewake
