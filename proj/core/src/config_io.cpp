#include "eomsim/config_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace eomsim {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorCode::kInvalidConfig, "config: " + what);
}

json parse_override_value(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    return json(text);
  }
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    config_error("override '" + assignment + "' is not key=value");
  }
  const std::string path = assignment.substr(0, eq);
  json* node = &doc;
  std::size_t start = 0;
  for (;;) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot - start);
    if (key.empty()) config_error("override path '" + path + "' is malformed");
    if (dot == std::string::npos) {
      (*node)[key] = parse_override_value(assignment.substr(eq + 1));
      return;
    }
    node = &(*node)[key];
    if (!node->is_object() && !node->is_null()) {
      config_error("override path '" + path + "' walks through a scalar");
    }
    start = dot + 1;
  }
}

double number(const json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& v = doc.at(key);
  if (!v.is_number()) config_error(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

DeviceParams parse_config(std::string_view json_text,
                          std::span<const std::string> overrides) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    config_error(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) config_error("top level must be a JSON object");
  for (const auto& o : overrides) apply_override(doc, o);

  static const char* const kKeys[] = {
      "gamma", "gamma_s", "g", "g_p", "probe_drive", "delta", "n_atoms",
      "chi0", "kappa", "eps_c", "G0", "omega_c", "detuning_factor", "mass",
      "omega_m", "gamma_m", "plate_area", "plate_gap",
      "include_radiation_pressure"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      config_error("unknown key '" + key + "'");
    }
  }

  DeviceParams p = presets::rb87_cavity();
  auto& md = p.medium;
  md.gamma = number(doc, "gamma", md.gamma);
  md.gamma_s = number(doc, "gamma_s", md.gamma_s);
  md.g = number(doc, "g", md.g);
  md.g_p = number(doc, "g_p", md.g);
  md.probe_drive = number(doc, "probe_drive", md.probe_drive);
  md.delta = number(doc, "delta", md.delta);
  md.n_atoms = number(doc, "n_atoms", md.n_atoms);
  md.chi0 = number(doc, "chi0", md.chi0);

  auto& cv = p.cavity;
  cv.kappa = number(doc, "kappa", cv.kappa);
  cv.eps_c = number(doc, "eps_c", cv.eps_c);
  cv.G0 = number(doc, "G0", cv.G0);
  cv.detuning_factor = number(doc, "detuning_factor", cv.detuning_factor);
  if (doc.contains("omega_c") && !doc.at("omega_c").is_null()) {
    cv.omega_c = number(doc, "omega_c", 0.0);
  }

  auto& mc = p.mech;
  mc.mass = number(doc, "mass", mc.mass);
  mc.omega_m = number(doc, "omega_m", mc.omega_m);
  mc.gamma_m = number(doc, "gamma_m", mc.gamma_m);
  mc.plate_area = number(doc, "plate_area", mc.plate_area);
  mc.plate_gap = number(doc, "plate_gap", mc.plate_gap);
  if (doc.contains("include_radiation_pressure")) {
    const auto& v = doc.at("include_radiation_pressure");
    if (!v.is_boolean()) config_error("'include_radiation_pressure' must be a boolean");
    mc.include_radiation_pressure = v.get<bool>();
  }
  return p;
}

DeviceParams load_config(const std::filesystem::path& path,
                         std::span<const std::string> overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), overrides);
}

std::string canonical_config(const DeviceParams& p) {
  json doc;
  const auto& md = p.medium;
  const auto& cv = p.cavity;
  const auto& mc = p.mech;
  doc["gamma"] = md.gamma;
  doc["gamma_s"] = md.gamma_s;
  doc["g"] = md.g;
  doc["g_p"] = md.g_p;
  doc["probe_drive"] = md.probe_drive;
  doc["delta"] = md.delta;
  doc["n_atoms"] = md.n_atoms;
  doc["chi0"] = md.chi0;
  doc["kappa"] = cv.kappa;
  doc["eps_c"] = cv.eps_c;
  doc["G0"] = cv.G0;
  doc["omega_c"] = cv.omega_c ? json(*cv.omega_c) : json(nullptr);
  doc["detuning_factor"] = cv.detuning_factor;
  doc["mass"] = mc.mass;
  doc["omega_m"] = mc.omega_m;
  doc["gamma_m"] = mc.gamma_m;
  doc["plate_area"] = mc.plate_area;
  doc["plate_gap"] = mc.plate_gap;
  doc["include_radiation_pressure"] = mc.include_radiation_pressure;
  return doc.dump();
}

}  // namespace eomsim
