#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "eomsim/params.hpp"

namespace eomsim {

// Flat JSON object with the keys
//   gamma gamma_s g g_p probe_drive delta n_atoms chi0
//   kappa eps_c G0 omega_c detuning_factor
//   mass omega_m gamma_m plate_area plate_gap include_radiation_pressure
// Absent keys take the rb87_cavity preset value; an absent g_p follows g.
// Unknown keys are rejected. Overrides are "dotted.path=value" strings
// applied to the document before it is read; value is parsed as JSON when
// possible and kept as a string otherwise.
//
// Errors: Error(kInvalidConfig) for malformed input, Error(kIo) for
// unreadable files. The result is not validated.
DeviceParams parse_config(std::string_view json_text,
                          std::span<const std::string> overrides = {});
DeviceParams load_config(const std::filesystem::path& path,
                         std::span<const std::string> overrides = {});

// Compact JSON with every key, sorted. Stable for equal parameters; the
// run manifest hashes this text.
std::string canonical_config(const DeviceParams& p);

}  // namespace eomsim
