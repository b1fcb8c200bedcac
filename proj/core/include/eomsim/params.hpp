#pragma once

#include <optional>
#include <vector>

#include "eomsim/error.hpp"

namespace eomsim {

namespace constants {
inline constexpr double kHbar = 1.054571817e-34;          // J s
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m
inline constexpr double kSpeedOfLight = 2.99792458e8;     // m/s
}  // namespace constants

// All rates are angular frequencies (rad/s).

struct MediumParams {
  double gamma = 0.0;        // |a> -> |b> decay
  double gamma_s = 0.0;      // |c> -> |b> decay
  double g = 0.0;            // cavity-transition coupling
  double g_p = 0.0;          // probe-transition coupling (polariton only)
  double probe_drive = 1.0;  // g_p * eps_p
  double delta = 0.0;        // cavity-transition detuning
  double n_atoms = 1.0;
  double chi0 = 1.0;         // susceptibility scale

  bool operator==(const MediumParams&) const = default;
};

struct CavityParams {
  double kappa = 0.0;
  double eps_c = 0.0;              // control drive amplitude
  double G0 = 0.0;                 // |d omega_c / d q|, rad/s per m
  std::optional<double> omega_c;   // bare cavity frequency, only for Q_eff
  double detuning_factor = 2.0;    // Delta_cmo = detuning_factor * G0 * q

  bool operator==(const CavityParams&) const = default;
};

struct MechParams {
  double mass = 0.0;        // kg
  double omega_m = 0.0;
  double gamma_m = 0.0;
  double plate_area = 0.0;  // m^2
  double plate_gap = 0.0;   // m
  bool include_radiation_pressure = false;

  bool operator==(const MechParams&) const = default;
};

// Quantities fixed by the inputs. Filled only by validate().
struct DerivedConstants {
  double eta = 0.0;           // eps0 S / (2 r^2), F/m
  double spring = 0.0;        // m omega_m^2, kg/s^2
  double detune_coeff = 0.0;  // detuning_factor G0 eta / spring, rad/s per V^2

  bool operator==(const DerivedConstants&) const = default;
};

class DeviceParams;
struct ValidationResult;
ValidationResult validate(const DeviceParams& raw);

class DeviceParams {
 public:
  MediumParams medium;
  CavityParams cavity;
  MechParams mech;

  const DerivedConstants& derived() const noexcept { return derived_; }
  bool is_validated() const noexcept { return derived_.spring > 0.0; }

  bool operator==(const DeviceParams&) const = default;

 private:
  DerivedConstants derived_;
  friend ValidationResult validate(const DeviceParams& raw);
};

struct ValidationResult {
  DeviceParams params;
  std::vector<Issue> errors;
  std::vector<Issue> warnings;

  bool ok() const noexcept { return errors.empty(); }
};

// Collects every violation; derived constants are populated when ok().
ValidationResult validate(const DeviceParams& raw);

// Throws ValidationError listing all fatal issues.
DeviceParams validated(const DeviceParams& raw);

// eta = eps0 * area / (2 gap^2).
double coulomb_eta(double area, double gap);

namespace presets {

// Rb-87 cavity device at the experimental parameter set used for the
// spectral surfaces. Returned unvalidated so callers can tweak fields.
DeviceParams rb87_cavity();

// Same device with a weaker control drive, a lossier cavity and a heavily
// damped oscillator; used for the time-domain waveform runs.
DeviceParams rb87_waveform();

}  // namespace presets

}  // namespace eomsim
