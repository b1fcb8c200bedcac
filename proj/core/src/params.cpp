#include "eomsim/params.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace eomsim {

namespace {

constexpr double kWeakFieldLimit = 0.1;
constexpr double kGammaOrderRatio = 0.1;

class IssueCollector {
 public:
  void positive(const char* field, double value) {
    if (!finite(field, value)) return;
    if (!(value > 0.0)) {
      errors.push_back({IssueKind::kNonPositive, field,
                        "must be > 0, got " + std::to_string(value)});
    }
  }
  void non_negative(const char* field, double value) {
    if (!finite(field, value)) return;
    if (value < 0.0) {
      errors.push_back({IssueKind::kNonPositive, field,
                        "must be >= 0, got " + std::to_string(value)});
    }
  }
  bool finite(const char* field, double value) {
    if (std::isfinite(value)) return true;
    errors.push_back({IssueKind::kNonFinite, field, "must be finite"});
    return false;
  }

  std::vector<Issue> errors;
  std::vector<Issue> warnings;
};

}  // namespace

double coulomb_eta(double area, double gap) {
  if (!(area > 0.0) || !(gap > 0.0)) {
    throw Error(ErrorCode::kNonPositive,
                "coulomb_eta: plate area and gap must be > 0");
  }
  return constants::kVacuumPermittivity * area / (2.0 * gap * gap);
}

ValidationResult validate(const DeviceParams& raw) {
  IssueCollector c;
  const auto& md = raw.medium;
  const auto& cv = raw.cavity;
  const auto& mc = raw.mech;

  c.positive("gamma", md.gamma);
  c.positive("gamma_s", md.gamma_s);
  c.positive("g", md.g);
  c.non_negative("g_p", md.g_p);
  c.non_negative("probe_drive", md.probe_drive);
  c.finite("delta", md.delta);
  c.positive("chi0", md.chi0);
  if (c.finite("n_atoms", md.n_atoms) && !(md.n_atoms >= 1.0)) {
    c.errors.push_back({IssueKind::kNonPositive, "n_atoms", "must be >= 1"});
  }

  c.positive("kappa", cv.kappa);
  c.non_negative("eps_c", cv.eps_c);
  c.positive("G0", cv.G0);
  c.positive("detuning_factor", cv.detuning_factor);
  if (cv.omega_c) c.positive("omega_c", *cv.omega_c);

  c.positive("mass", mc.mass);
  c.positive("omega_m", mc.omega_m);
  c.non_negative("gamma_m", mc.gamma_m);
  c.positive("plate_area", mc.plate_area);
  c.positive("plate_gap", mc.plate_gap);

  ValidationResult result{raw, {}, {}};
  result.params.derived_ = DerivedConstants{};
  if (!c.errors.empty()) {
    result.errors = std::move(c.errors);
    return result;
  }

  if (md.gamma_s >= kGammaOrderRatio * md.gamma) {
    c.warnings.push_back(
        {IssueKind::kGammaOrder, "gamma_s",
         "gamma_s is not small against gamma; the transparency window is "
         "shallow"});
  }

  // Steady coherences on two-photon resonance at zero voltage bound the
  // weak-probe regime from above.
  const double n_max = std::pow(cv.eps_c / cv.kappa, 2);
  const std::complex<double> spin_decay{md.gamma_s, -md.delta};
  const std::complex<double> det =
      md.gamma * spin_decay + md.g * md.g * (n_max + 1.0);
  const double sigma_ba = md.probe_drive * std::abs(spin_decay) / std::abs(det);
  const double sigma_bc =
      md.probe_drive * md.g * std::sqrt(n_max + 1.0) / std::abs(det);
  if (sigma_ba > kWeakFieldLimit || sigma_bc > kWeakFieldLimit) {
    c.warnings.push_back({IssueKind::kWeakField, "probe_drive",
                          "steady coherences exceed 0.1; the linear "
                          "susceptibility picture is not reliable"});
  }

  DerivedConstants d;
  d.eta = coulomb_eta(mc.plate_area, mc.plate_gap);
  d.spring = mc.mass * mc.omega_m * mc.omega_m;
  d.detune_coeff = cv.detuning_factor * cv.G0 * d.eta / d.spring;
  result.params.derived_ = d;
  result.warnings = std::move(c.warnings);
  return result;
}

DeviceParams validated(const DeviceParams& raw) {
  auto result = validate(raw);
  if (!result.ok()) throw ValidationError(std::move(result.errors));
  return result.params;
}

namespace presets {

DeviceParams rb87_cavity() {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  const double gamma = kTwoPi * 5.75e6;

  DeviceParams p;
  p.medium.gamma = gamma;
  p.medium.gamma_s = 1e-4 * gamma;
  p.medium.g = 1e-3 * gamma;
  p.medium.g_p = p.medium.g;
  p.medium.probe_drive = 1.0;
  p.medium.delta = 0.0;
  p.medium.n_atoms = 1.0;
  p.medium.chi0 = 1.0;

  p.cavity.kappa = 0.2 * gamma;
  p.cavity.eps_c = 4e10;
  p.cavity.G0 = kTwoPi * 1.5e16;
  p.cavity.detuning_factor = 2.0;

  p.mech.mass = 145e-9 * 1e-3;  // 145 ng
  p.mech.omega_m = gamma;
  p.mech.gamma_m = 3.0 * gamma;
  p.mech.plate_area = 0.6e-6;   // 0.6 mm^2
  p.mech.plate_gap = 0.21e-6;   // 0.21 um
  p.mech.include_radiation_pressure = false;
  return p;
}

DeviceParams rb87_waveform() {
  DeviceParams p = rb87_cavity();
  p.cavity.eps_c = 0.5e10;
  p.cavity.kappa = 0.4 * p.medium.gamma;
  p.mech.gamma_m = 3.0 * p.medium.gamma;
  return p;
}

}  // namespace presets

}  // namespace eomsim
