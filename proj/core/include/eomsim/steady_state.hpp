#pragma once

#include <complex>
#include <optional>

#include "eomsim/params.hpp"

namespace eomsim {

// Adiabatic (slow-drive) solutions of the oscillator-cavity-medium system.
// Susceptibilities are normalized: chi_norm = gamma * chi / chi0, so the
// resonant absorption lies in (0, 1).

struct SusceptibilitySample {
  double delta_p = 0.0;
  double u_sq = 0.0;
  std::complex<double> chi_norm;
  double n_c = 0.0;
};

struct EffectiveDecay {
  double kappa_eff = 0.0;
  std::optional<double> q_eff;
};

// Resonant absorption reachable by tuning U^2 from 0 to infinity.
struct AbsorptionBand {
  double a_min = 0.0;   // U^2 = 0, brightest cavity
  double a_max = 0.0;   // U^2 -> inf, empty cavity (never attained)
  double n_cmax = 0.0;

  double width() const noexcept { return a_max - a_min; }
};

double cmo_displacement(double u_sq, const DeviceParams& p);
double cavity_detuning(double u_sq, const DeviceParams& p);
std::complex<double> cavity_amplitude(double u_sq, const DeviceParams& p);
double photon_number(double u_sq, const DeviceParams& p);
EffectiveDecay effective_decay(double u_sq, const DeviceParams& p);

/// Normalized first-order probe susceptibility for a cavity holding n_c
/// photons. Independent of the probe drive strength.
std::complex<double> chi_steady(double delta_p, double n_c,
                                const DeviceParams& p);

/// Im chi_norm on two-photon and probe resonance (delta_p = delta = 0) as a
/// function of the capacitor voltage squared.
double im_chi_resonant(double u_sq, const DeviceParams& p);

AbsorptionBand absorption_band(const DeviceParams& p);

SusceptibilitySample sample_susceptibility(double delta_p, double u_sq,
                                           const DeviceParams& p);

// chi0 * chi_norm / gamma.
std::complex<double> physical_susceptibility(std::complex<double> chi_norm,
                                             const DeviceParams& p);

}  // namespace eomsim
