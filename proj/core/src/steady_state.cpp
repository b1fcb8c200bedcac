#include "eomsim/steady_state.hpp"

#include <cassert>
#include <cmath>

namespace eomsim {

namespace {

void require_voltage_squared(double u_sq) {
  if (!(u_sq >= 0.0)) {
    throw Error(ErrorCode::kNegativeVoltageSquared,
                "voltage squared must be >= 0");
  }
}

}  // namespace

double cmo_displacement(double u_sq, const DeviceParams& p) {
  assert(p.is_validated());
  require_voltage_squared(u_sq);
  return u_sq * p.derived().eta / p.derived().spring;
}

double cavity_detuning(double u_sq, const DeviceParams& p) {
  assert(p.is_validated());
  require_voltage_squared(u_sq);
  return p.derived().detune_coeff * u_sq;
}

std::complex<double> cavity_amplitude(double u_sq, const DeviceParams& p) {
  const double detuning = cavity_detuning(u_sq, p);
  return p.cavity.eps_c / std::complex<double>{p.cavity.kappa, detuning};
}

double photon_number(double u_sq, const DeviceParams& p) {
  const double detuning = cavity_detuning(u_sq, p);
  const double ratio = p.cavity.eps_c / std::hypot(p.cavity.kappa, detuning);
  return ratio * ratio;
}

EffectiveDecay effective_decay(double u_sq, const DeviceParams& p) {
  EffectiveDecay out;
  out.kappa_eff = std::hypot(p.cavity.kappa, cavity_detuning(u_sq, p));
  if (p.cavity.omega_c) out.q_eff = *p.cavity.omega_c / out.kappa_eff;
  return out;
}

std::complex<double> chi_steady(double delta_p, double n_c,
                                const DeviceParams& p) {
  if (!(n_c >= 0.0)) {
    throw Error(ErrorCode::kNonPositive, "photon number must be >= 0");
  }
  using namespace std::complex_literals;
  const auto& md = p.medium;
  const std::complex<double> spin{md.gamma_s, delta_p - md.delta};
  const std::complex<double> optical{md.gamma, delta_p};
  const std::complex<double> den = optical * spin + md.g * md.g * (n_c + 1.0);
  if (std::abs(den) < 1e-30 * md.gamma * md.gamma) {
    throw Error(ErrorCode::kDegenerateDenominator,
                "susceptibility denominator vanished");
  }
  return 1i * md.gamma * spin / den;
}

double im_chi_resonant(double u_sq, const DeviceParams& p) {
  const auto& md = p.medium;
  const double n_c = photon_number(u_sq, p);
  const double ggs = md.gamma * md.gamma_s;
  return ggs / (ggs + md.g * md.g * (n_c + 1.0));
}

AbsorptionBand absorption_band(const DeviceParams& p) {
  const auto& md = p.medium;
  const double ggs = md.gamma * md.gamma_s;
  AbsorptionBand band;
  band.n_cmax = photon_number(0.0, p);
  band.a_min = ggs / (ggs + md.g * md.g * (band.n_cmax + 1.0));
  band.a_max = ggs / (ggs + md.g * md.g);
  return band;
}

SusceptibilitySample sample_susceptibility(double delta_p, double u_sq,
                                           const DeviceParams& p) {
  SusceptibilitySample s;
  s.delta_p = delta_p;
  s.u_sq = u_sq;
  s.n_c = photon_number(u_sq, p);
  s.chi_norm = chi_steady(delta_p, s.n_c, p);
  return s;
}

std::complex<double> physical_susceptibility(std::complex<double> chi_norm,
                                             const DeviceParams& p) {
  return p.medium.chi0 * chi_norm / p.medium.gamma;
}

}  // namespace eomsim
