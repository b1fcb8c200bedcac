#pragma once

#include <cstddef>
#include <vector>

#include "eomsim/matrix2.hpp"
#include "eomsim/params.hpp"
#include "eomsim/waveform.hpp"

namespace eomsim {

struct SystemState {
  double t = 0.0;
  double q = 0.0;     // m
  double qdot = 0.0;  // m/s
  cplx a;             // cavity amplitude, sqrt(photons)
  cplx sigma_ba;
  cplx sigma_bc;
};

struct MechanicsState {
  double q = 0.0;
  double qdot = 0.0;
};

struct Coherences {
  cplx sigma_ba;
  cplx sigma_bc;
};

enum class Method { kExponentialPiecewise, kRk4Adaptive };

const char* to_string(Method method);

enum class InitialCondition {
  kEitSteadyState,    // U = 0 steady state: q = 0, a = eps_c / kappa
  kDriveSteadyState,  // adiabatic steady state at U^2(0)
  kCold,              // everything zero
};

struct SolverConfig {
  double dt = 1e-10;  // s
  Method method = Method::kExponentialPiecewise;
  // rk4-adaptive only. abs_tol is taken relative to each variable's
  // characteristic magnitude (steady values at the drive extremes).
  double rel_tol = 1e-6;
  double abs_tol = 1e-9;
  std::size_t max_steps = 100'000'000;
  std::size_t record_stride = 1;
  double probe_detuning = 0.0;  // Delta_p, rad/s
  InitialCondition initial = InitialCondition::kEitSteadyState;

  void check() const;
};

struct TrajectoryRow {
  double t = 0.0;
  double u_sq = 0.0;
  double q = 0.0;
  double qdot = 0.0;
  cplx a;
  double n_c = 0.0;
  cplx sigma_ba;
  cplx sigma_bc;
  double absorption = 0.0;  // gamma Im(sigma_ba) / probe_drive
  double dispersion = 0.0;  // gamma Re(sigma_ba) / probe_drive

  bool operator==(const TrajectoryRow&) const = default;
};

struct Trajectory {
  std::vector<TrajectoryRow> rows;

  std::vector<double> times() const;
  std::vector<double> absorption() const;
  bool operator==(const Trajectory&) const = default;
};

// Amplitude with the phase of a and |a_eff|^2 = |a|^2 + 1, so the dynamic
// coupling carries the same vacuum "+1" as the steady-state susceptibility.
cplx effective_cavity_amplitude(cplx a);

// M of R' = -M R + A for R = (sigma_ba, sigma_bc).
Mat2c bloch_matrix(cplx a, double delta_p, const DeviceParams& p);
Vec2c bloch_drive(const DeviceParams& p);

// M^{-1} A at frozen cavity amplitude.
Coherences bloch_steady_state(cplx a, double delta_p, const DeviceParams& p);

/// Exact update of the oscillator over dt with the Coulomb (and optional
/// radiation-pressure) force held constant on the step.
MechanicsState step_mechanics(const SystemState& s, double u_sq, double n_c,
                              double dt, const DeviceParams& p);

/// Exact update of the cavity amplitude with the detuning frozen at the
/// value set by s.q.
cplx step_cavity(const SystemState& s, double dt, const DeviceParams& p);

/// Exact update of the coherences with the cavity amplitude frozen:
///   R(t+dt) = e^{-M dt} (R - M^{-1}A) + M^{-1}A.
Coherences step_bloch(const SystemState& s, cplx a, double delta_p, double dt,
                      const DeviceParams& p);

SystemState initial_state(InitialCondition kind, const DriveWaveform& wave,
                          double delta_p, const DeviceParams& p);

TrajectoryRow make_row(const SystemState& s, double u_sq,
                       const DeviceParams& p);

// Propagates the coupled system under the drive program. The exponential
// method splits each step as mechanics -> cavity -> coherences.
Trajectory simulate(const DriveWaveform& wave, const DeviceParams& p,
                    const SolverConfig& cfg);

// Step size resolving the fastest mechanical, cavity and optical rates.
double suggested_time_step(const DeviceParams& p);

}  // namespace eomsim
