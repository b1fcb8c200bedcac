#pragma once

#include <cstddef>
#include <vector>

#include "eomsim/params.hpp"
#include "eomsim/steady_state.hpp"
#include "eomsim/waveform.hpp"

namespace eomsim {

struct TargetSample {
  double t = 0.0;
  double a_target = 0.0;  // normalized resonant absorption
};

struct TargetWaveform {
  std::vector<TargetSample> samples;

  // Nonempty, finite, strictly increasing times.
  void check() const;
};

struct ClipEvent {
  std::size_t index = 0;
  double t = 0.0;
  double requested = 0.0;
  double clipped_to = 0.0;
};

struct CompiledProgram {
  std::vector<WaveSample> samples;  // (t, U^2)
  std::vector<ClipEvent> clips;

  DriveWaveform as_waveform() const;
};

// Fraction of the band kept below a_max when clamping; a_max itself needs an
// infinite voltage.
inline constexpr double kUpperGuardFraction = 1e-6;

/// Unique U^2 >= 0 whose resonant absorption equals a_target. Inverts the
/// resonant absorption law in closed form:
///   g^2 (n_c + 1) = gamma gamma_s (1/a - 1)
///   Delta^2       = eps_c^2 / n_c - kappa^2
///   U^2           = Delta / detune_coeff
/// Throws OutOfBandError (kBelowReachable / kAboveReachable) outside
/// [a_min, a_max).
double voltage_for_absorption(double a_target, const DeviceParams& p);

// Highest absorption the clamp policy will target.
double upper_clamp_absorption(const AbsorptionBand& band);

/// Pointwise voltage program for a target absorption waveform. With clamp,
/// out-of-band samples are pulled to the nearest usable band edge and logged;
/// without, the first out-of-band sample throws with its index.
CompiledProgram compile_target(const TargetWaveform& target,
                               const DeviceParams& p, bool clamp);

}  // namespace eomsim
