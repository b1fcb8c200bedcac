#include "eomsim/synthesis.hpp"

#include <cmath>
#include <string>

#include "eomsim/parallel.hpp"

namespace eomsim {

void TargetWaveform::check() const {
  if (samples.empty()) {
    throw Error(ErrorCode::kInvalidTarget, "target waveform is empty");
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i].t) || !std::isfinite(samples[i].a_target)) {
      throw Error(ErrorCode::kInvalidTarget,
                  "target sample " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && !(samples[i].t > samples[i - 1].t)) {
      throw Error(ErrorCode::kInvalidTarget,
                  "target times must be strictly increasing (row " +
                      std::to_string(i) + ")");
    }
  }
}

DriveWaveform CompiledProgram::as_waveform() const {
  return DriveWaveform::from_table(samples);
}

double upper_clamp_absorption(const AbsorptionBand& band) {
  return band.a_min + (1.0 - kUpperGuardFraction) * band.width();
}

double voltage_for_absorption(double a_target, const DeviceParams& p) {
  const auto band = absorption_band(p);
  if (!(a_target >= band.a_min)) {
    throw OutOfBandError(ErrorCode::kBelowReachable, a_target, band.a_min,
                         band.a_max);
  }
  if (!(a_target < band.a_max)) {
    throw OutOfBandError(ErrorCode::kAboveReachable, a_target, band.a_min,
                         band.a_max);
  }

  const auto& md = p.medium;
  const double g_sq = md.g * md.g;
  const double ggs = md.gamma * md.gamma_s;
  // g^2 n_c = gamma gamma_s (1 - a)/a - g^2
  const double coupling = ggs * (1.0 - a_target) / a_target - g_sq;
  if (!(coupling > 0.0)) {
    throw OutOfBandError(ErrorCode::kAboveReachable, a_target, band.a_min,
                         band.a_max);
  }
  const double n_c = coupling / g_sq;
  const double kappa_sq = p.cavity.kappa * p.cavity.kappa;
  double radicand = p.cavity.eps_c * p.cavity.eps_c / n_c - kappa_sq;
  if (radicand < 0.0) {
    // Rounding at the a_min edge.
    if (radicand > -1e-12 * kappa_sq) {
      radicand = 0.0;
    } else {
      throw OutOfBandError(ErrorCode::kBelowReachable, a_target, band.a_min,
                           band.a_max);
    }
  }
  return std::sqrt(radicand) / p.derived().detune_coeff;
}

CompiledProgram compile_target(const TargetWaveform& target,
                               const DeviceParams& p, bool clamp) {
  target.check();
  const auto band = absorption_band(p);
  const double upper = upper_clamp_absorption(band);

  CompiledProgram out;
  std::vector<double> levels(target.samples.size());
  for (std::size_t i = 0; i < target.samples.size(); ++i) {
    const auto& s = target.samples[i];
    double level = s.a_target;
    if (level < band.a_min || level >= band.a_max) {
      if (!clamp) {
        throw OutOfBandError(level < band.a_min ? ErrorCode::kBelowReachable
                                                : ErrorCode::kAboveReachable,
                             level, band.a_min, band.a_max, i);
      }
      level = level < band.a_min ? band.a_min : upper;
      out.clips.push_back({i, s.t, s.a_target, level});
    }
    levels[i] = level;
  }

  out.samples.resize(levels.size());
  parallel_for(levels.size(), [&](std::size_t i) {
    out.samples[i] = {target.samples[i].t,
                      voltage_for_absorption(levels[i], p)};
  });
  return out;
}

}  // namespace eomsim
