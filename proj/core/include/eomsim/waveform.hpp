#pragma once

#include <span>
#include <vector>

namespace eomsim {

enum class WaveKind { kSine, kSawtooth, kSquare, kTable };

const char* to_string(WaveKind kind);
WaveKind wave_kind_from_string(const char* name);

struct WaveSample {
  double t = 0.0;
  double u_sq = 0.0;

  bool operator==(const WaveSample&) const = default;
};

// A voltage-squared drive program U^2(t) on [0, duration].
struct DriveWaveform {
  WaveKind kind = WaveKind::kSine;
  double u_sq_peak = 0.0;
  double u_sq_floor = 0.0;
  double period = 1.0;
  double duration = 1.0;
  double phase = 0.0;
  std::vector<WaveSample> table;  // kind == kTable only

  static DriveWaveform periodic(WaveKind kind, double floor, double peak,
                                double period, double cycles,
                                double phase = 0.0);
  // Duration defaults to the last table time.
  static DriveWaveform from_table(std::vector<WaveSample> samples);
  static DriveWaveform constant(double u_sq, double duration);

  // Throws Error(kInvalidWaveform) on a broken invariant.
  void check() const;

  // U^2 at time t. Tables interpolate linearly and hold their end values.
  double u_sq_at(double t) const;
};

// Samples the program at t = k / sample_rate, k = 0 .. floor(duration *
// sample_rate). Periodic kinds need at least 16 samples per period.
std::vector<WaveSample> gen_waveform(const DriveWaveform& wave,
                                     double sample_rate);

// Linear interpolation into strictly increasing sample times; clamps outside.
double interpolate(std::span<const WaveSample> table, double t);

}  // namespace eomsim
