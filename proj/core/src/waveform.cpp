#include "eomsim/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "eomsim/error.hpp"

namespace eomsim {

namespace {

constexpr double kMinSamplesPerPeriod = 16.0;

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidWaveform, what);
}

}  // namespace

const char* to_string(WaveKind kind) {
  switch (kind) {
    case WaveKind::kSine: return "sine";
    case WaveKind::kSawtooth: return "sawtooth";
    case WaveKind::kSquare: return "square";
    case WaveKind::kTable: return "table";
  }
  return "unknown";
}

WaveKind wave_kind_from_string(const char* name) {
  for (auto kind : {WaveKind::kSine, WaveKind::kSawtooth, WaveKind::kSquare,
                    WaveKind::kTable}) {
    if (std::strcmp(name, to_string(kind)) == 0) return kind;
  }
  invalid(std::string("unknown waveform kind '") + name + "'");
}

DriveWaveform DriveWaveform::periodic(WaveKind kind, double floor, double peak,
                                      double period, double cycles,
                                      double phase) {
  DriveWaveform w;
  w.kind = kind;
  w.u_sq_floor = floor;
  w.u_sq_peak = peak;
  w.period = period;
  w.duration = cycles * period;
  w.phase = phase;
  w.check();
  return w;
}

DriveWaveform DriveWaveform::from_table(std::vector<WaveSample> samples) {
  DriveWaveform w;
  w.kind = WaveKind::kTable;
  if (!samples.empty()) {
    w.duration = samples.back().t;
    const auto [lo, hi] = std::minmax_element(
        samples.begin(), samples.end(),
        [](const WaveSample& a, const WaveSample& b) { return a.u_sq < b.u_sq; });
    w.u_sq_floor = lo->u_sq;
    w.u_sq_peak = hi->u_sq;
    w.period = w.duration;
  }
  w.table = std::move(samples);
  w.check();
  return w;
}

DriveWaveform DriveWaveform::constant(double u_sq, double duration) {
  return periodic(WaveKind::kSquare, u_sq, u_sq, duration, 1.0);
}

void DriveWaveform::check() const {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    invalid("waveform duration must be > 0");
  }
  if (kind == WaveKind::kTable) {
    if (table.size() < 2) invalid("waveform table needs at least two samples");
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (!std::isfinite(table[i].t) || !std::isfinite(table[i].u_sq)) {
        invalid("waveform table holds a non-finite value");
      }
      if (table[i].u_sq < 0.0) invalid("waveform table holds U^2 < 0");
      if (i > 0 && !(table[i].t > table[i - 1].t)) {
        invalid("waveform table times must be strictly increasing (row " +
                std::to_string(i) + ")");
      }
    }
    return;
  }
  if (!(u_sq_floor >= 0.0)) invalid("u_sq_floor must be >= 0");
  if (!(u_sq_peak >= u_sq_floor)) invalid("u_sq_peak must be >= u_sq_floor");
  if (!(period > 0.0) || !std::isfinite(period)) {
    invalid("waveform period must be > 0");
  }
  if (!std::isfinite(phase)) invalid("waveform phase must be finite");
}

double DriveWaveform::u_sq_at(double t) const {
  const double span = u_sq_peak - u_sq_floor;
  switch (kind) {
    case WaveKind::kSine:
      return u_sq_floor +
             span * 0.5 *
                 (1.0 + std::sin(2.0 * std::numbers::pi * t / period + phase));
    case WaveKind::kSawtooth: {
      const double x = t / period + phase / (2.0 * std::numbers::pi);
      return u_sq_floor + span * (x - std::floor(x));
    }
    case WaveKind::kSquare: {
      const double x = t / period + phase / (2.0 * std::numbers::pi);
      return (x - std::floor(x)) < 0.5 ? u_sq_peak : u_sq_floor;
    }
    case WaveKind::kTable:
      return interpolate(table, t);
  }
  return 0.0;
}

double interpolate(std::span<const WaveSample> table, double t) {
  if (table.empty()) return 0.0;
  if (t <= table.front().t) return table.front().u_sq;
  if (t >= table.back().t) return table.back().u_sq;
  const auto hi = std::upper_bound(
      table.begin(), table.end(), t,
      [](double value, const WaveSample& s) { return value < s.t; });
  const auto lo = hi - 1;
  const double frac = (t - lo->t) / (hi->t - lo->t);
  return lo->u_sq + frac * (hi->u_sq - lo->u_sq);
}

std::vector<WaveSample> gen_waveform(const DriveWaveform& wave,
                                     double sample_rate) {
  wave.check();
  if (!(sample_rate > 0.0)) {
    throw Error(ErrorCode::kUndersampledWaveform, "sample rate must be > 0");
  }
  if (wave.kind != WaveKind::kTable &&
      sample_rate * wave.period < kMinSamplesPerPeriod) {
    throw Error(ErrorCode::kUndersampledWaveform,
                "fewer than 16 samples per waveform period");
  }
  const auto count =
      static_cast<std::size_t>(std::floor(wave.duration * sample_rate + 1e-9));
  std::vector<WaveSample> out;
  out.reserve(count + 1);
  for (std::size_t k = 0; k <= count; ++k) {
    const double t = static_cast<double>(k) / sample_rate;
    out.push_back({t, wave.u_sq_at(t)});
  }
  return out;
}

}  // namespace eomsim
