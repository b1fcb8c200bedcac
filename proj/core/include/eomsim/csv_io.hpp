#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "eomsim/analysis.hpp"
#include "eomsim/dynamics.hpp"
#include "eomsim/synthesis.hpp"
#include "eomsim/waveform.hpp"

namespace eomsim {

// 17 significant digits; parses back to the identical double.
std::string format_double(double v);

inline constexpr const char* kSpectrumHeader = "delta_p,u_sq,im_chi,re_chi";
inline constexpr const char* kTrajectoryHeader =
    "t,u_sq,q,qdot,re_a,im_a,n_c,re_sigma_ba,im_sigma_ba,re_sigma_bc,"
    "im_sigma_bc,A,D";
inline constexpr const char* kTargetHeader = "t,a_target";
inline constexpr const char* kProgramHeader = "t,u_sq";

// Writers return the number of data rows written (header excluded).
std::size_t write_spectrum_csv(std::ostream& os, const SpectrumTable& table);
std::size_t write_trajectory_csv(std::ostream& os, const Trajectory& traj);
std::size_t write_program_csv(std::ostream& os,
                              std::span<const WaveSample> samples);
std::size_t write_target_csv(std::ostream& os,
                             std::span<const TargetSample> samples);

// Readers check the exact header and throw Error(kInvalidTarget) /
// Error(kInvalidWaveform) naming the offending line.
TargetWaveform read_target_csv(std::istream& is);
std::vector<WaveSample> read_program_csv(std::istream& is);

std::string clip_report_json(std::span<const ClipEvent> clips);
std::string metrics_json(const ModulationMetrics& m);

}  // namespace eomsim
