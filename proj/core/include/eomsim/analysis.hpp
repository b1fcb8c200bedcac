#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "eomsim/matrix2.hpp"
#include "eomsim/params.hpp"

namespace eomsim {

struct ModulationMetrics {
  double r_db = 0.0;
  double a_min = 0.0;   // resonant absorption at U^2 = 0
  double a_max = 0.0;   // resonant absorption at U^2 = U_m^2
  double n_cmax = 0.0;
  double n_cmin = 0.0;
  std::optional<double> eit_width;  // empty when the window has closed
  double theta = 0.0;
  double v_g_ratio = 0.0;
};

struct Polariton {
  double theta = 0.0;
  double cos_sq = 0.0;
  double sin_sq = 0.0;
  double v_g_ratio = 0.0;  // v_g / c = cos^2 theta
  cplx psi;
};

// Grid of normalized susceptibility; values are row-major in u_sq, i.e.
// value(iu, idp) = data[iu * delta_p.size() + idp].
struct SpectrumTable {
  std::vector<double> delta_p;
  std::vector<double> u_sq;
  std::vector<double> im_chi;
  std::vector<double> re_chi;

  std::size_t index(std::size_t iu, std::size_t idp) const {
    return iu * delta_p.size() + idp;
  }
  double im(std::size_t iu, std::size_t idp) const { return im_chi[index(iu, idp)]; }
  double re(std::size_t iu, std::size_t idp) const { return re_chi[index(iu, idp)]; }
};

// Dip-to-peak contrast below which the transparency window counts as closed.
inline constexpr double kWindowContrastThreshold = 1e-3;

/// 10 log10 of the resonant absorption ratio between U_m^2 and zero voltage.
double extinction_ratio(double u_m_sq, const DeviceParams& p);

/// Full width of the transparency dip at half its depth, measured between
/// the two points where Im chi crosses (dip + peak) / 2 on either side of
/// two-photon resonance. Throws Error(kNoWindow) once the dip is gone.
double eit_width(double u_sq, const DeviceParams& p);
double eit_width_for_photons(double n_c, const DeviceParams& p);

Polariton polariton(double u_sq, const DeviceParams& p, cplx sigma_bc,
                    double eps_p);

SpectrumTable spectrum_sweep(std::span<const double> delta_p,
                             std::span<const double> u_sq,
                             const DeviceParams& p);

ModulationMetrics modulation_metrics(double u_m_sq, const DeviceParams& p,
                                     double operating_u_sq = 0.0);

// n points from lo to hi inclusive. Built from both ends so a grid with
// lo == -hi is exactly antisymmetric.
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace eomsim
