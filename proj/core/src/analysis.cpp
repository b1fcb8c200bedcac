#include "eomsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eomsim/parallel.hpp"
#include "eomsim/steady_state.hpp"

namespace eomsim {

namespace {

constexpr std::size_t kScanPoints = 4000;

[[noreturn]] void no_window(const std::string& why) {
  throw Error(ErrorCode::kNoWindow, "no transparency window: " + why);
}

struct Peak {
  double offset;
  double value;
};

// First local maximum of f on a log-spaced offset grid, refined by golden
// section. Empty when f rises monotonically over the scan.
std::optional<Peak> first_peak(const auto& f, double lo, double hi) {
  const double ratio = std::pow(hi / lo, 1.0 / (kScanPoints - 1));
  double x_prev = 0.0;
  double x = lo;
  double f_x = f(x);
  for (std::size_t j = 1; j < kScanPoints; ++j) {
    const double x_next = x * ratio;
    const double f_next = f(x_next);
    if (f_next < f_x) {
      double a = x_prev;
      double b = x_next;
      const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
      double c = b - inv_phi * (b - a);
      double d = a + inv_phi * (b - a);
      double fc = f(c);
      double fd = f(d);
      while (b - a > 1e-12 * b) {
        if (fc > fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - inv_phi * (b - a);
          fc = f(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + inv_phi * (b - a);
          fd = f(d);
        }
      }
      const double xm = 0.5 * (a + b);
      return Peak{xm, std::max(f(xm), f_x)};
    }
    x_prev = x;
    x = x_next;
    f_x = f_next;
  }
  return std::nullopt;
}

// Offset in (0, peak) where f crosses level; f rises from the dip.
double crossing(const auto& f, double peak_offset, double level) {
  double lo = 0.0;
  double hi = peak_offset;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < level ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double extinction_ratio(double u_m_sq, const DeviceParams& p) {
  if (!(u_m_sq > 0.0)) {
    throw Error(ErrorCode::kNonPositiveVoltage,
                "extinction ratio needs U_m^2 > 0");
  }
  const auto& md = p.medium;
  const double ggs = md.gamma * md.gamma_s;
  const double g_sq = md.g * md.g;
  const double n_max = photon_number(0.0, p);
  const double n_min = photon_number(u_m_sq, p);
  return 10.0 * std::log10((ggs + g_sq * (n_max + 1.0)) /
                           (ggs + g_sq * (n_min + 1.0)));
}

double eit_width_for_photons(double n_c, const DeviceParams& p) {
  const auto& md = p.medium;
  const double center = md.delta;
  const double dip = chi_steady(center, n_c, p).imag();

  const double lo = 1e-3 * md.gamma_s;
  const double hi = 50.0 * (md.gamma + md.g * std::sqrt(n_c + 1.0) +
                            std::abs(md.delta));
  double width = 0.0;
  for (double side : {1.0, -1.0}) {
    auto f = [&](double offset) {
      return chi_steady(center + side * offset, n_c, p).imag();
    };
    const auto peak = first_peak(f, lo, hi);
    if (!peak) no_window("absorption has no local maximum");
    if ((peak->value - dip) / peak->value < kWindowContrastThreshold) {
      no_window("dip contrast below threshold");
    }
    width += crossing(f, peak->offset, 0.5 * (dip + peak->value));
  }
  return width;
}

double eit_width(double u_sq, const DeviceParams& p) {
  return eit_width_for_photons(photon_number(u_sq, p), p);
}

Polariton polariton(double u_sq, const DeviceParams& p, cplx sigma_bc,
                    double eps_p) {
  const auto& md = p.medium;
  const double n_c = photon_number(u_sq, p);
  const double tan_sq =
      md.g_p * md.g_p * md.n_atoms / (md.g * md.g * (n_c + 1.0));
  Polariton out;
  out.theta = std::atan(std::sqrt(tan_sq));
  out.cos_sq = 1.0 / (1.0 + tan_sq);
  out.sin_sq = tan_sq / (1.0 + tan_sq);
  out.v_g_ratio = out.cos_sq;
  out.psi = std::cos(out.theta) * eps_p -
            std::sin(out.theta) * std::sqrt(md.n_atoms) * sigma_bc;
  return out;
}

SpectrumTable spectrum_sweep(std::span<const double> delta_p,
                             std::span<const double> u_sq,
                             const DeviceParams& p) {
  auto check_axis = [](std::span<const double> axis, const char* name) {
    if (axis.empty()) {
      throw Error(ErrorCode::kInvalidGrid, std::string(name) + " grid is empty");
    }
    for (std::size_t i = 0; i < axis.size(); ++i) {
      if (!std::isfinite(axis[i]) || (i > 0 && !(axis[i] > axis[i - 1]))) {
        throw Error(ErrorCode::kInvalidGrid,
                    std::string(name) + " grid must be finite and increasing");
      }
    }
  };
  check_axis(delta_p, "delta_p");
  check_axis(u_sq, "u_sq");

  SpectrumTable table;
  table.delta_p.assign(delta_p.begin(), delta_p.end());
  table.u_sq.assign(u_sq.begin(), u_sq.end());
  table.im_chi.resize(delta_p.size() * u_sq.size());
  table.re_chi.resize(table.im_chi.size());

  parallel_for(u_sq.size(), [&](std::size_t iu) {
    const double n_c = photon_number(u_sq[iu], p);
    for (std::size_t idp = 0; idp < delta_p.size(); ++idp) {
      const cplx chi = chi_steady(delta_p[idp], n_c, p);
      table.im_chi[table.index(iu, idp)] = chi.imag();
      table.re_chi[table.index(iu, idp)] = chi.real();
    }
  });
  return table;
}

ModulationMetrics modulation_metrics(double u_m_sq, const DeviceParams& p,
                                     double operating_u_sq) {
  ModulationMetrics m;
  m.r_db = extinction_ratio(u_m_sq, p);
  m.a_min = im_chi_resonant(0.0, p);
  m.a_max = im_chi_resonant(u_m_sq, p);
  m.n_cmax = photon_number(0.0, p);
  m.n_cmin = photon_number(u_m_sq, p);
  try {
    m.eit_width = eit_width(operating_u_sq, p);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoWindow) throw;
  }
  const auto pol = polariton(operating_u_sq, p, cplx{}, 0.0);
  m.theta = pol.theta;
  m.v_g_ratio = pol.v_g_ratio;
  return m;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 0) return out;
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double span = hi - lo;
  const double last = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = static_cast<double>(i);
    out[i] = 2 * i < n ? lo + span * (k / last)
                       : hi - span * ((last - k) / last);
  }
  return out;
}

}  // namespace eomsim
