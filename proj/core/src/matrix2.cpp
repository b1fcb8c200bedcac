#include "eomsim/matrix2.hpp"

#include <cmath>

#include "eomsim/error.hpp"

namespace eomsim {

cplx expm1(cplx z) {
  const double x = z.real();
  const double y = z.imag();
  const double half_sin = std::sin(0.5 * y);
  // e^x cos y - 1 = expm1(x) cos y - 2 sin^2(y/2)
  const double re = std::expm1(x) * std::cos(y) - 2.0 * half_sin * half_sin;
  const double im = std::exp(x) * std::sin(y);
  return {re, im};
}

cplx exprel(cplx z) {
  if (std::abs(z) < 1e-4) {
    return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0)));
  }
  return expm1(z) / z;
}

Mat2c expm(const Mat2c& b) {
  const cplx mu = 0.5 * b.trace();
  const cplx half_diff = 0.5 * (b.a00 - b.a11);
  cplx s = std::sqrt(half_diff * half_diff + b.a01 * b.a10);
  if (s.real() < 0.0) s = -s;

  // Eigenvalues: lam_hi = mu + s, lam_lo = mu - s, Re(lam_hi) >= Re(lam_lo).
  const cplx lam_lo = mu - s;
  const cplx e_lo = std::exp(lam_lo);
  cplx divided;  // (e^{lam_hi} - e^{lam_lo}) / (lam_hi - lam_lo)
  cplx mean;     // (e^{lam_hi} + e^{lam_lo}) / 2
  if (s.real() < 16.0) {
    divided = e_lo * exprel(2.0 * s);
    mean = e_lo + s * divided;
  } else {
    // Widely split spectrum: e_lo may underflow while e_hi is O(1).
    const cplx e_hi = std::exp(mu + s);
    divided = (e_hi - e_lo) / (2.0 * s);
    mean = 0.5 * (e_hi + e_lo);
  }

  const Mat2c shifted{half_diff, b.a01, b.a10, -half_diff};
  return Mat2c::identity() * mean + shifted * divided;
}

Vec2c solve(const Mat2c& m, const Vec2c& rhs) {
  const cplx det = m.det();
  const double scale = std::max({std::abs(m.a00), std::abs(m.a01),
                                 std::abs(m.a10), std::abs(m.a11)});
  if (!(std::abs(det) > 1e-300) || std::abs(det) < 1e-30 * scale * scale) {
    throw Error(ErrorCode::kSingularMatrix, "2x2 system is singular");
  }
  return {(m.a11 * rhs.x - m.a01 * rhs.y) / det,
          (m.a00 * rhs.y - m.a10 * rhs.x) / det};
}

std::array<double, 4> oscillator_propagator(double omega, double damping,
                                            double dt) {
  const double beta = 0.5 * damping;
  // w > 0 underdamped (w = omega_d^2), w < 0 overdamped.
  const double w = omega * omega - beta * beta;
  const double wt2 = w * dt * dt;

  // c = e^{-beta dt} C(dt), sn = e^{-beta dt} S(dt), where C is cos / cosh
  // and S is sin(omega_d t)/omega_d or its hyperbolic counterpart.
  double c = 0.0;
  double sn = 0.0;
  if (std::abs(wt2) < 1e-6) {
    const double decay = std::exp(-beta * dt);
    c = decay * (1.0 - wt2 / 2.0 + wt2 * wt2 / 24.0 - wt2 * wt2 * wt2 / 720.0);
    sn = decay * dt *
         (1.0 - wt2 / 6.0 + wt2 * wt2 / 120.0 - wt2 * wt2 * wt2 / 5040.0);
  } else if (w > 0.0) {
    const double wd = std::sqrt(w);
    const double decay = std::exp(-beta * dt);
    c = decay * std::cos(wd * dt);
    sn = decay * std::sin(wd * dt) / wd;
  } else {
    // Combine exponentials directly so large dt cannot overflow cosh/sinh.
    const double sd = std::sqrt(-w);
    const double slow = std::exp((sd - beta) * dt);
    const double fast = std::exp(-(sd + beta) * dt);
    c = 0.5 * (slow + fast);
    sn = 0.5 * (slow - fast) / sd;
  }
  // [[c + beta sn, sn], [-omega^2 sn, c - beta sn]]
  return {c + beta * sn, sn, -omega * omega * sn, c - beta * sn};
}

}  // namespace eomsim
