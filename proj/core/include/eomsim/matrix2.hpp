#pragma once

#include <array>
#include <complex>

namespace eomsim {

using cplx = std::complex<double>;

struct Vec2c {
  cplx x;
  cplx y;

  Vec2c operator+(const Vec2c& o) const { return {x + o.x, y + o.y}; }
  Vec2c operator-(const Vec2c& o) const { return {x - o.x, y - o.y}; }
  Vec2c operator*(cplx s) const { return {x * s, y * s}; }
  double norm() const { return std::sqrt(std::norm(x) + std::norm(y)); }
};

// Row-major 2x2 complex matrix.
struct Mat2c {
  cplx a00, a01, a10, a11;

  static Mat2c identity() { return {1.0, 0.0, 0.0, 1.0}; }

  cplx trace() const { return a00 + a11; }
  cplx det() const { return a00 * a11 - a01 * a10; }

  Mat2c operator*(cplx s) const { return {a00 * s, a01 * s, a10 * s, a11 * s}; }
  Mat2c operator+(const Mat2c& o) const {
    return {a00 + o.a00, a01 + o.a01, a10 + o.a10, a11 + o.a11};
  }
  Mat2c operator*(const Mat2c& o) const {
    return {a00 * o.a00 + a01 * o.a10, a00 * o.a01 + a01 * o.a11,
            a10 * o.a00 + a11 * o.a10, a10 * o.a01 + a11 * o.a11};
  }
  Vec2c operator*(const Vec2c& v) const {
    return {a00 * v.x + a01 * v.y, a10 * v.x + a11 * v.y};
  }
};

// e^z - 1 without cancellation for small |z|.
cplx expm1(cplx z);

// (e^z - 1) / z, equal to 1 at z = 0.
cplx exprel(cplx z);

// e^B for a 2x2 matrix whose eigenvalues have non-positive real part.
// Closed form via the eigenvalues mu +- s of B:
//   e^B = e^mu cosh(s) I + e^mu sinh(s)/s (B - mu I),
// with the divided difference evaluated through exprel so nearly
// degenerate eigenvalues need no separate branch.
Mat2c expm(const Mat2c& b);

// Solves m x = rhs. Throws Error(kSingularMatrix) if det m is negligible
// against the matrix scale.
Vec2c solve(const Mat2c& m, const Vec2c& rhs);

// Exact propagator over dt of the damped oscillator
//   y'' + damping y' + omega^2 y = 0
// acting on (y, y'). Valid for under-, over- and critically damped cases.
std::array<double, 4> oscillator_propagator(double omega, double damping,
                                            double dt);

}  // namespace eomsim
