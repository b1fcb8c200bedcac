#include <cmath>
#include <random>

#include "doctest.h"
#include "eomsim/error.hpp"
#include "eomsim/matrix2.hpp"

using namespace eomsim;
using namespace std::complex_literals;

namespace {

// Truncated Taylor series with scaling and squaring, as an independent check.
Mat2c expm_series(const Mat2c& b) {
  int squarings = 0;
  double norm = std::max({std::abs(b.a00), std::abs(b.a01), std::abs(b.a10),
                          std::abs(b.a11)});
  while (norm > 0.5) {
    norm /= 2.0;
    ++squarings;
  }
  const Mat2c scaled = b * std::ldexp(1.0, -squarings);
  Mat2c term = Mat2c::identity();
  Mat2c sum = Mat2c::identity();
  for (int k = 1; k < 30; ++k) {
    term = term * scaled * (1.0 / k);
    sum = sum + term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

double max_diff(const Mat2c& x, const Mat2c& y) {
  return std::max({std::abs(x.a00 - y.a00), std::abs(x.a01 - y.a01),
                   std::abs(x.a10 - y.a10), std::abs(x.a11 - y.a11)});
}

}  // namespace

TEST_SUITE("matrix2") {

TEST_CASE("expm1 and exprel") {
  CHECK(expm1(cplx{0.0, 0.0}) == cplx{0.0, 0.0});
  const cplx tiny{1e-12, -2e-12};
  CHECK(std::abs(expm1(tiny) - tiny) < 1e-23);
  CHECK(exprel(cplx{0.0, 0.0}) == cplx{1.0, 0.0});
  for (cplx z : {cplx{1e-5, 3e-5}, cplx{-0.3, 2.0}, cplx{-40.0, 7.0}, cplx{2.0, 0.0}}) {
    const cplx ref = (std::exp(z) - 1.0) / z;
    CHECK(std::abs(exprel(z) - ref) < 1e-10 * std::abs(ref) + 1e-15);
  }
}

TEST_CASE("expm of diagonal and nilpotent matrices") {
  const Mat2c d{cplx{-1.0, 2.0}, 0.0, 0.0, cplx{-3.0, 0.0}};
  const Mat2c e = expm(d);
  CHECK(std::abs(e.a00 - std::exp(cplx{-1.0, 2.0})) < 1e-15);
  CHECK(std::abs(e.a11 - std::exp(-3.0)) < 1e-15);
  CHECK(std::abs(e.a01) == 0.0);

  const Mat2c n{0.0, 5.0, 0.0, 0.0};
  const Mat2c en = expm(n);
  CHECK(max_diff(en, Mat2c{1.0, 5.0, 0.0, 1.0}) < 1e-15);
}

TEST_CASE("expm matches a series reference on random stable matrices") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double scale = std::pow(10.0, 2.0 * u(rng));
    Mat2c b{cplx{-std::abs(u(rng)) - 0.1, u(rng)}, cplx{u(rng), u(rng)},
            cplx{u(rng), u(rng)}, cplx{-std::abs(u(rng)) - 0.1, u(rng)}};
    // Shift so both eigenvalues sit in the left half plane.
    const double shift = std::abs(b.a01) + std::abs(b.a10);
    b.a00 -= shift;
    b.a11 -= shift;
    b = b * scale;
    const Mat2c got = expm(b);
    const Mat2c ref = expm_series(b);
    CHECK(max_diff(got, ref) < 1e-11);
  }
}

TEST_CASE("expm with degenerate and nearly degenerate eigenvalues") {
  const Mat2c b{cplx{-1.0, 0.0}, 1e-9, 1e-9, cplx{-1.0, 1e-12}};
  CHECK(max_diff(expm(b), expm_series(b)) < 1e-15);
  const Mat2c jordan{-2.0, 1.0, 0.0, -2.0};
  const Mat2c ej = expm(jordan);
  CHECK(std::abs(ej.a00 - std::exp(-2.0)) < 1e-15);
  CHECK(std::abs(ej.a01 - std::exp(-2.0)) < 1e-15);
}

TEST_CASE("expm on a widely split stiff spectrum") {
  // Eigenvalues near -1e-4 and -1e4.
  const Mat2c b{cplx{-1e4, 0.0}, 1.0i, 1.0i, cplx{-1e-4, 0.0}};
  const Mat2c e = expm(b);
  CHECK(std::isfinite(e.a00.real()));
  CHECK(std::abs(e.a11 - std::exp(cplx{-1e-4 - 1e-4, 0.0})) < 1e-7);
  // Only the weak off-diagonal path survives in the fast corner.
  CHECK(std::abs(e.a00) < 1e-7);
}

TEST_CASE("solve") {
  const Mat2c m{cplx{2.0, 1.0}, cplx{0.0, -1.0}, cplx{0.0, -1.0}, cplx{1e-3, 0.5}};
  const Vec2c rhs{cplx{0.0, 1.0}, 0.0};
  const Vec2c x = solve(m, rhs);
  const Vec2c back = m * x;
  CHECK((back - rhs).norm() < 1e-15);
  const Mat2c singular{1.0, 2.0, 2.0, 4.0};
  try {
    solve(singular, rhs);
    FAIL("expected SingularMatrix");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSingularMatrix);
  }
}

TEST_CASE("oscillator propagator regimes") {
  // Compare against the 2x2 real matrix exponential through expm.
  for (double damping : {0.0, 0.3, 2.0, 2.0000001, 6.0, 60.0}) {
    for (double dt : {1e-6, 1e-3, 0.5, 3.0}) {
      const double omega = 1.0;
      const Mat2c gen{0.0, 1.0, -omega * omega, -damping};
      const Mat2c ref = expm_series(gen * dt);
      const auto phi = oscillator_propagator(omega, damping, dt);
      CHECK(std::abs(phi[0] - ref.a00.real()) < 1e-12);
      CHECK(std::abs(phi[1] - ref.a01.real()) < 1e-12);
      CHECK(std::abs(phi[2] - ref.a10.real()) < 1e-12);
      CHECK(std::abs(phi[3] - ref.a11.real()) < 1e-12);
    }
  }
  const auto far = oscillator_propagator(1.0, 100.0, 1e4);
  for (double v : far) CHECK(std::isfinite(v));
}

}  // TEST_SUITE
