#include <cmath>
#include <random>

#include "doctest.h"
#include "eomsim/steady_state.hpp"
#include "oracles/oracles.hpp"

using namespace eomsim;
using cplx = std::complex<double>;

TEST_SUITE("steady_state") {

TEST_CASE("oscillator displacement") {
  const auto p = validated(presets::rb87_cavity());
  CHECK(cmo_displacement(0.0, p) == 0.0);
  CHECK(oracle::rel_diff(cmo_displacement(1.0, p),
                         oracle::rb87::kDisplacementPerVoltSq) < 1e-14);
  CHECK(cmo_displacement(2.0, p) == 2.0 * cmo_displacement(1.0, p));
  CHECK_THROWS_AS(cmo_displacement(-1.0, p), Error);
}

TEST_CASE("cavity detuning") {
  auto raw = presets::rb87_cavity();
  const auto p = validated(raw);
  CHECK(cavity_detuning(0.0, p) == 0.0);
  CHECK(oracle::rel_diff(cavity_detuning(1.0, p),
                         oracle::rb87::kDetuningPerVoltSq) < 1e-14);
  raw.cavity.detuning_factor = 1.0;
  const auto half = validated(raw);
  CHECK(cavity_detuning(3.0, half) == cavity_detuning(3.0, p) / 2.0);
  try {
    cavity_detuning(-0.5, p);
    FAIL("expected NegativeVoltageSquared");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNegativeVoltageSquared);
  }
}

TEST_CASE("cavity amplitude and photon number") {
  const auto p = validated(presets::rb87_cavity());
  const double n_max = p.cavity.eps_c * p.cavity.eps_c /
                       (p.cavity.kappa * p.cavity.kappa);
  CHECK(oracle::rel_diff(photon_number(0.0, p), n_max) < 1e-15);
  CHECK(oracle::rel_diff(photon_number(0.0, p), oracle::rb87::kPhotonsMax) < 1e-14);
  CHECK(oracle::rel_diff(std::norm(cavity_amplitude(0.7, p)),
                         photon_number(0.7, p)) < 1e-14);
  CHECK(photon_number(1e12, p) < 1e-18);

  double prev = photon_number(0.0, p);
  for (double u = 1e-3; u < 1e3; u *= 1.3) {
    const double n = photon_number(u, p);
    CHECK(n < prev);
    prev = n;
  }
}

TEST_CASE("effective decay") {
  auto raw = presets::rb87_cavity();
  auto p = validated(raw);
  CHECK(effective_decay(0.0, p).kappa_eff == p.cavity.kappa);
  CHECK_FALSE(effective_decay(0.0, p).q_eff.has_value());
  CHECK(oracle::rel_diff(effective_decay(1.0, p).kappa_eff,
                         oracle::rb87::kKappaEffAtOneVoltSq) < 1e-14);

  const double u_sym = p.cavity.kappa / p.derived().detune_coeff;
  CHECK(oracle::rel_diff(effective_decay(u_sym, p).kappa_eff,
                         p.cavity.kappa * std::sqrt(2.0)) < 1e-14);

  raw.cavity.omega_c = 2.4e15;
  p = validated(raw);
  REQUIRE(effective_decay(0.0, p).q_eff.has_value());
  CHECK(*effective_decay(0.0, p).q_eff == doctest::Approx(2.4e15 / p.cavity.kappa));
}

TEST_CASE("steady susceptibility on resonance") {
  const auto p = validated(presets::rb87_cavity());
  const auto& md = p.medium;
  const double n_max = photon_number(0.0, p);

  const cplx chi = chi_steady(0.0, n_max, p);
  CHECK(chi.real() == 0.0);
  CHECK(oracle::rel_diff(chi.imag(), oracle::rb87::kAbsorptionMin) < 1e-13);
  CHECK(chi.imag() == doctest::Approx(3.3e-6).epsilon(0.02));

  const cplx empty = chi_steady(0.0, 0.0, p);
  CHECK(oracle::rel_diff(empty.imag(), oracle::rb87::kAbsorptionEmptyCavity) < 1e-14);
  CHECK(oracle::rel_diff(empty.imag(), md.gamma * md.gamma_s /
                                           (md.gamma * md.gamma_s + md.g * md.g)) < 1e-15);
  CHECK_THROWS_AS(chi_steady(0.0, -1.0, p), Error);
}

TEST_CASE("resonant absorption matches the complex susceptibility") {
  const auto p = validated(presets::rb87_cavity());
  for (double u : {0.0, 1e-3, 0.1, 1.0, 4.0, 100.0}) {
    const double direct = chi_steady(0.0, photon_number(u, p), p).imag();
    CHECK(oracle::rel_diff(im_chi_resonant(u, p), direct) < 1e-14);
    CHECK(oracle::rel_diff(im_chi_resonant(u, p),
                           static_cast<double>(oracle::resonant_absorption(p, u))) < 1e-13);
  }
  const auto band = absorption_band(p);
  CHECK(im_chi_resonant(0.0, p) == band.a_min);
  CHECK(im_chi_resonant(4.0, p) < band.a_max);
  CHECK(im_chi_resonant(4.0, p) > band.a_min);
}

TEST_CASE("resonant absorption rises strictly with voltage") {
  const auto p = validated(presets::rb87_waveform());
  double prev = im_chi_resonant(0.0, p);
  for (double u = 1e-2; u < 1e4; u *= 1.1) {
    const double a = im_chi_resonant(u, p);
    CHECK(a > prev);
    prev = a;
  }
}

TEST_CASE("spectral symmetry and bounds") {
  const auto p = validated(presets::rb87_cavity());
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log_n(0.0, 8.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double n_c = std::pow(10.0, log_n(rng)) - 1.0;
    for (double dp = 1e2; dp < 1e10; dp *= 1.7) {
      const cplx plus = chi_steady(dp, n_c, p);
      const cplx minus = chi_steady(-dp, n_c, p);
      CHECK(oracle::rel_diff(minus, -std::conj(plus)) < 1e-12);
      CHECK(plus.imag() > 0.0);
      CHECK(plus.imag() < 1.0);
    }
    CHECK(std::abs(chi_steady(0.0, n_c, p).real()) < 1e-14);
  }
}

TEST_CASE("probe drive strength does not enter normalized outputs") {
  auto raw = presets::rb87_cavity();
  const auto p1 = validated(raw);
  raw.medium.probe_drive *= 1e3;
  const auto p2 = validated(raw);
  for (double u : {0.0, 0.5, 3.0}) {
    CHECK(im_chi_resonant(u, p1) == im_chi_resonant(u, p2));
    CHECK(chi_steady(1e6, photon_number(u, p1), p1) ==
          chi_steady(1e6, photon_number(u, p2), p2));
  }
}

TEST_CASE("transparency window at zero voltage") {
  const auto p = validated(presets::rb87_cavity());
  const double n_c = photon_number(0.0, p);
  const auto& md = p.medium;
  REQUIRE(md.g * md.g * (n_c + 1.0) > md.gamma * md.gamma_s);
  const double center = chi_steady(0.0, n_c, p).imag();
  double right_max = 0.0;
  double left_max = 0.0;
  for (double dp = 1e3; dp < 1e10; dp *= 1.05) {
    right_max = std::max(right_max, chi_steady(dp, n_c, p).imag());
    left_max = std::max(left_max, chi_steady(-dp, n_c, p).imag());
  }
  CHECK(center < right_max);
  CHECK(center < left_max);
  CHECK(chi_steady(1e3, n_c, p).imag() > center);
}

}  // TEST_SUITE
