#include "eomsim/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>

#include "eomsim/steady_state.hpp"

namespace eomsim {

using namespace std::complex_literals;

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kNonFinite, std::string(what) + " became non-finite");
  }
}

void require_finite(cplx v, const char* what) {
  require_finite(v.real(), what);
  require_finite(v.imag(), what);
}

double detuning_from_q(double q, const DeviceParams& p) {
  return p.cavity.detuning_factor * p.cavity.G0 * q;
}

}  // namespace

const char* to_string(Method method) {
  switch (method) {
    case Method::kExponentialPiecewise: return "exponential-piecewise";
    case Method::kRk4Adaptive: return "rk4-adaptive";
  }
  return "unknown";
}

void SolverConfig::check() const {
  auto bad = [](const char* what) {
    throw Error(ErrorCode::kInvalidSolverConfig, what);
  };
  if (!(dt > 0.0) || !std::isfinite(dt)) bad("dt must be > 0");
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) bad("tolerances must be > 0");
  if (max_steps < 1) bad("max_steps must be >= 1");
  if (record_stride < 1) bad("record_stride must be >= 1");
  if (!std::isfinite(probe_detuning)) bad("probe detuning must be finite");
}

std::vector<double> Trajectory::times() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.t);
  return out;
}

std::vector<double> Trajectory::absorption() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.absorption);
  return out;
}

cplx effective_cavity_amplitude(cplx a) {
  const double n = std::norm(a);
  if (n == 0.0) return 1.0;
  return a * std::sqrt((n + 1.0) / n);
}

Mat2c bloch_matrix(cplx a, double delta_p, const DeviceParams& p) {
  const auto& md = p.medium;
  const cplx a_eff = effective_cavity_amplitude(a);
  return {cplx{md.gamma, delta_p}, -1i * md.g * a_eff,
          -1i * md.g * std::conj(a_eff),
          cplx{md.gamma_s, delta_p - md.delta}};
}

Vec2c bloch_drive(const DeviceParams& p) {
  return {1i * p.medium.probe_drive, 0.0};
}

Coherences bloch_steady_state(cplx a, double delta_p, const DeviceParams& p) {
  const Vec2c r = solve(bloch_matrix(a, delta_p, p), bloch_drive(p));
  return {r.x, r.y};
}

MechanicsState step_mechanics(const SystemState& s, double u_sq, double n_c,
                              double dt, const DeviceParams& p) {
  const auto& mc = p.mech;
  double force = u_sq * p.derived().eta;
  if (mc.include_radiation_pressure) {
    force += constants::kHbar * p.cavity.G0 * n_c;
  }
  const double q_eq = force / p.derived().spring;
  const auto phi = oscillator_propagator(mc.omega_m, mc.gamma_m, dt);
  const double y = s.q - q_eq;
  MechanicsState out;
  out.q = q_eq + phi[0] * y + phi[1] * s.qdot;
  out.qdot = phi[2] * y + phi[3] * s.qdot;
  require_finite(out.q, "oscillator displacement");
  require_finite(out.qdot, "oscillator velocity");
  return out;
}

cplx step_cavity(const SystemState& s, double dt, const DeviceParams& p) {
  const cplx rate{p.cavity.kappa, detuning_from_q(s.q, p)};
  const cplx decay = std::exp(-rate * dt);
  const cplx out = s.a * decay + p.cavity.eps_c * dt * exprel(-rate * dt);
  require_finite(out, "cavity amplitude");
  return out;
}

Coherences step_bloch(const SystemState& s, cplx a, double delta_p, double dt,
                      const DeviceParams& p) {
  const Mat2c m = bloch_matrix(a, delta_p, p);
  const Vec2c fixed = solve(m, bloch_drive(p));
  const Mat2c prop = expm(m * (-dt));
  const Vec2c r = fixed + prop * (Vec2c{s.sigma_ba, s.sigma_bc} - fixed);
  require_finite(r.x, "sigma_ba");
  require_finite(r.y, "sigma_bc");
  return {r.x, r.y};
}

SystemState initial_state(InitialCondition kind, const DriveWaveform& wave,
                          double delta_p, const DeviceParams& p) {
  SystemState s;
  if (kind == InitialCondition::kCold) return s;
  const double u0 =
      kind == InitialCondition::kDriveSteadyState ? wave.u_sq_at(0.0) : 0.0;
  s.q = cmo_displacement(u0, p);
  s.a = cavity_amplitude(u0, p);
  const auto r = bloch_steady_state(s.a, delta_p, p);
  s.sigma_ba = r.sigma_ba;
  s.sigma_bc = r.sigma_bc;
  return s;
}

TrajectoryRow make_row(const SystemState& s, double u_sq,
                       const DeviceParams& p) {
  TrajectoryRow row;
  row.t = s.t;
  row.u_sq = u_sq;
  row.q = s.q;
  row.qdot = s.qdot;
  row.a = s.a;
  row.n_c = std::norm(s.a);
  row.sigma_ba = s.sigma_ba;
  row.sigma_bc = s.sigma_bc;
  if (p.medium.probe_drive != 0.0) {
    const double scale = p.medium.gamma / p.medium.probe_drive;
    row.absorption = scale * s.sigma_ba.imag();
    row.dispersion = scale * s.sigma_ba.real();
  }
  return row;
}

double suggested_time_step(const DeviceParams& p) {
  const auto& md = p.medium;
  const double n_max = photon_number(0.0, p);
  const double fastest =
      std::max({p.mech.omega_m, p.mech.gamma_m, p.cavity.kappa, md.gamma,
                md.g * std::sqrt(n_max + 1.0)});
  return 0.05 / fastest;
}

namespace {

// Real state vector for the explicit integrator:
// q, qdot, Re a, Im a, Re s_ba, Im s_ba, Re s_bc, Im s_bc.
using StateVec = std::array<double, 8>;

StateVec pack(const SystemState& s) {
  return {s.q,           s.qdot,        s.a.real(),        s.a.imag(),
          s.sigma_ba.real(), s.sigma_ba.imag(), s.sigma_bc.real(),
          s.sigma_bc.imag()};
}

void unpack(const StateVec& y, SystemState& s) {
  s.q = y[0];
  s.qdot = y[1];
  s.a = {y[2], y[3]};
  s.sigma_ba = {y[4], y[5]};
  s.sigma_bc = {y[6], y[7]};
}

class CoupledRhs {
 public:
  CoupledRhs(const DriveWaveform& wave, const DeviceParams& p, double delta_p)
      : wave_(wave), p_(p), delta_p_(delta_p) {}

  StateVec operator()(double t, const StateVec& y) const {
    const auto& mc = p_.mech;
    const double q = y[0];
    const double qdot = y[1];
    const cplx a{y[2], y[3]};
    const Vec2c r{cplx{y[4], y[5]}, cplx{y[6], y[7]}};

    double force = wave_.u_sq_at(t) * p_.derived().eta;
    if (mc.include_radiation_pressure) {
      force += constants::kHbar * p_.cavity.G0 * std::norm(a);
    }
    const double qddot =
        force / mc.mass - mc.gamma_m * qdot - mc.omega_m * mc.omega_m * q;
    const cplx adot =
        -cplx{p_.cavity.kappa, detuning_from_q(q, p_)} * a + p_.cavity.eps_c;
    const Vec2c rdot =
        bloch_drive(p_) - bloch_matrix(a, delta_p_, p_) * r;
    return {qdot,          qddot,         adot.real(),   adot.imag(),
            rdot.x.real(), rdot.x.imag(), rdot.y.real(), rdot.y.imag()};
  }

 private:
  const DriveWaveform& wave_;
  const DeviceParams& p_;
  double delta_p_;
};

StateVec axpy(const StateVec& y, double h, const StateVec& k) {
  StateVec out;
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + h * k[i];
  return out;
}

StateVec rk4_step(const CoupledRhs& f, double t, const StateVec& y, double h) {
  const StateVec k1 = f(t, y);
  const StateVec k2 = f(t + 0.5 * h, axpy(y, 0.5 * h, k1));
  const StateVec k3 = f(t + 0.5 * h, axpy(y, 0.5 * h, k2));
  const StateVec k4 = f(t + h, axpy(y, h, k3));
  StateVec out;
  for (std::size_t i = 0; i < y.size(); ++i) {
    out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

StateVec characteristic_scales(const DriveWaveform& wave, double delta_p,
                               const DeviceParams& p) {
  const double peak = std::max(wave.u_sq_peak, wave.u_sq_floor);
  const double q = std::max(cmo_displacement(peak, p), 1e-18);
  const double a = std::max(std::abs(cavity_amplitude(0.0, p)), 1.0);
  double s_ba = 0.0;
  double s_bc = 0.0;
  for (double u : {0.0, peak}) {
    const auto r = bloch_steady_state(cavity_amplitude(u, p), delta_p, p);
    s_ba = std::max(s_ba, std::abs(r.sigma_ba));
    s_bc = std::max(s_bc, std::abs(r.sigma_bc));
  }
  s_ba = std::max(s_ba, 1e-300);
  s_bc = std::max(s_bc, 1e-300);
  return {q, q * p.mech.omega_m, a, a, s_ba, s_ba, s_bc, s_bc};
}

class ExponentialStepper {
 public:
  ExponentialStepper(const DriveWaveform& wave, const DeviceParams& p,
                     double delta_p)
      : wave_(wave), p_(p), delta_p_(delta_p) {}

  void advance(SystemState& s, double t0, double h) const {
    const double u_sq = wave_.u_sq_at(t0 + 0.5 * h);
    const auto mech = step_mechanics(s, u_sq, std::norm(s.a), h, p_);
    // Each downstream block sees its driver frozen at the step midpoint.
    SystemState mid = s;
    mid.q = 0.5 * (s.q + mech.q);
    s.q = mech.q;
    s.qdot = mech.qdot;
    const cplx a_old = s.a;
    s.a = step_cavity(mid, h, p_);
    const auto coh = step_bloch(s, 0.5 * (a_old + s.a), delta_p_, h, p_);
    s.sigma_ba = coh.sigma_ba;
    s.sigma_bc = coh.sigma_bc;
  }

 private:
  const DriveWaveform& wave_;
  const DeviceParams& p_;
  double delta_p_;
};

class AdaptiveStepper {
 public:
  AdaptiveStepper(const DriveWaveform& wave, const DeviceParams& p,
                  const SolverConfig& cfg)
      : rhs_(wave, p, cfg.probe_detuning),
        cfg_(cfg),
        scale_(characteristic_scales(wave, cfg.probe_detuning, p)),
        h_(cfg.dt) {}

  // Integrates from t0 to t1 exactly; returns the number of accepted steps.
  std::size_t advance(SystemState& s, double t0, double t1) {
    StateVec y = pack(s);
    double t = t0;
    std::size_t steps = 0;
    const double h_min = 1e-12 * (t1 - t0);
    while (t < t1) {
      const bool last = t + h_ > t1 * (1.0 - 1e-14);
      const double h = last ? t1 - t : h_;
      const StateVec full = rk4_step(rhs_, t, y, h);
      const StateVec half = rk4_step(rhs_, t, y, 0.5 * h);
      const StateVec two = rk4_step(rhs_, t + 0.5 * h, half, 0.5 * h);

      double err = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        const double tol = cfg_.abs_tol * scale_[i] +
                           cfg_.rel_tol * std::max(std::abs(y[i]),
                                                   std::abs(two[i]));
        err = std::max(err, std::abs(two[i] - full[i]) / 15.0 / tol);
      }
      if (!std::isfinite(err)) {
        throw Error(ErrorCode::kNonFinite, "rk4-adaptive state non-finite");
      }
      if (err <= 1.0) {
        for (std::size_t i = 0; i < y.size(); ++i) {
          y[i] = two[i] + (two[i] - full[i]) / 15.0;
        }
        t = last ? t1 : t + h;
        ++steps;
        if (!last || err > 0.0) {
          h_ = h * std::clamp(0.9 * std::pow(std::max(err, 1e-12), -0.2),
                              0.2, 4.0);
        }
      } else {
        h_ = h * std::max(0.2, 0.9 * std::pow(err, -0.2));
        if (h_ < h_min) {
          throw Error(ErrorCode::kStepRejected,
                      "rk4-adaptive step size underflow");
        }
      }
    }
    unpack(y, s);
    s.t = t1;
    return steps;
  }

 private:
  CoupledRhs rhs_;
  const SolverConfig& cfg_;
  StateVec scale_;
  double h_;
};

}  // namespace

Trajectory simulate(const DriveWaveform& wave, const DeviceParams& p,
                    const SolverConfig& cfg) {
  assert(p.is_validated());
  wave.check();
  cfg.check();

  const double n_raw = std::ceil(wave.duration / cfg.dt - 1e-9);
  if (n_raw > static_cast<double>(cfg.max_steps)) {
    throw Error(ErrorCode::kMaxStepsExceeded,
                "waveform needs more steps than max_steps allows");
  }
  const auto n_steps = static_cast<std::size_t>(std::max(n_raw, 1.0));
  const double h = wave.duration / static_cast<double>(n_steps);

  SystemState s = initial_state(cfg.initial, wave, cfg.probe_detuning, p);
  Trajectory traj;
  traj.rows.reserve(n_steps / cfg.record_stride + 2);
  traj.rows.push_back(make_row(s, wave.u_sq_at(0.0), p));

  auto record = [&](std::size_t k) {
    if (k % cfg.record_stride == 0 || k == n_steps) {
      traj.rows.push_back(make_row(s, wave.u_sq_at(s.t), p));
    }
  };

  if (cfg.method == Method::kExponentialPiecewise) {
    const ExponentialStepper stepper(wave, p, cfg.probe_detuning);
    for (std::size_t k = 1; k <= n_steps; ++k) {
      const double t0 = static_cast<double>(k - 1) * h;
      stepper.advance(s, t0, h);
      s.t = static_cast<double>(k) * h;
      record(k);
    }
  } else {
    AdaptiveStepper stepper(wave, p, cfg);
    std::size_t total = 0;
    for (std::size_t k = 1; k <= n_steps; ++k) {
      const double t0 = static_cast<double>(k - 1) * h;
      const double t1 = static_cast<double>(k) * h;
      total += stepper.advance(s, t0, t1);
      if (total > cfg.max_steps) {
        throw Error(ErrorCode::kMaxStepsExceeded,
                    "rk4-adaptive exceeded max_steps");
      }
      record(k);
    }
  }
  return traj;
}

}  // namespace eomsim
