#include "cqes/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "cqes/detail/kernels.hpp"
#include "cqes/error.hpp"

namespace cqes {

void IntegratorConfig::validate() const {
  const bool ok = dt_init > 0.0 && rel_tol > 0.0 && abs_tol > 0.0 && t_max > 0.0 &&
                  max_steps >= 1 && energy_drift_limit > 0.0 && escape_radius > 0.0 &&
                  escape_height > 0.0;
  if (!ok) {
    throw DomainError("integrator config: tolerances, limits and t_max must be positive");
  }
}

Complex initial_momentum(Complex z0, Complex energy, MomentumBranch branch,
                         const SystemParams& params) {
  const Complex p = std::sqrt(energy - potential(z0, params));
  return branch == MomentumBranch::Principal ? p : -p;
}

Derivative derivative(const PhaseState& state, const SystemParams& params) {
  return {2.0 * state.p, -potential_gradient(state.z, params)};
}

double relative_energy_error(const PhaseState& s, Complex energy, const SystemParams& params) {
  return std::abs(hamiltonian(s.z, s.p, params) - energy) / std::max(1.0, std::abs(energy));
}

namespace {

// Dormand & Prince (1980) RK5(4)7M tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// b - bhat
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

// PI controller constants (Hairer, Norsett & Wanner, II.4).
constexpr double kBeta = 0.04;
constexpr double kAlpha = 0.2 - 0.75 * kBeta;
constexpr double kSafety = 0.9;
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 10.0;
// Per-step energy error allowed, as a fraction of rel_tol max(1, |E|).
constexpr double kEnergyTolFactor = 0.1;

using Real = long double;
using CReal = std::complex<Real>;

// Phase-space point in extended precision. Samples are rounded to double
// on output; the extra mantissa bits keep the state's own rounding well
// below the drift limit when |V| reaches 1e7 on far excursions.
struct Vec {
  CReal z;
  CReal p;
};

Vec operator+(Vec a, Vec b) { return {a.z + b.z, a.p + b.p}; }
Vec operator*(Real h, Vec a) { return {h * a.z, h * a.p}; }

struct Model {
  Real zeta;
  Real m;

  Vec rhs(Vec y) const { return {Real(2) * y.p, -detail::potential_gradient(y.z, zeta, m)}; }
  CReal energy(Vec y) const { return y.p * y.p + detail::potential(y.z, zeta, m); }
};

bool finite(CReal c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

// RMS of the component errors scaled by abs_tol + rel_tol |y_i|, combined
// with the first-order energy error of the step, dH = 2p dp + V'(z) dz,
// scaled by kEnergyTolFactor rel_tol max(1, |E|). The energy term only
// binds on far excursions where |V| is large.
double scaled_error(Vec y0, Vec y1, Vec err, CReal gradient, const IntegratorConfig& cfg,
                    Real energy_scale) {
  const std::array<Real, 4> e{err.z.real(), err.z.imag(), err.p.real(), err.p.imag()};
  const std::array<Real, 4> a{y0.z.real(), y0.z.imag(), y0.p.real(), y0.p.imag()};
  const std::array<Real, 4> b{y1.z.real(), y1.z.imag(), y1.p.real(), y1.p.imag()};
  Real sum = 0.0L;
  for (std::size_t i = 0; i < 4; ++i) {
    const Real sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(a[i]), std::abs(b[i]));
    sum += (e[i] / sc) * (e[i] / sc);
  }
  const Real component = std::sqrt(sum / 4.0L);
  const Real d_energy = std::abs(Real(2) * y1.p * err.p + gradient * err.z);
  const Real energy = d_energy / (cfg.rel_tol * energy_scale * kEnergyTolFactor);
  return static_cast<double>(std::max(component, energy));
}

// Kahan-compensated accumulation: small increments added to |Im z| ~ 60
// would otherwise lose their low bits on every step of a far excursion.
void compensated_add(CReal& sum, CReal& carry, CReal increment) {
  const CReal y = increment - carry;
  const CReal t = sum + y;
  carry = (t - sum) - y;
  sum = t;
}

PhaseState to_sample(Real t, Vec y) {
  return {static_cast<double>(t),
          {static_cast<double>(y.z.real()), static_cast<double>(y.z.imag())},
          {static_cast<double>(y.p.real()), static_cast<double>(y.p.imag())}};
}

}  // namespace

Trajectory integrate(Complex z0, Complex p0, const IntegratorConfig& config,
                     const SystemParams& params) {
  config.validate();
  params.validate();
  if (!is_finite(z0) || !is_finite(p0)) {
    throw DomainError("integrate: non-finite initial state");
  }

  Trajectory traj;
  traj.params = params;
  traj.energy = hamiltonian(z0, p0, params);
  if (!is_finite(traj.energy)) {
    throw DomainError("integrate: initial energy is not finite");
  }
  traj.samples.push_back({0.0, z0, p0});

  const Model model{params.zeta, static_cast<Real>(params.m_int)};
  Vec y{CReal(z0.real(), z0.imag()), CReal(p0.real(), p0.imag())};
  const CReal energy = model.energy(y);
  const Real energy_scale = std::max(Real(1), std::abs(energy));
  const Real t_max = config.t_max;

  Vec carry{};
  Real t = 0.0L;
  Real h = std::min<Real>(config.dt_init, t_max);
  double err_prev = 1e-4;
  bool last_rejected = false;
  Vec k1 = model.rhs(y);

  std::int64_t steps = 0;
  while (true) {
    if (t >= t_max) {
      traj.termination = Termination::TimeLimit;
      break;
    }
    if (steps >= config.max_steps) {
      traj.termination = Termination::StepLimit;
      break;
    }
    ++steps;
    const bool final_step = t + h >= t_max;
    if (final_step) {
      h = t_max - t;
    }

    const Vec k2 = model.rhs(y + (h * a21) * k1);
    const Vec k3 = model.rhs(y + h * (a31 * k1 + a32 * k2));
    const Vec k4 = model.rhs(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vec k5 = model.rhs(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vec k6 = model.rhs(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Vec incr = h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Vec y_new = y + incr;
    const Vec k7 = model.rhs(y_new);
    const Vec err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    if (!finite(y_new.z) || !finite(y_new.p) || !finite(err.z) || !finite(err.p)) {
      if (h < 1e-14L) {
        throw NumericalError("integrate: state became non-finite at t = " +
                             std::to_string(static_cast<double>(t)));
      }
      h *= 0.1L;
      last_rejected = true;
      ++traj.rejected_steps;
      continue;
    }

    const double err_norm = scaled_error(y, y_new, err, -k7.p, config, energy_scale);
    if (err_norm > 1.0) {
      h *= std::max(kFacMin, kSafety * std::pow(err_norm, -kAlpha));
      last_rejected = true;
      ++traj.rejected_steps;
      continue;
    }

    compensated_add(y.z, carry.z, incr.z);
    compensated_add(y.p, carry.p, incr.p);
    t = final_step ? t_max : t + h;
    k1 = k7;
    ++traj.accepted_steps;

    const double drift = static_cast<double>(std::abs(model.energy(y) - energy) / energy_scale);
    if (drift > config.energy_drift_limit) {
      traj.termination = Termination::DriftExceeded;
      break;
    }
    traj.max_energy_drift = std::max(traj.max_energy_drift, drift);
    traj.samples.push_back(to_sample(t, y));

    if (std::abs(y.z.real()) > config.escape_radius ||
        std::abs(y.z.imag() - z0.imag()) > config.escape_height) {
      traj.termination = Termination::Escaped;
      break;
    }

    const double e = std::max(err_norm, 1e-10);
    double fac = std::clamp(kSafety * std::pow(e, -kAlpha) * std::pow(err_prev, kBeta),
                            kFacMin, kFacMax);
    if (last_rejected) {
      fac = std::min(fac, 1.0);
    }
    h *= fac;
    err_prev = e;
    last_rejected = false;
  }
  return traj;
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::TimeLimit:
      return "time_limit";
    case Termination::StepLimit:
      return "step_limit";
    case Termination::Escaped:
      return "escaped";
    case Termination::DriftExceeded:
      return "drift_exceeded";
  }
  return "unknown";
}

std::string to_string(MomentumBranch b) {
  return b == MomentumBranch::Principal ? "principal" : "negated";
}

}  // namespace cqes
