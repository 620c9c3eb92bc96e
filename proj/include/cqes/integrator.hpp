#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cqes/dynamics.hpp"

namespace cqes {

struct PhaseState {
  double t = 0.0;
  Complex z;
  Complex p;
};

enum class MomentumBranch { Principal, Negated };

struct IntegratorConfig {
  double dt_init = 1e-3;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double t_max = 200.0;
  std::int64_t max_steps = 50'000'000;
  // Relative to max(1, |E|).
  double energy_drift_limit = 1e-8;
  // Escape when |Re z| exceeds this.
  double escape_radius = 8.0;
  // Escape when Im z moves this far from its starting value. Open orbits
  // at real energy run off along the imaginary direction.
  double escape_height = 400.0;

  void validate() const;
};

enum class Termination { TimeLimit, StepLimit, Escaped, DriftExceeded };

struct Trajectory {
  SystemParams params;
  Complex energy;
  std::vector<PhaseState> samples;
  Termination termination = Termination::TimeLimit;
  double max_energy_drift = 0.0;
  std::int64_t accepted_steps = 0;
  std::int64_t rejected_steps = 0;
};

struct Derivative {
  Complex dz_dt;
  Complex dp_dt;
};

// p0 = +-sqrt(E - V(z0)) on the principal branch of the complex root.
Complex initial_momentum(Complex z0, Complex energy, MomentumBranch branch,
                         const SystemParams& params);

// Hamilton's equations for H = p^2 + V: dz/dt = 2p, dp/dt = -dV/dz.
Derivative derivative(const PhaseState& state, const SystemParams& params);

// Dormand-Prince 5(4) with PI step-size control. Every accepted step is
// retained as a sample. Throws NumericalError if the state turns non-finite.
Trajectory integrate(Complex z0, Complex p0, const IntegratorConfig& config,
                     const SystemParams& params);

// |H(z, p) - E| / max(1, |E|)
double relative_energy_error(const PhaseState& s, Complex energy, const SystemParams& params);

std::string to_string(Termination t);
std::string to_string(MomentumBranch b);

}  // namespace cqes
