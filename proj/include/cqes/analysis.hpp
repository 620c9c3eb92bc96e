#pragma once

// Trajectory diagnostics: imaginary-axis crossings, tunneling times, the
// well pair a tunneling orbit oscillates between, orbit classification,
// the closed/open boundary for real energy, spiral chirality and
// self-intersection counting.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cqes/error.hpp"
#include "cqes/integrator.hpp"
#include "cqes/wells.hpp"

namespace cqes {

enum class Direction { LeftToRight, RightToLeft };

struct CrossingEvent {
  double t_cross = 0.0;
  double y_at_cross = 0.0;
  Direction direction = Direction::LeftToRight;
};

struct TunnelingStats {
  double dwell_left_mean = 0.0;
  double dwell_right_mean = 0.0;
  double tunneling_time = 0.0;
  int n_cycles = 0;
};

struct WellPair {
  WellIndex left;
  WellIndex right;
};

enum class OrbitKind { Closed, OpenEscape, Tunneling };

struct ClosedDetail {
  double period = 0.0;
  WellIndex anchor;
};

struct EscapeDetail {
  Side side = Side::Left;
};

struct TunnelingDetail {
  WellPair wells;
};

struct OrbitClass {
  OrbitKind kind = OrbitKind::Closed;
  std::variant<ClosedDetail, EscapeDetail, TunnelingDetail> detail;
};

enum class Chirality { Clockwise, Anticlockwise };

// No rule of classify_orbit matched by the end of the run.
class AmbiguousClassification : public AnalysisError {
 public:
  using AnalysisError::AnalysisError;
};

// Both bisection endpoints classified the same way.
class BracketError : public AnalysisError {
 public:
  BracketError(const std::string& what, std::string lo_class, std::string hi_class)
      : AnalysisError(what), lo_class_(std::move(lo_class)), hi_class_(std::move(hi_class)) {}
  const std::string& lo_class() const { return lo_class_; }
  const std::string& hi_class() const { return hi_class_; }

 private:
  std::string lo_class_;
  std::string hi_class_;
};

// One event per sign change of Re z between consecutive samples. Samples
// with Re z == 0 exactly carry no side; the crossing is placed at the first
// of them. Otherwise it is located by bisection on the linear interpolant
// to |Re z| <= 1e-9.
std::vector<CrossingEvent> detect_axis_crossings(const Trajectory& traj);

// Fraction of the well abscissa used as hysteresis band by
// confirmed_crossings.
inline constexpr double kCrossingBandFraction = 0.5;

// Raw crossings filtered with a hysteresis band: a change of side counts
// only once |Re z| >= band on the new side, and is timed at the last raw
// crossing into that side. Removes the brief re-crossings an orbit makes
// while skimming the axis. The result alternates in direction.
std::vector<CrossingEvent> confirmed_crossings(const Trajectory& traj, double band);
std::vector<CrossingEvent> confirmed_crossings(const Trajectory& traj,
                                               const SystemParams& params);

// Dwell statistics from an alternating crossing list. Intervals between
// consecutive crossings are full dwells; the side is the one entered by
// the earlier crossing. Throws AnalysisError for fewer than 3 crossings.
TunnelingStats tunneling_stats(std::span<const CrossingEvent> crossings);

TunnelingStats measure_tunneling(const Trajectory& traj, const SystemParams& params);

// Wells visited in the first full dwell on each side: per dwell, the
// same-side well of closest approach.
WellPair tunnel_well_pair(const Trajectory& traj, const SystemParams& params);

inline constexpr double kDefaultRecurTol = 1e-4;

// Closed: no axis crossing and the phase point returns within recur_tol of
// its initial state. Tunneling: >= 3 confirmed crossings persisting to
// t_max. OpenEscape: escaped with at most one confirmed crossing.
// Throws AmbiguousClassification otherwise.
OrbitClass classify_orbit(const Trajectory& traj, const SystemParams& params,
                          double recur_tol = kDefaultRecurTol);

struct BoundarySearch {
  // Offsets from the well center along Im z; lo must give a closed orbit
  // and hi an open one. A negative sign searches below the well.
  double closed_offset = 0.3;
  double open_offset = 0.6;
  double width = 1e-4;
  double recur_tol = kDefaultRecurTol;
  MomentumBranch branch = MomentumBranch::Principal;
};

struct BoundaryResult {
  double critical_offset = 0.0;
  double closed_offset = 0.0;
  double open_offset = 0.0;
  int evaluations = 0;
  double max_energy_drift = 0.0;  // over all evaluations
};

// Critical y offset from a well center, x held at the well's x, separating
// closed orbits from open ones at real energy. Bisection to
// search.width.
BoundaryResult closed_orbit_boundary(WellIndex well, double energy_real,
                                     const SystemParams& params, const IntegratorConfig& cfg,
                                     const BoundarySearch& search = {});

// Sign of the accumulated winding angle of z - center.
Chirality spiral_chirality(std::span<const PhaseState> segment, Complex center);

struct SpiralEpisode {
  std::vector<PhaseState> inward;
  std::vector<PhaseState> outward;
};

// First visit of the trajectory to `center` (within 2 radius) that gets
// closer than radius / 2 and winds at least one full turn each way about
// the turning point of the winding angle. Both halves are the contiguous
// runs within `radius` around that point.
SpiralEpisode spiral_episode(const Trajectory& traj, Complex center, double radius);

// Proper or touching intersections between non-adjacent segments of the
// polyline through the sampled positions.
std::size_t self_intersections(const Trajectory& traj);
std::size_t self_intersections(std::span<const Complex> polyline);

std::string to_string(Direction d);
std::string to_string(OrbitKind k);
std::string to_string(Chirality c);

}  // namespace cqes
