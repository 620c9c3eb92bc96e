#pragma once

// Experiment drivers behind the command-line tool: single runs, the E2
// sweep, the closed-orbit threshold search, the well table and the QES
// spectrum.

#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "cqes/analysis.hpp"

namespace cqes {

enum class ExitCode { Ok = 0, Usage = 1, Numerical = 2, Ambiguous = 3 };

// Invalid flag or configuration value.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct StartSpec {
  enum class Kind { Origin, Point, Well };
  Kind kind = Kind::Origin;
  Complex point{};
  WellIndex well{};
};

// "origin", "point:x,y", "well:<side>:<n>"
StartSpec parse_start(const std::string& text);
std::string to_string(const StartSpec& start);
Complex start_position(const StartSpec& start, const SystemParams& params);

MomentumBranch parse_branch(const std::string& text);

// Rough tunneling time from E2 * tau ~ 16.
inline constexpr double kTauProductEstimate = 16.0;

// Run length capturing about 20 tunneling cycles: 40 times the estimated
// tau, at least 200. Real energies get 200.
double default_t_max(Complex energy);

// Threshold search defaults. Closed orbits at real energy recur within a
// time unit and stay inside their well's cell; open ones leave it within a
// few time units. Short runs keep near-separatrix orbits, whose excursions
// reach |V| ~ 1e8, within the energy drift limit.
inline constexpr double kThresholdTMax = 20.0;
inline constexpr double kThresholdEscapeHeight = 8.0 * std::numbers::pi;

struct RunConfig {
  SystemParams params;
  Complex energy{1.0, 1.0};
  StartSpec start;
  MomentumBranch branch = MomentumBranch::Principal;
  IntegratorConfig integrator;  // t_max already resolved
  double recur_tol = kDefaultRecurTol;
  std::string trajectory_path;  // empty: not written
  std::string events_path;      // empty: not written
  std::string summary_path;     // empty: summary goes to the output stream
};

struct SimulationOutcome {
  Complex z0{};
  Complex p0{};
  Trajectory trajectory;
  std::vector<CrossingEvent> crossings;  // confirmed
  std::optional<OrbitClass> classification;
  std::optional<TunnelingStats> stats;
  ExitCode code = ExitCode::Ok;
  std::string error;
};

// initial_momentum -> integrate -> classify_orbit -> (tunneling) stats.
// Failures are reported through code / error, never thrown.
SimulationOutcome simulate(const RunConfig& config);

// Single-line JSON summary of a run.
std::string summary_json(const RunConfig& config, const SimulationOutcome& outcome);

struct SweepRow {
  double e2 = 0.0;
  std::optional<TunnelingStats> stats;
  std::optional<WellPair> wells;
  double max_energy_drift = 0.0;
  std::string error;
};

// One origin-start, principal-branch simulate per E2 on a pool of
// `threads` workers. Rows come back in input order. `base` supplies
// params, tolerances and, if t_max_override is set, the run length.
std::vector<SweepRow> sweep_e2(const RunConfig& base, double e1,
                               const std::vector<double>& e2_list, unsigned threads,
                               std::optional<double> t_max_override);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

void write_wells_csv(std::ostream& os, const SystemParams& params, int n_max);

void write_spectrum(std::ostream& os, int m_int, double zeta);

// Full command line: argv[0] is the program name. Returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cqes
