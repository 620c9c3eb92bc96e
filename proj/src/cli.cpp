#include "cqes/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "cqes/io.hpp"
#include "cqes/spectrum.hpp"

namespace cqes {

namespace {

using Json = nlohmann::ordered_json;

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

std::string dashed(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

double parse_real(const std::string& key, std::string_view text) {
  double value = 0.0;
  if (!text.empty() && text.front() == '+') {
    text.remove_prefix(1);
  }
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(key + ": expected a real number, got '" + std::string(text) + "'");
  }
  return value;
}

// Merged view of a JSON config file and command-line flags; flags win.
class Settings {
 public:
  explicit Settings(std::set<std::string> allowed) : allowed_(std::move(allowed)) {}

  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
      throw ConfigError("cannot open config file '" + path + "'");
    }
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw ConfigError("config file '" + path + "': " + e.what());
    }
    if (!j.is_object()) {
      throw ConfigError("config file '" + path + "' must hold a JSON object");
    }
    for (const auto& [key, value] : j.items()) {
      if (!allowed_.count(key)) {
        throw ConfigError("config file '" + path + "': unknown key '" + key + "'");
      }
      values_[key] = value;
    }
  }

  void set_flag(const std::string& key, const std::string& value) { values_[key] = value; }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  double real(const std::string& key, double fallback) const {
    const Json* v = find(key);
    if (!v) {
      return fallback;
    }
    if (v->is_number()) {
      return v->get<double>();
    }
    if (v->is_string()) {
      return parse_real(key, v->get<std::string>());
    }
    throw ConfigError(key + ": expected a real number");
  }

  long long integer(const std::string& key, long long fallback) const {
    const Json* v = find(key);
    if (!v) {
      return fallback;
    }
    if (v->is_number_integer()) {
      return v->get<long long>();
    }
    if (v->is_string()) {
      const std::string s = v->get<std::string>();
      long long value = 0;
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
      if (ec == std::errc() && ptr == s.data() + s.size() && !s.empty()) {
        return value;
      }
    }
    throw ConfigError(key + ": expected an integer");
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    const Json* v = find(key);
    if (!v) {
      return fallback;
    }
    if (!v->is_string()) {
      throw ConfigError(key + ": expected a string");
    }
    return v->get<std::string>();
  }

  Complex complex(const std::string& key, Complex fallback) const {
    const Json* v = find(key);
    if (!v) {
      return fallback;
    }
    if (v->is_number()) {
      return {v->get<double>(), 0.0};
    }
    if (v->is_string()) {
      try {
        return parse_complex(v->get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ConfigError(key + ": " + e.what());
      }
    }
    throw ConfigError(key + ": expected a complex literal a+bi");
  }

  // JSON array of numbers, or a comma separated string.
  std::vector<double> real_list(const std::string& key) const {
    const Json* v = find(key);
    if (!v) {
      throw ConfigError(key + " is required");
    }
    std::vector<double> out;
    if (v->is_array()) {
      for (const auto& x : *v) {
        if (!x.is_number()) {
          throw ConfigError(key + ": expected numbers");
        }
        out.push_back(x.get<double>());
      }
    } else if (v->is_string()) {
      std::stringstream ss(v->get<std::string>());
      std::string item;
      while (std::getline(ss, item, ',')) {
        out.push_back(parse_real(key, item));
      }
    } else {
      throw ConfigError(key + ": expected a list of numbers");
    }
    return out;
  }

 private:
  const Json* find(const std::string& key) const {
    const auto it = values_.find(key);
    return it == values_.end() ? nullptr : &it->second;
  }

  std::set<std::string> allowed_;
  std::map<std::string, Json> values_;
};

// A subcommand whose options are all collected as strings and merged with
// the optional --config file afterwards.
struct Command {
  CLI::App* app = nullptr;
  std::map<std::string, std::string> flags;
  std::string config_path;

  Command(CLI::App& parent, const std::string& name, const std::string& help,
          const std::vector<std::pair<std::string, std::string>>& options) {
    app = parent.add_subcommand(name, help);
    app->add_option("--config", config_path, "JSON file with option values");
    for (const auto& [key, desc] : options) {
      app->add_option("--" + dashed(key), flags[key], desc);
    }
  }

  Settings settings() const {
    std::set<std::string> allowed;
    for (const auto& [key, value] : flags) {
      allowed.insert(key);
    }
    Settings s(std::move(allowed));
    if (!config_path.empty()) {
      s.load_file(config_path);
    }
    for (const auto& [key, value] : flags) {
      if (app->count("--" + dashed(key)) > 0) {
        s.set_flag(key, value);
      }
    }
    return s;
  }
};

const std::vector<std::pair<std::string, std::string>> kSystemOptions = {
    {"zeta", "coupling zeta > 0 (default 0.1)"},
    {"M", "integer M >= 1 (default 3)"},
};

const std::vector<std::pair<std::string, std::string>> kIntegratorOptions = {
    {"t_max", "integration time (default from the energy, threshold 20)"},
    {"rel_tol", "relative tolerance (default 1e-10)"},
    {"abs_tol", "absolute tolerance (default 1e-12)"},
    {"dt_init", "initial step (default 1e-3)"},
    {"max_steps", "accepted step limit (default 5e7)"},
    {"drift_limit", "energy drift limit (default 1e-8)"},
    {"escape_radius", "escape bound on |Re z| (default 8)"},
    {"escape_height", "escape bound on |Im z - Im z0| (default 400, threshold 8 pi)"},
    {"recur_tol", "closed-orbit recurrence tolerance (default 1e-4)"},
};

std::vector<std::pair<std::string, std::string>> join(
    std::initializer_list<std::vector<std::pair<std::string, std::string>>> parts) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& p : parts) {
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

SystemParams system_params(const Settings& s) {
  SystemParams p;
  p.zeta = s.real("zeta", p.zeta);
  const long long m = s.integer("M", p.m_int);
  if (m < 1 || m > 1000) {
    throw ConfigError("M must be a positive integer");
  }
  p.m_int = static_cast<int>(m);
  p.validate();
  return p;
}

IntegratorConfig integrator_config(const Settings& s, double default_t,
                                   double default_escape_height = IntegratorConfig{}.escape_height) {
  IntegratorConfig c;
  c.t_max = s.real("t_max", default_t);
  c.rel_tol = s.real("rel_tol", c.rel_tol);
  c.abs_tol = s.real("abs_tol", c.abs_tol);
  c.dt_init = s.real("dt_init", c.dt_init);
  c.max_steps = s.integer("max_steps", c.max_steps);
  c.energy_drift_limit = s.real("drift_limit", c.energy_drift_limit);
  c.escape_radius = s.real("escape_radius", c.escape_radius);
  c.escape_height = s.real("escape_height", default_escape_height);
  c.validate();
  return c;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) {
    throw ConfigError("cannot write '" + path + "'");
  }
  return f;
}

// Writes to `path`, or to `fallback` when the path is empty.
template <class Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream f = open_output(path);
  fn(f);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') {
      out += "\"\"";
    } else {
      out += c == '\n' ? ' ' : c;
    }
  }
  return out + '"';
}

int cmd_simulate(const Settings& s, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.params = system_params(s);
  cfg.energy = s.complex("e", cfg.energy);
  cfg.start = parse_start(s.text("start", "origin"));
  cfg.branch = parse_branch(s.text("branch", "principal"));
  cfg.integrator = integrator_config(s, default_t_max(cfg.energy));
  cfg.recur_tol = s.real("recur_tol", cfg.recur_tol);
  cfg.trajectory_path = s.text("trajectory", "");
  cfg.events_path = s.text("events", "");
  cfg.summary_path = s.text("summary", "");

  const SimulationOutcome outcome = simulate(cfg);
  if (!cfg.trajectory_path.empty()) {
    std::ofstream f = open_output(cfg.trajectory_path);
    write_trajectory_csv(f, outcome.trajectory);
  }
  if (!cfg.events_path.empty()) {
    std::ofstream f = open_output(cfg.events_path);
    write_events_jsonl(f, outcome.crossings, outcome.classification,
                       outcome.code == ExitCode::Ambiguous ? "ambiguous" : "unclassified");
  }
  emit(cfg.summary_path, out, [&](std::ostream& os) { os << summary_json(cfg, outcome) << '\n'; });
  if (outcome.code != ExitCode::Ok) {
    err << "error: " << outcome.error << '\n';
  }
  return static_cast<int>(outcome.code);
}

int cmd_sweep(const Settings& s, std::ostream& out, std::ostream& err) {
  RunConfig base;
  base.params = system_params(s);
  base.recur_tol = s.real("recur_tol", base.recur_tol);
  const double e1 = s.real("e1", 1.0);
  const std::vector<double> e2_list = s.real_list("e2_list");
  if (e2_list.empty()) {
    throw ConfigError("e2_list is empty");
  }
  const bool positive = e2_list.front() > 0.0;
  for (double e2 : e2_list) {
    if (!std::isfinite(e2) || e2 == 0.0 || (e2 > 0.0) != positive) {
      throw ConfigError("e2_list entries must be all positive or all negative");
    }
  }
  std::optional<double> t_max;
  if (s.has("t_max")) {
    t_max = s.real("t_max", 0.0);
  }
  // Tolerances are shared by every row; the run length is set per row.
  base.integrator = integrator_config(s, default_t_max({e1, e2_list.front()}));
  const long long threads =
      s.integer("threads", std::max(1u, std::thread::hardware_concurrency()));
  if (threads < 1) {
    throw ConfigError("threads must be at least 1");
  }
  const auto rows = sweep_e2(base, e1, e2_list, static_cast<unsigned>(threads), t_max);
  emit(s.text("output", ""), out, [&](std::ostream& os) { write_sweep_csv(os, rows); });
  int code = 0;
  for (const SweepRow& r : rows) {
    if (!r.error.empty()) {
      err << "e2 = " << format_number(r.e2) << ": " << r.error << '\n';
      code = std::max(code, static_cast<int>(ExitCode::Numerical));
    }
  }
  return code;
}

int cmd_threshold(const Settings& s, std::ostream& out, std::ostream& err) {
  const SystemParams params = system_params(s);
  const Complex energy = s.complex("e", 0.8);
  if (energy.imag() != 0.0) {
    throw ConfigError("threshold needs a real energy");
  }
  WellIndex well{Side::Left, 0};
  try {
    well = parse_well(s.text("well", "left:0"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  BoundarySearch search;
  search.closed_offset = s.real("closed_offset", search.closed_offset);
  search.open_offset = s.real("open_offset", search.open_offset);
  search.width = s.real("width", search.width);
  search.recur_tol = s.real("recur_tol", search.recur_tol);
  search.branch = parse_branch(s.text("branch", "principal"));
  if (!(search.width > 0.0)) {
    throw ConfigError("width must be positive");
  }
  const IntegratorConfig cfg = integrator_config(s, kThresholdTMax, kThresholdEscapeHeight);
  try {
    const BoundaryResult r = closed_orbit_boundary(well, energy.real(), params, cfg, search);
    Json j;
    j["well"] = to_string(well);
    j["energy"] = number(energy.real());
    j["critical_offset"] = number(r.critical_offset);
    j["closed_offset"] = number(r.closed_offset);
    j["open_offset"] = number(r.open_offset);
    j["evaluations"] = r.evaluations;
    out << j.dump() << '\n';
    return 0;
  } catch (const BracketError& e) {
    err << "error: " << e.what() << "\nclosed end classified as " << e.lo_class()
        << ", open end classified as " << e.hi_class() << '\n';
    return static_cast<int>(ExitCode::Numerical);
  }
}

int cmd_wells(const Settings& s, std::ostream& out) {
  const SystemParams params = system_params(s);
  const long long n_max = s.integer("n_max", 5);
  if (n_max < 0 || n_max > 100000) {
    throw ConfigError("n_max must lie in 0..100000");
  }
  emit(s.text("output", ""), out,
       [&](std::ostream& os) { write_wells_csv(os, params, static_cast<int>(n_max)); });
  return 0;
}

int cmd_spectrum(const Settings& s, std::ostream& out) {
  const double zeta = s.real("zeta", 0.1);
  const long long m = s.integer("M", 3);
  if (m < 1 || m > 4) {
    throw UnsupportedOrderError("closed-form levels exist only for M = 1..4, got M = " +
                                std::to_string(m));
  }
  emit(s.text("output", ""), out,
       [&](std::ostream& os) { write_spectrum(os, static_cast<int>(m), zeta); });
  return 0;
}

}  // namespace

StartSpec parse_start(const std::string& text) {
  StartSpec spec;
  if (text == "origin") {
    return spec;
  }
  try {
    if (text.rfind("point:", 0) == 0) {
      const std::string body = text.substr(6);
      const auto comma = body.find(',');
      if (comma == std::string::npos) {
        throw ConfigError("start point must be written point:x,y");
      }
      spec.kind = StartSpec::Kind::Point;
      spec.point = {parse_real("start", body.substr(0, comma)),
                    parse_real("start", body.substr(comma + 1))};
      return spec;
    }
    if (text.rfind("well:", 0) == 0) {
      spec.kind = StartSpec::Kind::Well;
      spec.well = parse_well(text.substr(5));
      return spec;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("start: ") + e.what());
  }
  throw ConfigError("start must be origin, point:x,y or well:<side>:<n>, got '" + text + "'");
}

std::string to_string(const StartSpec& start) {
  switch (start.kind) {
    case StartSpec::Kind::Origin:
      return "origin";
    case StartSpec::Kind::Point:
      return "point:" + format_number(start.point.real()) + "," +
             format_number(start.point.imag());
    case StartSpec::Kind::Well:
      return "well:" + to_string(start.well);
  }
  return "";
}

Complex start_position(const StartSpec& start, const SystemParams& params) {
  switch (start.kind) {
    case StartSpec::Kind::Origin:
      return {0.0, 0.0};
    case StartSpec::Kind::Point:
      return start.point;
    case StartSpec::Kind::Well:
      return well_center(start.well, params);
  }
  return {};
}

MomentumBranch parse_branch(const std::string& text) {
  if (text == "principal") {
    return MomentumBranch::Principal;
  }
  if (text == "negated") {
    return MomentumBranch::Negated;
  }
  throw ConfigError("branch must be principal or negated, got '" + text + "'");
}

double default_t_max(Complex energy) {
  const double fallback = IntegratorConfig{}.t_max;
  if (energy.imag() == 0.0) {
    return fallback;
  }
  return std::max(fallback, 40.0 * kTauProductEstimate / std::abs(energy.imag()));
}

SimulationOutcome simulate(const RunConfig& config) {
  SimulationOutcome out;
  auto fail = [&](ExitCode code, std::string message) {
    out.code = code;
    out.error = std::move(message);
    return out;
  };
  try {
    out.z0 = start_position(config.start, config.params);
    out.p0 = initial_momentum(out.z0, config.energy, config.branch, config.params);
    out.trajectory = integrate(out.z0, out.p0, config.integrator, config.params);
  } catch (const NumericalError& e) {
    return fail(ExitCode::Numerical, e.what());
  } catch (const std::exception& e) {
    return fail(ExitCode::Usage, e.what());
  }
  out.crossings = confirmed_crossings(out.trajectory, config.params);
  const Trajectory& traj = out.trajectory;
  if (traj.termination == Termination::DriftExceeded) {
    return fail(ExitCode::Numerical, "energy drift exceeded " +
                                         format_number(config.integrator.energy_drift_limit) +
                                         " at t = " + format_number(traj.samples.back().t));
  }
  if (traj.termination == Termination::StepLimit) {
    return fail(ExitCode::Numerical, "step limit reached at t = " +
                                         format_number(traj.samples.back().t));
  }
  try {
    out.classification = classify_orbit(traj, config.params, config.recur_tol);
    if (out.classification->kind == OrbitKind::Tunneling) {
      out.stats = tunneling_stats(out.crossings);
    }
  } catch (const AmbiguousClassification& e) {
    return fail(ExitCode::Ambiguous, e.what());
  } catch (const AnalysisError& e) {
    return fail(ExitCode::Numerical, e.what());
  }
  return out;
}

std::string summary_json(const RunConfig& config, const SimulationOutcome& o) {
  Json j;
  j["zeta"] = number(config.params.zeta);
  j["M"] = config.params.m_int;
  j["energy"] = format_complex(config.energy);
  j["start"] = to_string(config.start);
  j["branch"] = to_string(config.branch);
  j["z0"] = format_complex(o.z0);
  j["p0"] = format_complex(o.p0);
  j["t_max"] = number(config.integrator.t_max);
  const Trajectory& t = o.trajectory;
  if (!t.samples.empty()) {
    j["termination"] = to_string(t.termination);
    j["t_end"] = number(t.samples.back().t);
    j["accepted_steps"] = t.accepted_steps;
    j["rejected_steps"] = t.rejected_steps;
    j["max_energy_drift"] = number(t.max_energy_drift);
  }
  j["n_crossings"] = o.crossings.size();
  if (o.classification) {
    j["classification"] = Json::parse(classification_json(o.classification));
    j["classification"].erase("type");
  } else {
    j["classification"] = {{"kind", o.code == ExitCode::Ambiguous ? "ambiguous" : "unclassified"}};
  }
  if (o.stats) {
    j["tau"] = number(o.stats->tunneling_time);
    j["dwell_left"] = number(o.stats->dwell_left_mean);
    j["dwell_right"] = number(o.stats->dwell_right_mean);
    j["n_cycles"] = o.stats->n_cycles;
  }
  if (!o.error.empty()) {
    j["error"] = o.error;
  }
  return j.dump();
}

std::vector<SweepRow> sweep_e2(const RunConfig& base, double e1,
                               const std::vector<double>& e2_list, unsigned threads,
                               std::optional<double> t_max_override) {
  std::vector<SweepRow> rows(e2_list.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < e2_list.size(); i = next++) {
      RunConfig cfg = base;
      cfg.energy = {e1, e2_list[i]};
      cfg.start = StartSpec{};
      cfg.branch = MomentumBranch::Principal;
      cfg.integrator.t_max = t_max_override.value_or(default_t_max(cfg.energy));
      const SimulationOutcome o = simulate(cfg);
      SweepRow& row = rows[i];
      row.e2 = e2_list[i];
      row.max_energy_drift = o.trajectory.max_energy_drift;
      if (o.code != ExitCode::Ok) {
        row.error = o.error;
      } else if (o.classification->kind != OrbitKind::Tunneling) {
        row.error = "orbit classified as " + to_string(o.classification->kind);
      } else {
        row.stats = o.stats;
        row.wells = std::get<TunnelingDetail>(o.classification->detail).wells;
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(rows.size())));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& th : pool) {
    th.join();
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "e2,tau,dwell_left,dwell_right,n_left,n_right,error\n";
  for (const SweepRow& r : rows) {
    os << format_number(r.e2) << ',';
    if (r.stats && r.wells) {
      os << format_number(r.stats->tunneling_time) << ','
         << format_number(r.stats->dwell_left_mean) << ','
         << format_number(r.stats->dwell_right_mean) << ',' << r.wells->left.n << ','
         << r.wells->right.n << ',';
    } else {
      os << ",,,,,";
    }
    os << csv_field(r.error) << '\n';
  }
}

void write_wells_csv(std::ostream& os, const SystemParams& params, int n_max) {
  os << "side,n,x,y\n";
  for (Side side : {Side::Left, Side::Right}) {
    for (int n = -n_max; n <= n_max; ++n) {
      const Complex c = well_center({side, n}, params);
      os << to_string(side) << ',' << n << ',' << format_number(c.real()) << ','
         << format_number(c.imag()) << '\n';
    }
  }
}

void write_spectrum(std::ostream& os, int m_int, double zeta) {
  const auto levels = qes_levels(m_int, zeta);
  const PTPhaseReport phase = pt_phase(m_int, zeta);
  os << "label,re_E,im_E,is_real\n";
  for (const QESLevel& l : levels) {
    os << l.label << ',' << format_number(l.energy.real()) << ','
       << format_number(l.energy.imag()) << ',' << (l.is_real ? "true" : "false") << '\n';
  }
  os << "# phase=" << to_string(phase.phase) << " zeta_critical="
     << (phase.zeta_critical ? format_number(*phase.zeta_critical) : std::string("none"))
     << " parity_point=" << format_complex(phase.parity_point) << '\n';
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classical complex-plane dynamics in the PT-symmetric QES potential"};
  app.require_subcommand(1);
  Command simulate_cmd(app, "simulate", "integrate one trajectory and classify it",
                       join({kSystemOptions,
                             {{"e", "energy a+bi (default 1+1i)"},
                              {"start", "origin | point:x,y | well:<side>:<n> (default origin)"},
                              {"branch", "principal | negated (default principal)"},
                              {"trajectory", "trajectory CSV path"},
                              {"events", "events JSON-lines path"},
                              {"summary", "summary JSON path (default stdout)"}},
                             kIntegratorOptions}));
  Command sweep_cmd(app, "sweep-e2", "tunneling time for a list of E2 values",
                    join({kSystemOptions,
                          {{"e1", "real part of the energy (default 1)"},
                           {"e2_list", "comma separated E2 values"},
                           {"threads", "worker threads (default: hardware)"},
                           {"output", "CSV path (default stdout)"}},
                          kIntegratorOptions}));
  Command threshold_cmd(app, "threshold", "closed/open boundary above a well at real energy",
                        join({kSystemOptions,
                              {{"e", "real energy (default 0.8)"},
                               {"well", "side:n (default left:0)"},
                               {"branch", "principal | negated (default principal)"},
                               {"closed_offset", "offset giving a closed orbit (default 0.3)"},
                               {"open_offset", "offset giving an open orbit (default 0.6)"},
                               {"width", "final bracket width (default 1e-4)"}},
                              kIntegratorOptions}));
  Command wells_cmd(app, "wells", "well lattice as CSV",
                    join({kSystemOptions,
                          {{"n_max", "labels -n_max..n_max per side (default 5)"},
                           {"output", "CSV path (default stdout)"}}}));
  Command spectrum_cmd(app, "spectrum", "closed-form QES levels and PT phase",
                       join({kSystemOptions, {{"output", "CSV path (default stdout)"}}}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::Usage);
  }

  try {
    if (*simulate_cmd.app) {
      return cmd_simulate(simulate_cmd.settings(), out, err);
    }
    if (*sweep_cmd.app) {
      return cmd_sweep(sweep_cmd.settings(), out, err);
    }
    if (*threshold_cmd.app) {
      return cmd_threshold(threshold_cmd.settings(), out, err);
    }
    if (*wells_cmd.app) {
      return cmd_wells(wells_cmd.settings(), out);
    }
    return cmd_spectrum(spectrum_cmd.settings(), out);
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::Numerical);
  } catch (const AmbiguousClassification& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::Ambiguous);
  } catch (const AnalysisError& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::Numerical);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::Usage);
  }
}

}  // namespace cqes
