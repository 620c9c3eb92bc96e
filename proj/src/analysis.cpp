#include "cqes/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <unordered_map>

namespace cqes {

namespace {

constexpr double kCrossingTol = 1e-9;

// Side of a point; 0 on the axis itself.
int side_of(double x) { return (x > 0.0) - (x < 0.0); }

Side to_side(Direction d) { return d == Direction::LeftToRight ? Side::Right : Side::Left; }

CrossingEvent locate_crossing(const PhaseState& a, const PhaseState& b) {
  const double xa = a.z.real();
  const double xb = b.z.real();
  double lo = 0.0;
  double hi = 1.0;
  double s = 0.5;
  for (int it = 0; it < 200; ++it) {
    s = 0.5 * (lo + hi);
    const double x = xa + s * (xb - xa);
    if (std::abs(x) <= kCrossingTol || hi - lo < 1e-16) {
      break;
    }
    if (side_of(x) == side_of(xa)) {
      lo = s;
    } else {
      hi = s;
    }
  }
  const double t = a.t + s * (b.t - a.t);
  const double y = a.z.imag() + s * (b.z.imag() - a.z.imag());
  const double vx = 2.0 * (a.p.real() + s * (b.p.real() - a.p.real()));
  Direction dir = xb > xa ? Direction::LeftToRight : Direction::RightToLeft;
  if (vx != 0.0) {
    dir = vx > 0.0 ? Direction::LeftToRight : Direction::RightToLeft;
  }
  return {t, y, dir};
}

// Cubic Hermite interpolation of a sampled trajectory, using the exact
// time derivatives dz/dt = 2p and dp/dt = -V'(z) at the nodes.
struct HermiteSegment {
  PhaseState a;
  PhaseState b;
  Complex dza, dzb, dpa, dpb;

  HermiteSegment(const PhaseState& s0, const PhaseState& s1, const SystemParams& params)
      : a(s0),
        b(s1),
        dza(2.0 * s0.p),
        dzb(2.0 * s1.p),
        dpa(-potential_gradient(s0.z, params)),
        dpb(-potential_gradient(s1.z, params)) {}

  PhaseState at(double s) const {
    const double h = b.t - a.t;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    return {a.t + s * h, h00 * a.z + h10 * h * dza + h01 * b.z + h11 * h * dzb,
            h00 * a.p + h10 * h * dpa + h01 * b.p + h11 * h * dpb};
  }
};

double phase_distance(const PhaseState& s, const PhaseState& ref) {
  return std::sqrt(std::norm(s.z - ref.z) + std::norm(s.p - ref.p));
}

// Golden-section minimum of the phase distance to `ref` over one segment.
std::pair<double, double> refine_minimum(const HermiteSegment& seg, const PhaseState& ref) {
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = 0.0;
  double hi = 1.0;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = phase_distance(seg.at(x1), ref);
  double f2 = phase_distance(seg.at(x2), ref);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = phase_distance(seg.at(x1), ref);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = phase_distance(seg.at(x2), ref);
    }
  }
  const double s = 0.5 * (lo + hi);
  const PhaseState best = seg.at(s);
  return {best.t, phase_distance(best, ref)};
}

// First time t > 0 at which the phase point comes back within tol of the
// initial state, after having left it by more than 1000 tol.
std::optional<double> first_recurrence(const Trajectory& traj, double tol) {
  const auto& s = traj.samples;
  if (s.size() < 3) {
    return std::nullopt;
  }
  const PhaseState& ref = s.front();
  const double departure = 1e3 * tol;
  bool departed = false;
  std::vector<double> d(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    d[i] = phase_distance(s[i], ref);
  }
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    if (!departed) {
      departed = d[k] > departure;
      continue;
    }
    if (d[k] > d[k - 1] || d[k] > d[k + 1] || d[k] > departure) {
      continue;
    }
    double best_t = s[k].t;
    double best_d = d[k];
    for (std::size_t j : {k - 1, k}) {
      const auto [t, dist] = refine_minimum(HermiteSegment(s[j], s[j + 1], traj.params), ref);
      if (dist < best_d) {
        best_d = dist;
        best_t = t;
      }
    }
    if (best_d <= tol) {
      return best_t;
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<CrossingEvent> detect_axis_crossings(const Trajectory& traj) {
  std::vector<CrossingEvent> events;
  const auto& s = traj.samples;
  std::optional<std::size_t> last_sided;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int side = side_of(s[i].z.real());
    if (side == 0) {
      continue;
    }
    if (last_sided && side_of(s[*last_sided].z.real()) != side) {
      CrossingEvent e = locate_crossing(s[*last_sided], s[i]);
      if (i - *last_sided > 1) {
        // The orbit sat on the axis in between; cross at the first such sample.
        const PhaseState& on_axis = s[*last_sided + 1];
        e.t_cross = on_axis.t;
        e.y_at_cross = on_axis.z.imag();
      }
      events.push_back(e);
    }
    last_sided = i;
  }
  return events;
}

std::vector<CrossingEvent> confirmed_crossings(const Trajectory& traj, double band) {
  const std::vector<CrossingEvent> raw = detect_axis_crossings(traj);
  std::vector<CrossingEvent> out;
  int state = 0;
  std::size_t next_raw = 0;
  std::optional<CrossingEvent> last_into[2];  // [0] into Left, [1] into Right
  for (const PhaseState& sample : traj.samples) {
    while (next_raw < raw.size() && raw[next_raw].t_cross <= sample.t) {
      const CrossingEvent& e = raw[next_raw++];
      last_into[e.direction == Direction::LeftToRight ? 1 : 0] = e;
    }
    const double x = sample.z.real();
    if (std::abs(x) < band) {
      continue;
    }
    const int side = side_of(x);
    if (state != 0 && side != state) {
      const auto& e = last_into[side > 0 ? 1 : 0];
      if (e) {
        CrossingEvent c = *e;
        c.direction = side > 0 ? Direction::LeftToRight : Direction::RightToLeft;
        out.push_back(c);
      }
    }
    state = side;
  }
  return out;
}

std::vector<CrossingEvent> confirmed_crossings(const Trajectory& traj,
                                               const SystemParams& params) {
  return confirmed_crossings(traj, kCrossingBandFraction * well_x(params));
}

TunnelingStats tunneling_stats(std::span<const CrossingEvent> crossings) {
  if (crossings.size() < 3) {
    throw AnalysisError("tunneling statistics need at least 3 axis crossings, got " +
                        std::to_string(crossings.size()));
  }
  double sum[2] = {0.0, 0.0};
  int count[2] = {0, 0};
  for (std::size_t i = 0; i + 1 < crossings.size(); ++i) {
    const int k = to_side(crossings[i].direction) == Side::Right ? 1 : 0;
    sum[k] += crossings[i + 1].t_cross - crossings[i].t_cross;
    ++count[k];
  }
  TunnelingStats stats;
  stats.dwell_left_mean = sum[0] / count[0];
  stats.dwell_right_mean = sum[1] / count[1];
  stats.tunneling_time = 0.5 * (stats.dwell_left_mean + stats.dwell_right_mean);
  stats.n_cycles = std::min(count[0], count[1]);
  return stats;
}

TunnelingStats measure_tunneling(const Trajectory& traj, const SystemParams& params) {
  const auto crossings = confirmed_crossings(traj, params);
  return tunneling_stats(crossings);
}

WellPair tunnel_well_pair(const Trajectory& traj, const SystemParams& params) {
  const auto crossings = confirmed_crossings(traj, params);
  if (crossings.size() < 3) {
    throw AnalysisError("well pair requested for an orbit with fewer than 3 confirmed crossings");
  }
  std::optional<WellIndex> found[2];
  const auto& s = traj.samples;
  std::size_t i = 0;
  for (std::size_t c = 0; c + 1 < crossings.size(); ++c) {
    const Side side = to_side(crossings[c].direction);
    const int k = side == Side::Right ? 1 : 0;
    const double t0 = crossings[c].t_cross;
    const double t1 = crossings[c + 1].t_cross;
    while (i < s.size() && s[i].t <= t0) {
      ++i;
    }
    if (found[k]) {
      continue;
    }
    std::optional<NearestWell> best;
    for (std::size_t j = i; j < s.size() && s[j].t < t1; ++j) {
      const NearestWell w = nearest_well(s[j].z, side, params);
      if (!best || w.distance < best->distance) {
        best = w;
      }
    }
    if (best) {
      found[k] = best->index;
    }
    if (found[0] && found[1]) {
      break;
    }
  }
  if (!found[0] || !found[1]) {
    throw AnalysisError("no full dwell on one side of the axis");
  }
  return {*found[0], *found[1]};
}

OrbitClass classify_orbit(const Trajectory& traj, const SystemParams& params, double recur_tol) {
  if (traj.termination == Termination::DriftExceeded ||
      traj.termination == Termination::StepLimit) {
    throw AnalysisError("cannot classify a run that ended with " + to_string(traj.termination));
  }
  if (traj.samples.empty()) {
    throw AnalysisError("cannot classify an empty trajectory");
  }
  const auto confirmed = confirmed_crossings(traj, params);
  if (confirmed.size() >= 3 && traj.termination == Termination::TimeLimit) {
    return {OrbitKind::Tunneling, TunnelingDetail{tunnel_well_pair(traj, params)}};
  }
  if (detect_axis_crossings(traj).empty()) {
    if (auto period = first_recurrence(traj, recur_tol)) {
      const WellIndex anchor = nearest_well(traj.samples.front().z, params).index;
      return {OrbitKind::Closed, ClosedDetail{*period, anchor}};
    }
  }
  if (traj.termination == Termination::Escaped && confirmed.size() <= 1) {
    const Side side = traj.samples.back().z.real() >= 0.0 ? Side::Right : Side::Left;
    return {OrbitKind::OpenEscape, EscapeDetail{side}};
  }
  throw AmbiguousClassification(
      "orbit is neither closed, escaping nor tunneling by t = " +
      std::to_string(traj.samples.back().t) + " (" + std::to_string(confirmed.size()) +
      " confirmed crossings, termination " + to_string(traj.termination) + ")");
}

BoundaryResult closed_orbit_boundary(WellIndex well, double energy_real,
                                     const SystemParams& params, const IntegratorConfig& cfg,
                                     const BoundarySearch& search) {
  const Complex center = well_center(well, params);
  const Complex energy{energy_real, 0.0};
  BoundaryResult result;

  // Closed orbits near the separatrix have long periods; allow the run to
  // be extended twice before giving up.
  auto classify_at = [&](double offset) -> std::optional<OrbitKind> {
    IntegratorConfig run_cfg = cfg;
    for (int attempt = 0; attempt < 3; ++attempt) {
      const Complex z0 = center + Complex(0.0, offset);
      const Complex p0 = initial_momentum(z0, energy, search.branch, params);
      const Trajectory traj = integrate(z0, p0, run_cfg, params);
      ++result.evaluations;
      result.max_energy_drift = std::max(result.max_energy_drift, traj.max_energy_drift);
      try {
        return classify_orbit(traj, params, search.recur_tol).kind;
      } catch (const AmbiguousClassification&) {
        run_cfg.t_max *= 2.0;
      }
    }
    return std::nullopt;
  };
  auto name = [](std::optional<OrbitKind> k) { return k ? to_string(*k) : std::string("ambiguous"); };

  double closed = search.closed_offset;
  double open = search.open_offset;
  const auto lo_kind = classify_at(closed);
  const auto hi_kind = classify_at(open);
  if (lo_kind != OrbitKind::Closed || hi_kind != OrbitKind::OpenEscape) {
    throw BracketError("closed-orbit boundary: bracket [" + std::to_string(closed) + ", " +
                           std::to_string(open) + "] classified as " + name(lo_kind) + " / " +
                           name(hi_kind) + ", expected closed / open_escape",
                       name(lo_kind), name(hi_kind));
  }
  while (std::abs(open - closed) > search.width) {
    const double mid = 0.5 * (closed + open);
    const auto kind = classify_at(mid);
    if (kind == OrbitKind::Closed) {
      closed = mid;
    } else if (kind == OrbitKind::OpenEscape) {
      open = mid;
    } else {
      throw AmbiguousClassification("closed-orbit boundary: offset " + std::to_string(mid) +
                                    " classified as " + name(kind));
    }
  }
  result.closed_offset = closed;
  result.open_offset = open;
  result.critical_offset = 0.5 * (closed + open);
  return result;
}

Chirality spiral_chirality(std::span<const PhaseState> segment, Complex center) {
  if (segment.size() < 10) {
    throw AnalysisError("spiral segment needs at least 10 samples");
  }
  double winding = 0.0;
  for (std::size_t i = 0; i < segment.size(); ++i) {
    if (std::abs(segment[i].z - center) > std::numbers::pi / 4) {
      throw AnalysisError("spiral segment leaves the pi/4 neighbourhood of its center");
    }
    if (i > 0) {
      winding += std::arg((segment[i].z - center) / (segment[i - 1].z - center));
    }
  }
  if (winding == 0.0) {
    throw AnalysisError("spiral segment has zero net winding");
  }
  return winding < 0.0 ? Chirality::Clockwise : Chirality::Anticlockwise;
}

SpiralEpisode spiral_episode(const Trajectory& traj, Complex center, double radius) {
  const auto& s = traj.samples;
  // Visits are delimited with a looser radius: the outer loops of a
  // spiral poke in and out of `radius` while the orbit is still captured.
  const double outer = 2.0 * radius;
  auto dist = [&](std::size_t k) { return std::abs(s[k].z - center); };
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && dist(i) >= outer) {
      ++i;
    }
    std::size_t j = i;
    double closest = std::numeric_limits<double>::infinity();
    while (j < s.size() && dist(j) < outer) {
      closest = std::min(closest, dist(j));
      ++j;
    }
    if (j > i && closest < 0.5 * radius) {
      // Unwrapped winding angle over the visit; the spiral reverses its
      // sense at the interior extremum.
      std::vector<double> angle(j - i);
      angle[0] = std::arg(s[i].z - center);
      for (std::size_t k = i + 1; k < j; ++k) {
        angle[k - i] = angle[k - i - 1] + std::arg((s[k].z - center) / (s[k - 1].z - center));
      }
      // Extremum among samples inside `radius`, so the turnaround belongs
      // to the captured part of the visit.
      std::size_t k_min = j;
      std::size_t k_max = j;
      for (std::size_t k = i; k < j; ++k) {
        if (dist(k) >= radius) {
          continue;
        }
        if (k_min == j || angle[k - i] < angle[k_min - i]) {
          k_min = k;
        }
        if (k_max == j || angle[k - i] > angle[k_max - i]) {
          k_max = k;
        }
      }
      auto excursion = [&](std::size_t k) {
        return std::abs(angle[k - i] - angle.front()) + std::abs(angle[k - i] - angle.back());
      };
      const std::size_t k = excursion(k_min) >= excursion(k_max) ? k_min : k_max;
      std::size_t first = k;
      while (first > i && dist(first - 1) < radius) {
        --first;
      }
      std::size_t last = k;
      while (last + 1 < j && dist(last + 1) < radius) {
        ++last;
      }
      // A flyby winds one way only; a spiral turns fully both ways.
      constexpr double kFullTurn = 2.0 * std::numbers::pi;
      if (std::abs(angle[k - i] - angle[first - i]) < kFullTurn ||
          std::abs(angle[last - i] - angle[k - i]) < kFullTurn) {
        i = j;
        continue;
      }
      SpiralEpisode ep;
      ep.inward.assign(s.begin() + static_cast<std::ptrdiff_t>(first),
                       s.begin() + static_cast<std::ptrdiff_t>(k + 1));
      ep.outward.assign(s.begin() + static_cast<std::ptrdiff_t>(k),
                        s.begin() + static_cast<std::ptrdiff_t>(last + 1));
      return ep;
    }
    i = j;
  }
  throw AnalysisError("trajectory never spirals into the given well");
}

namespace {

int orientation(Complex a, Complex b, Complex c) {
  const double v = (b.real() - a.real()) * (c.imag() - a.imag()) -
                   (b.imag() - a.imag()) * (c.real() - a.real());
  return (v > 0.0) - (v < 0.0);
}

bool on_segment(Complex a, Complex b, Complex q) {
  return std::min(a.real(), b.real()) <= q.real() && q.real() <= std::max(a.real(), b.real()) &&
         std::min(a.imag(), b.imag()) <= q.imag() && q.imag() <= std::max(a.imag(), b.imag());
}

// Closed-segment intersection; on success `where` is a point common to
// both segments.
bool segments_intersect(Complex a, Complex b, Complex c, Complex d, Complex& where) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) {
    const Complex r = b - a;
    const Complex q = d - c;
    const double denom = r.real() * q.imag() - r.imag() * q.real();
    const Complex w = c - a;
    const double t = (w.real() * q.imag() - w.imag() * q.real()) / denom;
    where = a + t * r;
    return true;
  }
  if (o1 == 0 && on_segment(a, b, c)) {
    where = c;
    return true;
  }
  if (o2 == 0 && on_segment(a, b, d)) {
    where = d;
    return true;
  }
  if (o3 == 0 && on_segment(c, d, a)) {
    where = a;
    return true;
  }
  if (o4 == 0 && on_segment(c, d, b)) {
    where = b;
    return true;
  }
  return false;
}

std::uint64_t cell_key(std::int64_t cx, std::int64_t cy) {
  return (static_cast<std::uint64_t>(cx) << 32) ^ static_cast<std::uint64_t>(cy & 0xffffffff);
}

}  // namespace

std::size_t self_intersections(std::span<const Complex> pts) {
  if (pts.size() < 4) {
    return 0;
  }
  const std::size_t nseg = pts.size() - 1;
  std::vector<double> lengths(nseg);
  for (std::size_t i = 0; i < nseg; ++i) {
    lengths[i] = std::abs(pts[i + 1] - pts[i]);
  }
  std::vector<double> sorted = lengths;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(nseg / 2),
                   sorted.end());
  const double cell = std::max(2.0 * sorted[nseg / 2], 1e-9);
  auto cell_of = [cell](double v) { return static_cast<std::int64_t>(std::floor(v / cell)); };

  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> grid;
  for (std::size_t i = 0; i < nseg; ++i) {
    const Complex a = pts[i];
    const Complex b = pts[i + 1];
    for (std::int64_t cx = cell_of(std::min(a.real(), b.real()));
         cx <= cell_of(std::max(a.real(), b.real())); ++cx) {
      for (std::int64_t cy = cell_of(std::min(a.imag(), b.imag()));
           cy <= cell_of(std::max(a.imag(), b.imag())); ++cy) {
        grid[cell_key(cx, cy)].push_back(static_cast<std::uint32_t>(i));
      }
    }
  }

  std::size_t count = 0;
  for (const auto& [key, segs] : grid) {
    for (std::size_t u = 0; u < segs.size(); ++u) {
      for (std::size_t v = u + 1; v < segs.size(); ++v) {
        const std::size_t i = std::min(segs[u], segs[v]);
        const std::size_t j = std::max(segs[u], segs[v]);
        if (j == i + 1) {
          continue;
        }
        Complex where;
        if (segments_intersect(pts[i], pts[i + 1], pts[j], pts[j + 1], where) &&
            cell_key(cell_of(where.real()), cell_of(where.imag())) == key) {
          ++count;
        }
      }
    }
  }
  return count;
}

std::size_t self_intersections(const Trajectory& traj) {
  std::vector<Complex> pts;
  pts.reserve(traj.samples.size());
  for (const PhaseState& s : traj.samples) {
    pts.push_back(s.z);
  }
  return self_intersections(pts);
}

std::string to_string(Direction d) {
  return d == Direction::LeftToRight ? "left_to_right" : "right_to_left";
}

std::string to_string(OrbitKind k) {
  switch (k) {
    case OrbitKind::Closed:
      return "closed";
    case OrbitKind::OpenEscape:
      return "open_escape";
    case OrbitKind::Tunneling:
      return "tunneling";
  }
  return "unknown";
}

std::string to_string(Chirality c) {
  return c == Chirality::Clockwise ? "clockwise" : "anticlockwise";
}

}  // namespace cqes
