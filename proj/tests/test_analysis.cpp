#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cqes/analysis.hpp"
#include "oracles.hpp"

using cqes::Complex;
using cqes::Direction;
using cqes::IntegratorConfig;
using cqes::OrbitKind;
using cqes::PhaseState;
using cqes::Side;
using cqes::SystemParams;
using cqes::Trajectory;
using cqes::WellIndex;

namespace {

// Re z moves linearly between -3 and +3, crossing zero at the given times.
Trajectory square_wave(const std::vector<double>& crossings, double t_end, double dt) {
  Trajectory t;
  t.params = {0.1, 3};
  int side = -1;
  std::size_t next = 0;
  double last_cross = -1e9;
  for (double time = -5.0; time <= t_end; time += dt) {
    while (next < crossings.size() && crossings[next] <= time) {
      last_cross = crossings[next++];
      side = -side;
    }
    const double since = time - last_cross;
    const double x = side * std::min(3.0, 6.0 * since);
    // Direction of travel is encoded in Re p.
    t.samples.push_back({time, Complex(x, 0.1 * time), Complex(side * (since < 0.5 ? 1.0 : 0.0), 0.0)});
  }
  t.termination = cqes::Termination::TimeLimit;
  return t;
}

Trajectory run(Complex z0, Complex e, const SystemParams& p, double t_max) {
  IntegratorConfig cfg;
  cfg.t_max = t_max;
  return cqes::integrate(z0, cqes::initial_momentum(z0, e, cqes::MomentumBranch::Principal, p),
                         cfg, p);
}

}  // namespace

TEST_CASE("crossing located on the linear interpolant") {
  Trajectory t;
  t.samples = {{0.0, Complex(-1.0, 2.0), Complex(1.0, 0.0)},
               {1.0, Complex(3.0, 6.0), Complex(1.0, 0.0)},
               {2.0, Complex(0.0, 7.0), Complex(-1.0, 0.0)},
               {3.0, Complex(-1.0, 8.0), Complex(-1.0, 0.0)}};
  const auto c = cqes::detect_axis_crossings(t);
  REQUIRE(c.size() == 2);
  CHECK(c[0].t_cross == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(c[0].y_at_cross == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(c[0].direction == Direction::LeftToRight);
  // The sample exactly on the axis carries no side.
  CHECK(c[1].t_cross == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(c[1].direction == Direction::RightToLeft);
}

TEST_CASE("tunneling statistics from synthetic crossings") {
  std::vector<cqes::CrossingEvent> ev;
  const double times[] = {0, 10, 30, 40, 60};
  for (int k = 0; k < 5; ++k) {
    ev.push_back({times[k], 0.0, k % 2 == 0 ? Direction::LeftToRight : Direction::RightToLeft});
  }
  const auto s = cqes::tunneling_stats(ev);
  CHECK(s.dwell_right_mean == doctest::Approx(10.0));
  CHECK(s.dwell_left_mean == doctest::Approx(20.0));
  CHECK(s.tunneling_time == doctest::Approx(15.0));
  CHECK(s.n_cycles == 2);
  CHECK_THROWS_AS(cqes::tunneling_stats(std::span(ev).first(2)), cqes::AnalysisError);

  const Trajectory t = square_wave({0, 10, 30, 40, 60}, 70.0, 0.01);
  const auto m = cqes::measure_tunneling(t, t.params);
  CHECK(m.tunneling_time == doctest::Approx(15.0).epsilon(1e-6));
}

TEST_CASE("hysteresis drops brief re-crossings") {
  Trajectory t = square_wave({0, 10, 30, 40, 60}, 70.0, 0.01);
  // A shallow excursion to x = -0.2 around t = 20 crosses the axis twice
  // without reaching the band.
  for (auto& s : t.samples) {
    if (s.t > 19.0 && s.t < 21.0) {
      s.z = Complex(0.2 - 0.4 * (1.0 - std::abs(s.t - 20.0)), s.z.imag());
    }
  }
  const auto raw = cqes::detect_axis_crossings(t);
  const auto confirmed = cqes::confirmed_crossings(t, t.params);
  CHECK(raw.size() > confirmed.size());
  REQUIRE(confirmed.size() == 5);
  CHECK(confirmed[2].t_cross == doctest::Approx(30.0).epsilon(1e-6));
}

TEST_CASE("tunneling orbit") {
  const SystemParams p{0.1, 3};
  const Trajectory t = run(0.0, {1.0, 1.0}, p, 200.0);
  const auto cls = cqes::classify_orbit(t, p);
  REQUIRE(cls.kind == OrbitKind::Tunneling);
  const auto wells = std::get<cqes::TunnelingDetail>(cls.detail).wells;
  CHECK(wells.left == WellIndex{Side::Left, -10});
  CHECK(wells.right == WellIndex{Side::Right, 10});
  const auto crossings = cqes::confirmed_crossings(t, p);
  for (std::size_t i = 1; i < crossings.size(); ++i) {
    CHECK(crossings[i].direction != crossings[i - 1].direction);
  }
  const auto stats = cqes::measure_tunneling(t, p);
  CHECK(stats.dwell_left_mean > 0.0);
  CHECK(stats.dwell_right_mean > 0.0);

  // Twice the sample density leaves tau unchanged.
  const auto dense = cqes::measure_tunneling(oracle::densify(t), p);
  CHECK(std::abs(dense.tunneling_time - stats.tunneling_time) <= 1e-3 * stats.tunneling_time);
}

TEST_CASE("real energy: closed and open orbits") {
  const SystemParams p{0.1, 3};
  const Complex c = cqes::well_center({Side::Left, 0}, p);
  const Trajectory closed = run(c + Complex(0.0, 0.3), 0.8, p, 50.0);
  const auto cc = cqes::classify_orbit(closed, p);
  REQUIRE(cc.kind == OrbitKind::Closed);
  const auto detail = std::get<cqes::ClosedDetail>(cc.detail);
  CHECK(detail.period > 0.0);
  CHECK(detail.anchor == WellIndex{Side::Left, 0});

  const Trajectory open = run(c + Complex(0.0, 0.6), 0.8, p, 200.0);
  CHECK(cqes::classify_orbit(open, p).kind == OrbitKind::OpenEscape);

  const Trajectory origin = run(0.0, 0.8, p, 200.0);
  CHECK_NOTHROW(cqes::classify_orbit(origin, p));
  CHECK(cqes::classify_orbit(origin, p).kind != OrbitKind::Tunneling);
}

TEST_CASE("ambiguous and unclassifiable runs") {
  const SystemParams p{0.1, 3};
  const Trajectory short_run = run(0.0, {1.0, 1.0}, p, 5.0);
  CHECK_THROWS_AS(cqes::classify_orbit(short_run, p), cqes::AmbiguousClassification);
  Trajectory drift = short_run;
  drift.termination = cqes::Termination::DriftExceeded;
  CHECK_THROWS_AS(cqes::classify_orbit(drift, p), cqes::AnalysisError);
}

TEST_CASE("closed-orbit boundary bracket failure") {
  const SystemParams p{0.1, 3};
  IntegratorConfig cfg;
  cqes::BoundarySearch search;
  search.closed_offset = 0.6;
  search.open_offset = 0.7;
  try {
    cqes::closed_orbit_boundary({Side::Left, 0}, 0.8, p, cfg, search);
    FAIL("expected BracketError");
  } catch (const cqes::BracketError& e) {
    CHECK(e.lo_class() == "open_escape");
    CHECK(e.hi_class() == "open_escape");
  }
}

TEST_CASE("spiral chirality") {
  const Complex centre(1.0, -2.0);
  std::vector<PhaseState> cw;
  std::vector<PhaseState> acw;
  for (int k = 0; k < 200; ++k) {
    const double t = 0.05 * k;
    const double r = 0.5 - 0.002 * k;
    cw.push_back({t, centre + r * std::exp(Complex(0.0, -3.0 * t)), 0.0});
    acw.push_back({t, centre + r * std::exp(Complex(0.0, 3.0 * t)), 0.0});
  }
  CHECK(cqes::spiral_chirality(cw, centre) == cqes::Chirality::Clockwise);
  CHECK(cqes::spiral_chirality(acw, centre) == cqes::Chirality::Anticlockwise);
  CHECK_THROWS_AS(cqes::spiral_chirality(std::span(cw).first(5), centre), cqes::AnalysisError);
  std::vector<PhaseState> far = cw;
  far[3].z = centre + 2.0;
  CHECK_THROWS_AS(cqes::spiral_chirality(far, centre), cqes::AnalysisError);
}

TEST_CASE("spiral episode of a tunneling run") {
  const SystemParams p{0.1, 3};
  for (double e2 : {1.0, -1.0}) {
    const Trajectory t = run(0.0, {1.0, e2}, p, 200.0);
    const auto pair = cqes::tunnel_well_pair(t, p);
    for (WellIndex w : {pair.left, pair.right}) {
      const Complex c = cqes::well_center(w, p);
      const auto ep = cqes::spiral_episode(t, c, std::numbers::pi / 4);
      CHECK(ep.inward.back().t == ep.outward.front().t);
      const auto in = cqes::spiral_chirality(ep.inward, c);
      const auto out = cqes::spiral_chirality(ep.outward, c);
      CHECK(in != out);
      CHECK(in == (e2 > 0 ? cqes::Chirality::Clockwise : cqes::Chirality::Anticlockwise));
    }
  }
}

TEST_CASE("self intersections") {
  std::vector<Complex> line;
  for (int k = 0; k < 1000; ++k) {
    line.emplace_back(0.01 * k, 0.02 * k);
  }
  CHECK(cqes::self_intersections(line) == 0);

  std::vector<Complex> eight;
  const int n = 997;
  for (int k = 0; k < n; ++k) {
    const double t = 0.05 + 2.0 * std::numbers::pi * k / n;
    eight.emplace_back(std::sin(t), 0.5 * std::sin(2.0 * t));
  }
  CHECK(cqes::self_intersections(eight) == 1);
}
