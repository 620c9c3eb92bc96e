#include "cqes/wells.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "cqes/error.hpp"

namespace cqes {

namespace {

// (4n + offset) pi / 4 rounded once from extended precision, so the
// center is the double nearest the exact lattice point.
double lattice_y(int n, int offset) {
  constexpr long double kQuarterPi = std::numbers::pi_v<long double> / 4.0L;
  return static_cast<double>((4.0L * n + offset) * kQuarterPi);
}

bool better(const NearestWell& cand, const NearestWell& best) {
  if (cand.distance != best.distance) {
    return cand.distance < best.distance;
  }
  if (std::abs(cand.index.n) != std::abs(best.index.n)) {
    return std::abs(cand.index.n) < std::abs(best.index.n);
  }
  return cand.index.side == Side::Right && best.index.side == Side::Left;
}

}  // namespace

double well_x(const SystemParams& params) {
  return 0.5 * std::asinh(params.m_int / params.zeta);
}

Complex well_center(WellIndex idx, const SystemParams& params) {
  const double x = well_x(params);
  if (idx.side == Side::Right) {
    return {x, lattice_y(idx.n, 1)};
  }
  return {-x, lattice_y(idx.n, -1)};
}

NearestWell nearest_well(Complex z, Side side, const SystemParams& params) {
  if (!is_finite(z)) {
    throw DomainError("nearest_well: non-finite argument");
  }
  // Same-side wells are pi apart, so four consecutive labels around
  // Im z / pi contain the optimum.
  const double shift = side == Side::Right ? 0.25 : -0.25;
  const int base = static_cast<int>(std::floor(z.imag() / std::numbers::pi - shift));
  NearestWell best{{side, base}, INFINITY};
  for (int n : std::array{base - 1, base, base + 1, base + 2}) {
    const WellIndex idx{side, n};
    const NearestWell cand{idx, std::abs(z - well_center(idx, params))};
    if (better(cand, best)) {
      best = cand;
    }
  }
  return best;
}

NearestWell nearest_well(Complex z, const SystemParams& params) {
  const NearestWell right = nearest_well(z, Side::Right, params);
  const NearestWell left = nearest_well(z, Side::Left, params);
  return better(left, right) ? left : right;
}

std::string to_string(Side side) { return side == Side::Right ? "right" : "left"; }

std::string to_string(WellIndex idx) { return to_string(idx.side) + ":" + std::to_string(idx.n); }

}  // namespace cqes
