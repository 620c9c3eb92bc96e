#pragma once

#include <string>

#include "cqes/dynamics.hpp"

namespace cqes {

enum class Side { Left, Right };

// One well of the periodic lattice. Right wells sit at
// x = +asinh(M/zeta)/2, y = (4n+1)pi/4; left wells at the mirrored x and
// y = (4n-1)pi/4.
struct WellIndex {
  Side side = Side::Right;
  int n = 0;

  friend bool operator==(const WellIndex&, const WellIndex&) = default;
};

struct NearestWell {
  WellIndex index;
  double distance = 0.0;
};

double well_x(const SystemParams& params);

Complex well_center(WellIndex idx, const SystemParams& params);

// Ties go to the smaller |n|, then to Right.
NearestWell nearest_well(Complex z, const SystemParams& params);

// Nearest well among those on one side of the imaginary axis.
NearestWell nearest_well(Complex z, Side side, const SystemParams& params);

std::string to_string(Side side);
std::string to_string(WellIndex idx);

}  // namespace cqes
