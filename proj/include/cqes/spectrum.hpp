#pragma once

// Closed-form quasi-exactly-solvable levels for M = 1..4 and the PT phase
// they imply.

#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "cqes/dynamics.hpp"

namespace cqes {

inline constexpr double kRealLevelTol = 1e-12;

struct QESLevel {
  int m_int = 0;
  std::string label;
  Complex energy;
  bool is_real = false;  // |Im energy| <= kRealLevelTol
};

enum class PTPhase { Unbroken, Broken };

struct PTPhaseReport {
  PTPhase phase = PTPhase::Unbroken;
  // Known only for M = 3.
  std::optional<double> zeta_critical;
  Complex parity_point{0.0, std::numbers::pi / 2};
};

// Throws UnsupportedOrderError for M outside 1..4 and DomainError for
// zeta <= 0.
std::vector<QESLevel> qes_levels(int m_int, double zeta);

PTPhaseReport pt_phase(int m_int, double zeta);

std::string to_string(PTPhase p);

}  // namespace cqes
