#include "cqes/spectrum.hpp"

#include <cmath>

#include "cqes/error.hpp"

namespace cqes {

namespace {

QESLevel make_level(int m, std::string label, Complex e) {
  return {m, std::move(label), e, std::abs(e.imag()) <= kRealLevelTol};
}

}  // namespace

std::vector<QESLevel> qes_levels(int m_int, double zeta) {
  if (m_int < 1 || m_int > 4) {
    throw UnsupportedOrderError("closed-form levels exist only for M = 1..4, got M = " +
                                std::to_string(m_int));
  }
  if (!(zeta > 0.0) || !std::isfinite(zeta)) {
    throw DomainError("zeta must be positive and finite");
  }
  const double z2 = zeta * zeta;
  const Complex i(0.0, 1.0);
  switch (m_int) {
    case 1:
      return {make_level(1, "E", Complex(1.0 - z2))};
    case 2:
      return {make_level(2, "E+", Complex(3.0 - z2, 2.0 * zeta)),
              make_level(2, "E-", Complex(3.0 - z2, -2.0 * zeta))};
    case 3: {
      const Complex r = std::sqrt(Complex(1.0 - 4.0 * z2));
      return {make_level(3, "E+", 7.0 - z2 + r), make_level(3, "E-", 7.0 - z2 - r),
              make_level(3, "E0", Complex(5.0 - z2))};
    }
    default: {
      const Complex base = 11.0 - z2 - 2.0 * i * zeta;
      const Complex r = std::sqrt(1.0 - i * zeta - z2);
      return {make_level(4, "E+", base + r), make_level(4, "E-", base - r)};
    }
  }
}

PTPhaseReport pt_phase(int m_int, double zeta) {
  const auto levels = qes_levels(m_int, zeta);
  PTPhaseReport report;
  if (m_int == 3) {
    report.zeta_critical = 0.5;
  }
  report.phase = PTPhase::Unbroken;
  for (const auto& l : levels) {
    if (!l.is_real) {
      report.phase = PTPhase::Broken;
    }
  }
  return report;
}

std::string to_string(PTPhase p) { return p == PTPhase::Unbroken ? "unbroken" : "broken"; }

}  // namespace cqes
