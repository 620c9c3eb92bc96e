#include "cqes/dynamics.hpp"

#include <cmath>
#include <string>

#include "cqes/detail/kernels.hpp"
#include "cqes/error.hpp"

namespace cqes {

void SystemParams::validate() const {
  if (!std::isfinite(zeta) || zeta <= 0.0) {
    throw DomainError("zeta must be finite and strictly positive, got " + std::to_string(zeta));
  }
  if (m_int < 1) {
    throw DomainError("M must be a positive integer, got " + std::to_string(m_int));
  }
}

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

namespace {

void require_finite(Complex z, const char* what) {
  if (!is_finite(z)) {
    throw DomainError(std::string(what) + ": non-finite argument");
  }
}

}  // namespace

Complex cosh2(Complex z) { return detail::cosh2(z); }

Complex sinh2(Complex z) { return detail::sinh2(z); }

Complex potential(Complex z, const SystemParams& params) {
  require_finite(z, "potential");
  return detail::potential(z, params.zeta, static_cast<double>(params.m_int));
}

Complex potential_gradient(Complex z, const SystemParams& params) {
  require_finite(z, "potential_gradient");
  return detail::potential_gradient(z, params.zeta, static_cast<double>(params.m_int));
}

Complex hamiltonian(Complex z, Complex p, const SystemParams& params) {
  if (!is_finite(p)) {
    throw DomainError("hamiltonian: non-finite momentum");
  }
  return p * p + potential(z, params);
}

EnergyComponents energy_components(Complex z, Complex p, const SystemParams& params) {
  if (!is_finite(p)) {
    throw DomainError("energy_components: non-finite momentum");
  }
  const Complex v = potential(z, params);
  const double p1 = p.real();
  const double p2 = p.imag();
  return {(p1 * p1 - p2 * p2) + v.real(), 2.0 * p1 * p2 + v.imag()};
}

double real_axis_hermitian_potential(double x, const SystemParams& params) {
  if (!std::isfinite(x)) {
    throw DomainError("real_axis_hermitian_potential: non-finite argument");
  }
  const double b = params.zeta * std::cosh(2.0 * x) - params.m_int;
  return -b * b;
}

}  // namespace cqes
