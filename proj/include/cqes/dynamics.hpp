#pragma once

// Complexified QES potential V(z) = -(zeta cosh 2z - iM)^2 and the
// Hamiltonian H = p^2 + V(z) in units 2m = hbar = 1.

#include <complex>

namespace cqes {

using Complex = std::complex<double>;

struct SystemParams {
  double zeta = 0.1;
  int m_int = 3;

  // Throws DomainError unless zeta > 0 (finite) and m_int >= 1.
  void validate() const;
};

struct EnergyComponents {
  double e1 = 0.0;
  double e2 = 0.0;
};

// Hyperbolic functions of 2z assembled from their real decomposition
// cosh(2x + 2iy) = cosh 2x cos 2y + i sinh 2x sin 2y.
Complex cosh2(Complex z);
Complex sinh2(Complex z);

Complex potential(Complex z, const SystemParams& params);

// dV/dz = -4 zeta sinh(2z) (zeta cosh(2z) - iM)
Complex potential_gradient(Complex z, const SystemParams& params);

Complex hamiltonian(Complex z, Complex p, const SystemParams& params);

// E1 = p1^2 - p2^2 + V1, E2 = 2 p1 p2 + V2.
EnergyComponents energy_components(Complex z, Complex p, const SystemParams& params);

// Hermitian counterpart on the real axis: -(zeta cosh 2x - M)^2.
double real_axis_hermitian_potential(double x, const SystemParams& params);

bool is_finite(Complex z);

}  // namespace cqes
