#pragma once

// Scalar-generic potential kernels. The public double-precision API in
// dynamics.hpp forwards here; the integrator instantiates them in
// extended precision.

#include <cmath>
#include <complex>

namespace cqes::detail {

template <class T>
std::complex<T> cosh2(std::complex<T> z) {
  const T x2 = T(2) * z.real();
  const T y2 = T(2) * z.imag();
  return {std::cosh(x2) * std::cos(y2), std::sinh(x2) * std::sin(y2)};
}

template <class T>
std::complex<T> sinh2(std::complex<T> z) {
  const T x2 = T(2) * z.real();
  const T y2 = T(2) * z.imag();
  return {std::sinh(x2) * std::cos(y2), std::cosh(x2) * std::sin(y2)};
}

// zeta cosh(2z) - iM
template <class T>
std::complex<T> bracket(std::complex<T> z, T zeta, T m) {
  const std::complex<T> c = cosh2(z);
  return {zeta * c.real(), zeta * c.imag() - m};
}

template <class T>
std::complex<T> potential(std::complex<T> z, T zeta, T m) {
  const std::complex<T> b = bracket(z, zeta, m);
  return -(b * b);
}

template <class T>
std::complex<T> potential_gradient(std::complex<T> z, T zeta, T m) {
  return T(-4) * zeta * sinh2(z) * bracket(z, zeta, m);
}

}  // namespace cqes::detail
