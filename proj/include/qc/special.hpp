#pragma once

#include <cmath>

#include "qc/errors.hpp"

namespace qc {

inline constexpr double kPi = 3.14159265358979323846;

// Gamma(x) for x a positive multiple of 1/2. These are the only arguments the
// sphere-measure formulas need, and the closed forms are exact:
//   Gamma(k)     = (k-1)!
//   Gamma(k+1/2) = (2k)! sqrt(pi) / (4^k k!)
inline double gamma_half_integer(double x) {
  if (x <= 0.0 || std::floor(2.0 * x) != 2.0 * x)
    throw InputError("gamma_half_integer: argument must be a positive multiple of 1/2");
  double g;
  if (std::floor(x) == x) {
    g = 1.0;
    for (int k = 2; k < static_cast<int>(x); ++k) g *= k;
  } else {
    g = std::sqrt(kPi);  // Gamma(1/2)
    for (double t = 0.5; t < x; t += 1.0) g *= t;
  }
  return g;
}

// omega_{n-1}: (n-1)-measure of the unit sphere S^{n-1} in R^n,
// 2 pi^{n/2} / Gamma(n/2).
inline double unit_sphere_area(int n) {
  if (n < 2) throw InputError("unit_sphere_area: need n >= 2");
  return 2.0 * std::pow(kPi, 0.5 * n) / gamma_half_integer(0.5 * n);
}

// Omega_n: volume of the unit ball B^n, equal to omega_{n-1}/n.
inline double unit_ball_volume(int n) { return unit_sphere_area(n) / n; }

}  // namespace qc
