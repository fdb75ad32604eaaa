#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "qc/fields.hpp"
#include "qc/geometry.hpp"

namespace qc {

// Log-log least-squares fit of the worst displacement against the radius.
struct ExponentFit {
  Point center;
  std::vector<double> radii;
  std::vector<double> displacement;  // max over sampled directions of |f(x0+ru)-f(x0)|
  double slope = 0.0;                // fitted exponent
  double intercept_log = 0.0;        // log of the fitted constant
  double residual_rms = 0.0;

  void write_csv(std::ostream& os) const;  // "r,displacement"
};

// Measures the pointwise continuity exponent of a benchmark map: 64 uniformly
// spaced directions for n = 2, a 256-point Fibonacci sphere for n = 3, and a
// seeded uniform sample for n >= 4. Needs >= 8 radii; an all-zero displacement
// column is a degenerate fit and raises an input error.
ExponentFit empirical_holder_exponent(const BenchmarkMap& f, const Point& x0,
                                      const std::vector<double>& radii,
                                      std::uint64_t seed = 0x51a7e5eedULL);

// Ring-family inequality on radial benchmarks: the modulus of the image of
// the ring (r1, r2) about 0 against the weighted admissible-function mass.
struct RingCheck {
  double lhs = 0.0;            // ring_modulus of the image annulus
  double rhs = 0.0;            // int Q(x) eta(|x|)^n dm over the ring
  double eta_integral = 0.0;   // admissibility integral of eta over (r1, r2)
  bool holds = false;          // lhs <= rhs with 1e-9 headroom
};
RingCheck verify_ring_inequality(const BenchmarkMap& f, const ScalarField& Q, double r1, double r2,
                                 const std::function<double(double)>& eta, int resolution = 64);

// Regions the Monte Carlo oracle can sample.
struct Region {
  enum class Kind { ball, annulus, lens };
  Kind kind = Kind::ball;
  Point center;        // ball/annulus center; lens boundary point (|center| = 1)
  double r_inner = 0.0;  // annulus only
  double r_outer = 0.0;  // ball/annulus radius; lens disk radius

  static Region ball(Point center, double radius);
  static Region annulus(Point center, double r_inner, double r_outer);
  // D(zeta, eps) intersected with the unit disk, planar only.
  static Region lens(Point zeta, double eps);
};

// Brute-force uniform-rejection integral, independent of every quadrature in
// the library; deterministic for a given seed and blocked so thread count
// cannot change the result.
struct OracleEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};
OracleEstimate oracle_integral(const ScalarField& Q, const Region& region, std::size_t samples,
                               std::uint64_t seed = 0x51a7e5eedULL);

}  // namespace qc
