#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qc/doubling.hpp"
#include "qc/fields.hpp"
#include "qc/geometry.hpp"

namespace qc {

// Spherical-mean profile r ↦ q_{x0}(r); exportable as CSV "r,q".
struct MeanProfile {
  Point center;
  std::vector<double> radii;   // strictly increasing, positive
  std::vector<double> values;  // in [0, +inf]
  int resolution = 0;

  void write_csv(std::ostream& os) const;
};

// Average of Q over the sphere S(x0, r):
//   q_{x0}(r) = (1/(ω_{n-1} r^{n-1})) ∫_{S(x0,r)} Q dH^{n-1}.
double spherical_mean(const ScalarField& Q, const Point& x0, double r, int resolution = 64);

MeanProfile mean_profile(const ScalarField& Q, const Point& x0, std::vector<double> radii,
                         int resolution = 64);

// (1/(Ω_n ε^n)) ∫_{B(x0,ε)} Q dm, computed as a radial composition of
// spherical means.
double ball_mean(const ScalarField& Q, const Point& x0, double eps, int resolution = 64);

// φ(1/ε) · ball_mean; requires 1/ε inside φ's domain [a,∞).
double weighted_ball_mean(const ScalarField& Q, const Point& x0, double eps,
                          const DoublingFunction& phi, int resolution = 64);

// (1/(π ε²)) ∫_{D ∩ D(ζ,ε)} K dm for a boundary point |ζ| = 1 of the unit
// disk; the normalizer is the FULL disk area π ε², so K ≡ 1 gives the lens
// area fraction (→ 1/2 as ε → 0).
double half_disk_mean(const ScalarField& K, const Point& zeta, double eps, int resolution = 256);

// ∫_{ε<|x-x0|<ε0} φ(1/|x-x0|) Q(x) / |x-x0|^n dm
//   = ω_{n-1} ∫_ε^{ε0} φ(1/r) q_{x0}(r) / r dr.
double annulus_weighted_integral(const ScalarField& Q, const Point& x0, double eps, double eps0,
                                 const DoublingFunction& phi, int resolution = 64);

// Both sides of the Fubini reduction of the annulus integral of (Q-1)/|x-x0|^n:
// the n-dimensional integral (Monte Carlo, independent of the radial
// quadrature path) against ω_{n-1} ∫ (q_{x0}(r)-1)/r dr.
struct FubiniPair {
  double volume_side;
  double volume_se;  // Monte Carlo standard error of volume_side
  std::size_t samples;
  double radial_side;

  bool agree(double rel_tol = 1e-6, double se_factor = 3.0) const;
};

FubiniPair fubini_radial_reduction(const ScalarField& Q, const Point& x0, double eps, double eps0,
                                   int resolution = 64, std::size_t samples = 2000000,
                                   std::uint64_t seed = 0x51a7e5eedULL);

// Shared radial-integration core: adaptive Simpson with extended-value
// semantics. The integrand is scanned on a uniform grid first; two adjacent
// non-finite samples mean the singular set has positive measure and the
// integral is +inf. Isolated non-finite values are excluded (measure zero).
double radial_integral(const std::function<double(double)>& integrand, double lo, double hi);

// ∫_lo^hi f(r) dr/r computed in log-radius: substituting u = log r turns the
// 1/r kernel into the flat measure du, so the quadrature grid is geometric in
// r and the integrand is scale-free — exact for constant f even when hi/lo
// spans many decades, where direct quadrature of f(r)/r exhausts its
// evaluation budget. Same extended-value semantics as radial_integral.
double log_radial_integral(const std::function<double(double)>& f, double lo, double hi);

}  // namespace qc
