#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qc {

using Point = std::vector<double>;

// Point of the compactified space R^n u {inf}. The point at infinity carries
// no coordinates; chordal formulas branch on it explicitly.
class ExtendedPoint {
 public:
  explicit ExtendedPoint(Point coords);
  static ExtendedPoint infinity();

  bool is_infinity() const { return infinite_; }
  std::span<const double> coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }

 private:
  ExtendedPoint() : infinite_(true) {}
  Point coords_;
  bool infinite_ = false;
};

// Chordal metric on R^n u {inf}:
//   h(x, inf) = 1 / sqrt(1+|x|^2)
//   h(x, y)   = |x-y| / (sqrt(1+|x|^2) sqrt(1+|y|^2))
// Values lie in [0, 1].
double chordal_distance(const ExtendedPoint& x, const ExtendedPoint& y);

// sup of pairwise chordal distances; throws InputError on an empty list.
double chordal_diameter(std::span<const ExtendedPoint> points);

// Chordal diameter of (R^n u {inf}) \ B(0, r), in closed form: antipodal points
// of norm max(r, 1) realize the sup, giving 1 for r <= 1 and 2r/(1+r^2) above.
double chordal_diameter_ball_complement(double r);

struct Annulus {
  Point center;
  double r1, r2;
  Annulus(Point c, double inner, double outer);
};

// Quadrature rule on the sphere S(x0, r): nodes on the sphere, nonnegative
// weights summing to its (n-1)-measure omega_{n-1} r^{n-1}.
struct SphereQuadrature {
  int dim = 0;
  Point center;
  double radius = 0.0;
  std::vector<double> nodes;    // size() == count()*dim, row-major
  std::vector<double> weights;  // size() == count()
  double monte_carlo_rse = 0.0;  // relative standard error of an equal-weight MC rule, else 0

  std::size_t count() const { return weights.size(); }
  std::span<const double> node(std::size_t i) const { return {nodes.data() + i * dim, static_cast<std::size_t>(dim)}; }
  double weight_sum() const;
};

// Deterministic rules for n=2 (uniform angles, trapezoid in the periodic
// variable) and n=3 (latitude bands with exact band areas x uniform
// longitudes); seeded Monte Carlo directions for n >= 4.
// n=2: `resolution` nodes. n=3: `resolution` bands x 2*`resolution` longitudes.
// n>=4: `resolution` samples.
SphereQuadrature sphere_quadrature(int n, std::span<const double> x0, double r, int resolution,
                                   std::uint64_t seed = 0x51a7e5eedULL);

// Conformal modulus of the family of curves joining the boundary spheres of
// A(x0, r1, r2): omega_{n-1} (log(r2/r1))^{1-n}.
double ring_modulus(int n, double r1, double r2);

}  // namespace qc
