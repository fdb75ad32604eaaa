#include "qc/geometry.hpp"

#include <cmath>
#include <random>

#include "qc/errors.hpp"
#include "qc/special.hpp"

namespace qc {

namespace {

double norm_sq(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

}  // namespace

ExtendedPoint::ExtendedPoint(Point coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw InputError("ExtendedPoint: dimension must be >= 2");
}

ExtendedPoint ExtendedPoint::infinity() { return ExtendedPoint(); }

double chordal_distance(const ExtendedPoint& x, const ExtendedPoint& y) {
  if (x.is_infinity() && y.is_infinity()) return 0.0;
  if (x.is_infinity() || y.is_infinity()) {
    const auto& finite = x.is_infinity() ? y : x;
    return 1.0 / std::sqrt(1.0 + norm_sq(finite.coords()));
  }
  if (x.dim() != y.dim()) throw InputError("chordal_distance: dimension mismatch");
  double diff_sq = 0.0;
  for (int i = 0; i < x.dim(); ++i) {
    const double d = x.coords()[i] - y.coords()[i];
    diff_sq += d * d;
  }
  return std::sqrt(diff_sq) /
         (std::sqrt(1.0 + norm_sq(x.coords())) * std::sqrt(1.0 + norm_sq(y.coords())));
}

double chordal_diameter(std::span<const ExtendedPoint> points) {
  if (points.empty()) throw InputError("chordal_diameter: empty point list");
  double d = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      d = std::max(d, chordal_distance(points[i], points[j]));
  return d;
}

double chordal_diameter_ball_complement(double r) {
  if (r <= 0.0) throw InputError("chordal_diameter_ball_complement: need r > 0");
  if (r <= 1.0) return 1.0;
  return 2.0 * r / (1.0 + r * r);
}

Annulus::Annulus(Point c, double inner, double outer) : center(std::move(c)), r1(inner), r2(outer) {
  if (!(0.0 < r1 && r1 < r2) || !std::isfinite(r2))
    throw InputError("Annulus: need 0 < r1 < r2 < inf");
}

double SphereQuadrature::weight_sum() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

SphereQuadrature sphere_quadrature(int n, std::span<const double> x0, double r, int resolution,
                                   std::uint64_t seed) {
  if (n < 2) throw InputError("sphere_quadrature: need n >= 2");
  if (r <= 0.0) throw InputError("sphere_quadrature: need r > 0");
  if (resolution < 1) throw InputError("sphere_quadrature: need resolution >= 1");
  if (!x0.empty() && static_cast<int>(x0.size()) != n)
    throw InputError("sphere_quadrature: center dimension mismatch");

  SphereQuadrature q;
  q.dim = n;
  q.center.assign(n, 0.0);
  if (!x0.empty()) q.center.assign(x0.begin(), x0.end());
  q.radius = r;

  if (n == 2) {
    const int m = resolution;
    q.nodes.resize(2 * static_cast<std::size_t>(m));
    q.weights.assign(m, 2.0 * kPi * r / m);
    for (int j = 0; j < m; ++j) {
      const double phi = 2.0 * kPi * j / m;
      q.nodes[2 * j] = q.center[0] + r * std::cos(phi);
      q.nodes[2 * j + 1] = q.center[1] + r * std::sin(phi);
    }
    return q;
  }

  if (n == 3) {
    // Latitude bands: node at the band's midpoint colatitude, weight the exact
    // band area r^2 (cos t_lo - cos t_hi) split over the longitude samples.
    const int bands = resolution;
    const int lons = 2 * resolution;
    q.nodes.reserve(3 * static_cast<std::size_t>(bands) * lons);
    q.weights.reserve(static_cast<std::size_t>(bands) * lons);
    for (int i = 0; i < bands; ++i) {
      const double t_lo = kPi * i / bands;
      const double t_hi = kPi * (i + 1) / bands;
      const double t_mid = 0.5 * (t_lo + t_hi);
      const double band_area = r * r * (std::cos(t_lo) - std::cos(t_hi)) * 2.0 * kPi;
      const double w = band_area / lons;
      const double z = r * std::cos(t_mid);
      const double rho = r * std::sin(t_mid);
      for (int j = 0; j < lons; ++j) {
        const double phi = 2.0 * kPi * j / lons;
        q.nodes.push_back(q.center[0] + rho * std::cos(phi));
        q.nodes.push_back(q.center[1] + rho * std::sin(phi));
        q.nodes.push_back(q.center[2] + z);
        q.weights.push_back(w);
      }
    }
    return q;
  }

  // n >= 4: equal-weight Monte Carlo directions from normalized Gaussians.
  const int m = resolution;
  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(n)));
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double area = unit_sphere_area(n) * std::pow(r, n - 1);
  q.nodes.resize(static_cast<std::size_t>(m) * n);
  q.weights.assign(m, area / m);
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    std::vector<double> g(n);
    do {
      s = 0.0;
      for (int k = 0; k < n; ++k) {
        g[k] = gauss(rng);
        s += g[k] * g[k];
      }
    } while (s == 0.0);
    const double inv = r / std::sqrt(s);
    for (int k = 0; k < n; ++k) q.nodes[static_cast<std::size_t>(i) * n + k] = q.center[k] + g[k] * inv;
  }
  q.monte_carlo_rse = 1.0 / std::sqrt(static_cast<double>(m));
  return q;
}

double ring_modulus(int n, double r1, double r2) {
  if (n < 2) throw InputError("ring_modulus: need n >= 2");
  if (!(0.0 < r1 && r1 < r2)) throw InputError("ring_modulus: need 0 < r1 < r2");
  return unit_sphere_area(n) * std::pow(std::log(r2 / r1), 1.0 - n);
}

}  // namespace qc
