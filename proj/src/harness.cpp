#include "qc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <vector>

#include "qc/errors.hpp"
#include "qc/io.hpp"
#include "qc/means.hpp"
#include "qc/parallel.hpp"
#include "qc/special.hpp"

namespace qc {

namespace {

// Direction sets for the sup over directions in the continuity modulus:
// exact uniform angles in the plane, a Fibonacci sphere in 3-space, and a
// seeded isotropic sample beyond.
std::vector<Point> direction_set(int n, std::uint64_t seed) {
  std::vector<Point> dirs;
  if (n == 2) {
    dirs.reserve(64);
    for (int j = 0; j < 64; ++j) {
      const double phi = 2.0 * kPi * j / 64.0;
      dirs.push_back({std::cos(phi), std::sin(phi)});
    }
    return dirs;
  }
  if (n == 3) {
    dirs.reserve(256);
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < 256; ++k) {
      const double y = 1.0 - 2.0 * (k + 0.5) / 256.0;
      const double rho = std::sqrt(std::max(0.0, 1.0 - y * y));
      const double phi = golden * k;
      dirs.push_back({rho * std::cos(phi), y, rho * std::sin(phi)});
    }
    return dirs;
  }
  std::mt19937_64 rng(par::splitmix64(seed));
  std::normal_distribution<double> gauss(0.0, 1.0);
  dirs.reserve(256);
  while (dirs.size() < 256) {
    Point u(static_cast<std::size_t>(n));
    double norm2 = 0.0;
    for (auto& c : u) {
      c = gauss(rng);
      norm2 += c * c;
    }
    if (norm2 < 1e-12) continue;
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : u) c *= inv;
    dirs.push_back(std::move(u));
  }
  return dirs;
}

double euclidean_gap(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

void ExponentFit::write_csv(std::ostream& os) const {
  os << "r,displacement\n";
  for (std::size_t i = 0; i < radii.size(); ++i)
    os << fmt17(radii[i]) << ',' << fmt17(displacement[i]) << '\n';
}

ExponentFit empirical_holder_exponent(const BenchmarkMap& f, const Point& x0,
                                      const std::vector<double>& radii, std::uint64_t seed) {
  const int n = f.dim();
  if (static_cast<int>(x0.size()) != n)
    throw InputError("empirical_holder_exponent: center dimension does not match the map");
  if (radii.size() < 8)
    throw InputError("empirical_holder_exponent: need at least 8 radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i]))
      throw InputError("empirical_holder_exponent: radii must be positive and finite");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw InputError("empirical_holder_exponent: radii must be strictly increasing");
  }
  const std::vector<Point> dirs = direction_set(n, seed);
  ExponentFit fit;
  fit.center = x0;
  fit.radii = radii;
  fit.displacement.assign(radii.size(), 0.0);
  const Point fx0 = f(x0);
  par::block_apply(radii.size(), fit.displacement.data(), [&](std::size_t i) {
    const double r = radii[i];
    return par::block_max(dirs.size(), [&](std::size_t d) {
      Point x(x0);
      for (std::size_t c = 0; c < x.size(); ++c) x[c] += r * dirs[d][c];
      return euclidean_gap(f(x), fx0);
    });
  });
  for (std::size_t i = 0; i < radii.size(); ++i)
    if (!(fit.displacement[i] > 0.0))
      throw InputError("empirical_holder_exponent: degenerate fit, zero displacement at r = " +
                       fmt17(radii[i]));
  // Least squares of log d against log r.
  const std::size_t m = radii.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = std::log(radii[i]);
    const double y = std::log(fit.displacement[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = m * sxx - sx * sx;
  if (!(std::fabs(denom) > 0.0))
    throw InputError("empirical_holder_exponent: radii do not span a fit");
  fit.slope = (m * sxy - sx * sy) / denom;
  fit.intercept_log = (sy - fit.slope * sx) / m;
  double ss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double resid =
        std::log(fit.displacement[i]) - (fit.slope * std::log(radii[i]) + fit.intercept_log);
    ss += resid * resid;
  }
  fit.residual_rms = std::sqrt(ss / m);
  return fit;
}

RingCheck verify_ring_inequality(const BenchmarkMap& f, const ScalarField& Q, double r1, double r2,
                                 const std::function<double(double)>& eta, int resolution) {
  if (!f.is_radial())
    throw InputError(
        "verify_ring_inequality: only radial benchmark maps are supported (the image "
        "ring-family modulus has no closed form otherwise)");
  if (!(r1 > 0.0 && r2 > r1) || !std::isfinite(r2))
    throw InputError("verify_ring_inequality: need 0 < r1 < r2 < inf");
  const int n = f.dim();
  if (Q.dim() != 0 && Q.dim() != n)
    throw InputError("verify_ring_inequality: field dimension does not match the map");
  const Point origin(static_cast<std::size_t>(n), 0.0);
  if (!Q.domain().contains_ball(origin, r2))
    throw InputError("verify_ring_inequality: ring exits the field's domain");

  RingCheck check;
  check.eta_integral = radial_integral(eta, r1, r2);
  if (!(check.eta_integral >= 1.0 - 1e-9))
    throw InputError("verify_ring_inequality: eta is not admissible (integral " +
                     fmt17(check.eta_integral) + " < 1)");
  check.lhs = ring_modulus(n, f.radial_profile(r1), f.radial_profile(r2));
  const double omega = unit_sphere_area(n);
  check.rhs = omega * radial_integral(
                          [&](double r) {
                            const double e = eta(r);
                            const double q = spherical_mean(Q, origin, r, resolution);
                            return q * std::pow(e, n) * std::pow(r, n - 1);
                          },
                          r1, r2);
  check.holds = check.lhs <= check.rhs * (1.0 + 1e-9) + 1e-12;
  return check;
}

Region Region::ball(Point center, double radius) {
  if (center.size() < 2) throw InputError("Region::ball: center needs dimension >= 2");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw InputError("Region::ball: radius must be positive and finite");
  Region r;
  r.kind = Kind::ball;
  r.center = std::move(center);
  r.r_outer = radius;
  return r;
}

Region Region::annulus(Point center, double r_inner, double r_outer) {
  if (center.size() < 2) throw InputError("Region::annulus: center needs dimension >= 2");
  if (!(r_inner >= 0.0) || !(r_outer > r_inner) || !std::isfinite(r_outer))
    throw InputError("Region::annulus: need 0 <= r_inner < r_outer < inf");
  Region r;
  r.kind = Kind::annulus;
  r.center = std::move(center);
  r.r_inner = r_inner;
  r.r_outer = r_outer;
  return r;
}

Region Region::lens(Point zeta, double eps) {
  if (zeta.size() != 2) throw InputError("Region::lens: boundary point must be planar");
  if (std::fabs(std::hypot(zeta[0], zeta[1]) - 1.0) > 1e-12)
    throw InputError("Region::lens: zeta must lie on the unit circle");
  if (!(eps > 0.0 && eps < 2.0))
    throw InputError("Region::lens: need eps in (0, 2) for positive measure");
  Region r;
  r.kind = Kind::lens;
  r.center = std::move(zeta);
  r.r_outer = eps;
  return r;
}

OracleEstimate oracle_integral(const ScalarField& Q, const Region& region, std::size_t samples,
                               std::uint64_t seed) {
  if (samples < 1000) throw InputError("oracle_integral: need at least 1000 samples");
  const int n = static_cast<int>(region.center.size());
  if (Q.dim() != 0 && Q.dim() != n)
    throw InputError("oracle_integral: field dimension does not match the region");

  const double half = region.r_outer;
  Point lo(region.center), hi(region.center);
  for (int i = 0; i < n; ++i) {
    lo[static_cast<std::size_t>(i)] -= half;
    hi[static_cast<std::size_t>(i)] += half;
  }
  double box_vol = 1.0;
  for (int i = 0; i < n; ++i) box_vol *= 2.0 * half;

  auto inside = [&](const Point& x) {
    double d2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double g = x[static_cast<std::size_t>(i)] - region.center[static_cast<std::size_t>(i)];
      d2 += g * g;
    }
    const double d = std::sqrt(d2);
    switch (region.kind) {
      case Region::Kind::ball:
        return d < region.r_outer;
      case Region::Kind::annulus:
        return region.r_inner < d && d < region.r_outer;
      case Region::Kind::lens:
        return d < region.r_outer && std::hypot(x[0], x[1]) < 1.0;
    }
    return false;
  };

  // Fixed-size sample blocks with independent per-block streams; block sums
  // are combined in index order so the result is identical for any thread
  // count.
  constexpr std::size_t kChunk = 16384;
  const std::size_t nb = (samples + kChunk - 1) / kChunk;
  std::vector<double> bsum(nb, 0.0), bsum2(nb, 0.0);
  par::detail::ExceptionBox box;
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(nb); ++b) {
    box.run([&, b] {
      const auto ub = static_cast<std::size_t>(b);
      std::mt19937_64 rng(par::splitmix64(seed ^ (ub + 1)));
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      const std::size_t count = std::min(kChunk, samples - ub * kChunk);
      Point x(static_cast<std::size_t>(n), 0.0);
      double s = 0.0, s2 = 0.0;
      for (std::size_t k = 0; k < count; ++k) {
        for (int i = 0; i < n; ++i)
          x[static_cast<std::size_t>(i)] =
              lo[static_cast<std::size_t>(i)] +
              (hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)]) * unit(rng);
        const double g = inside(x) ? Q(x) : 0.0;
        s += g;
        s2 += g * g;
      }
      bsum[ub] = s;
      bsum2[ub] = s2;
    });
  }
  box.rethrow_if_set();
  double total = 0.0, total2 = 0.0;
  for (std::size_t b = 0; b < nb; ++b) {
    total += bsum[b];
    total2 += bsum2[b];
  }
  const auto N = static_cast<double>(samples);
  const double mean = total / N;
  const double var = std::max(0.0, (total2 - N * mean * mean) / (N - 1.0));
  OracleEstimate est;
  est.value = box_vol * mean;
  est.standard_error = box_vol * std::sqrt(var / N);
  est.samples = samples;
  est.seed = seed;
  return est;
}

}  // namespace qc
