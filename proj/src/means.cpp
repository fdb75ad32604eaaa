#include "qc/means.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include "qc/errors.hpp"
#include "qc/io.hpp"
#include "qc/parallel.hpp"
#include "qc/quadrature.hpp"
#include "qc/special.hpp"

namespace qc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int checked_dim(const ScalarField& Q, const Point& x0) {
  if (x0.size() < 2) throw InputError("integral means: center must have dimension >= 2");
  if (Q.dim() != 0 && Q.dim() != static_cast<int>(x0.size()))
    throw InputError("integral means: field/center dimension mismatch");
  return static_cast<int>(x0.size());
}

}  // namespace

void MeanProfile::write_csv(std::ostream& os) const {
  os << "r,q\n";
  for (std::size_t i = 0; i < radii.size(); ++i)
    os << fmt17(radii[i]) << ',' << fmt17(values[i]) << '\n';
}

double radial_integral(const std::function<double(double)>& integrand, double lo, double hi) {
  if (!(hi > lo)) throw InputError("radial_integral: need hi > lo");
  // Extended-value pre-scan: two adjacent non-finite samples indicate a
  // singular set of positive measure.  Two adjacent -inf samples give -inf;
  // if +inf appears in such a pair the conservative answer is +inf.
  constexpr int kScan = 65;
  int prev_pos = -2;
  int prev_neg = -2;
  for (int j = 0; j < kScan; ++j) {
    const double r = lo + (hi - lo) * j / (kScan - 1);
    const double v = integrand(r);
    if (std::isinf(v)) {
      if (v > 0.0) {
        if (prev_pos == j - 1 || prev_neg == j - 1) return kInf;
        prev_pos = j;
      } else {
        if (prev_pos == j - 1) return kInf;
        if (prev_neg == j - 1) return -kInf;
        prev_neg = j;
      }
    }
  }
  // Isolated non-finite values sit on a null set; integrate around them.
  auto clipped = [&integrand](double r) {
    const double v = integrand(r);
    return std::isfinite(v) ? v : 0.0;
  };
  return adaptive_simpson(clipped, lo, hi).value;
}

double log_radial_integral(const std::function<double(double)>& f, double lo, double hi) {
  if (!(lo > 0.0) || !(hi > lo)) throw InputError("log_radial_integral: need 0 < lo < hi");
  // The clamp undoes the at-most-one-ulp drift of exp(log(r)) at the
  // endpoints, where field domains and weight domains can end exactly.
  return radial_integral([&](double u) { return f(std::clamp(std::exp(u), lo, hi)); },
                         std::log(lo), std::log(hi));
}

double spherical_mean(const ScalarField& Q, const Point& x0, double r, int resolution) {
  const int n = checked_dim(Q, x0);
  if (!(r > 0.0)) throw InputError("spherical_mean: need r > 0");
  if (!Q.domain().contains_ball(x0, r))
    throw DomainError("spherical_mean: sphere S(x0,r) exits the field's domain");
  const SphereQuadrature quad = sphere_quadrature(n, x0, r, resolution);
  const double total = par::block_sum(quad.count(), [&](std::size_t i) {
    const double w = quad.weights[i];
    return w == 0.0 ? 0.0 : w * Q(quad.node(i));
  });
  // Self-normalize by the weights, summed in the same order as the numerator:
  // the rule's area defect cancels and the mean of a constant field is the
  // constant, bitwise.
  const double wsum = par::block_sum(quad.count(), [&](std::size_t i) { return quad.weights[i]; });
  return total / wsum;
}

MeanProfile mean_profile(const ScalarField& Q, const Point& x0, std::vector<double> radii,
                         int resolution) {
  if (radii.empty()) throw InputError("mean_profile: need at least one radius");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw InputError("mean_profile: radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw InputError("mean_profile: radii must be strictly increasing");
  }
  MeanProfile p;
  p.center = x0;
  p.radii = std::move(radii);
  p.resolution = resolution;
  p.values.resize(p.radii.size());
  par::block_apply(p.radii.size(), p.values.data(),
                   [&](std::size_t i) { return spherical_mean(Q, x0, p.radii[i], resolution); });
  return p;
}

double ball_mean(const ScalarField& Q, const Point& x0, double eps, int resolution) {
  const int n = checked_dim(Q, x0);
  if (!(eps > 0.0)) throw InputError("ball_mean: need eps > 0");
  if (!Q.domain().contains_ball(x0, eps))
    throw DomainError("ball_mean: ball B(x0,eps) exits the field's domain");
  const double omega = unit_sphere_area(n);
  auto integrand = [&](double r) -> double {
    if (r <= 0.0) return 0.0;  // the r^{n-1} volume factor vanishes
    return spherical_mean(Q, x0, r, resolution) * omega * std::pow(r, n - 1);
  };
  const double I = radial_integral(integrand, 0.0, eps);
  if (!std::isfinite(I)) return I;
  return I / (unit_ball_volume(n) * std::pow(eps, n));
}

double weighted_ball_mean(const ScalarField& Q, const Point& x0, double eps,
                          const DoublingFunction& phi, int resolution) {
  if (!(eps > 0.0)) throw InputError("weighted_ball_mean: need eps > 0");
  if (1.0 / eps < phi.domain_start() * (1.0 - 1e-12))
    throw InputError("weighted_ball_mean: 1/eps lies below the weight's domain start");
  const double w = phi(1.0 / eps);
  const double bm = ball_mean(Q, x0, eps, resolution);
  if (std::isinf(bm)) return w > 0.0 ? kInf : 0.0;
  return w * bm;
}

double half_disk_mean(const ScalarField& K, const Point& zeta, double eps, int resolution) {
  if (zeta.size() != 2) throw InputError("half_disk_mean: boundary point must be planar");
  if (K.dim() != 0 && K.dim() != 2) throw InputError("half_disk_mean: field must be planar");
  const double rz = std::hypot(zeta[0], zeta[1]);
  if (std::fabs(rz - 1.0) > 1e-12)
    throw InputError("half_disk_mean: zeta must lie on the unit circle");
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("half_disk_mean: need eps in (0,1)");
  const double theta = std::atan2(zeta[1], zeta[0]);
  const int m = std::max(resolution, 16);
  // The circle |z - zeta| = t meets the open unit disk on the arc where
  // cos(phi - theta) < -t/2, of measure 2*arccos(t/2); midpoint rule on that
  // arc keeps every node strictly inside the disk.
  auto ring = [&](double t) -> double {
    if (t <= 0.0) return 0.0;
    const double half_arc = std::acos(std::clamp(t / 2.0, 0.0, 1.0));
    const double arc_start = theta + (kPi - half_arc);
    const double dphi = 2.0 * half_arc / m;
    const double sum = par::block_sum(static_cast<std::size_t>(m), [&](std::size_t j) {
      const double phi = arc_start + (static_cast<double>(j) + 0.5) * dphi;
      const double x[2] = {zeta[0] + t * std::cos(phi), zeta[1] + t * std::sin(phi)};
      return K(std::span<const double>(x, 2));
    });
    return t * sum * dphi;
  };
  const double I = radial_integral(ring, 0.0, eps);
  if (!std::isfinite(I)) return I;
  return I / (kPi * eps * eps);
}

double annulus_weighted_integral(const ScalarField& Q, const Point& x0, double eps, double eps0,
                                 const DoublingFunction& phi, int resolution) {
  const int n = checked_dim(Q, x0);
  if (!(eps > 0.0) || !(eps < eps0))
    throw InputError("annulus_weighted_integral: need 0 < eps < eps0");
  if (1.0 / eps0 < phi.domain_start() * (1.0 - 1e-12))
    throw InputError("annulus_weighted_integral: weight undefined at the outer radius");
  if (!Q.domain().contains_ball(x0, eps0))
    throw DomainError("annulus_weighted_integral: annulus exits the field's domain");
  const double omega = unit_sphere_area(n);
  const double I = log_radial_integral(
      [&](double r) { return phi(1.0 / r) * spherical_mean(Q, x0, r, resolution); }, eps, eps0);
  if (!std::isfinite(I)) return I;
  return omega * I;
}

bool FubiniPair::agree(double rel_tol, double se_factor) const {
  const double diff = std::fabs(volume_side - radial_side);
  const double scale = std::max(std::fabs(volume_side), std::fabs(radial_side));
  // The absolute floor covers the degenerate integrand ≡ 0 case, where both
  // sides are pure rounding noise.
  const double tol = std::max({rel_tol * scale, se_factor * volume_se, 1e-12});
  return diff <= tol;
}

FubiniPair fubini_radial_reduction(const ScalarField& Q, const Point& x0, double eps, double eps0,
                                   int resolution, std::size_t samples, std::uint64_t seed) {
  const int n = checked_dim(Q, x0);
  if (!(eps > 0.0) || !(eps < eps0))
    throw InputError("fubini_radial_reduction: need 0 < eps < eps0");
  if (!Q.domain().contains_ball(x0, eps0))
    throw DomainError("fubini_radial_reduction: annulus exits the field's domain");
  if (samples < 1000) throw InputError("fubini_radial_reduction: need at least 1000 samples");

  FubiniPair out{};
  out.samples = samples;

  // Radial side: omega_{n-1} * int (q(r)-1)/r dr by 1D quadrature.
  const double omega = unit_sphere_area(n);
  const double I = log_radial_integral(
      [&](double r) { return spherical_mean(Q, x0, r, resolution) - 1.0; }, eps, eps0);
  out.radial_side = std::isfinite(I) ? omega * I : I;

  // Volume side: uniform rejection sampling of (Q-1)/|x-x0|^n over the
  // bounding box of the annulus; independent of the quadrature path above.
  const std::size_t block = 1 << 14;
  const std::size_t nb = (samples + block - 1) / block;
  std::vector<double> bsum(nb), bsq(nb);
  par::detail::ExceptionBox box;
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(nb); ++b) {
    box.run([&, b] {
      const auto ub = static_cast<std::size_t>(b);
      std::mt19937_64 rng(par::splitmix64(seed ^ (ub + 1)));
      std::uniform_real_distribution<double> U(-eps0, eps0);
      const std::size_t hi = std::min(samples, (ub + 1) * block);
      double s = 0.0, s2 = 0.0;
      std::vector<double> x(n);
      for (std::size_t i = ub * block; i < hi; ++i) {
        double d2 = 0.0;
        for (int k = 0; k < n; ++k) {
          const double u = U(rng);
          x[k] = x0[k] + u;
          d2 += u * u;
        }
        const double d = std::sqrt(d2);
        double g = 0.0;
        if (d > eps && d < eps0) g = (Q(x) - 1.0) / std::pow(d, n);
        s += g;
        s2 += g * g;
      }
      bsum[ub] = s;
      bsq[ub] = s2;
    });
  }
  box.rethrow_if_set();
  double total = 0.0, total2 = 0.0;
  for (std::size_t b = 0; b < nb; ++b) {
    total += bsum[b];
    total2 += bsq[b];
  }
  const double N = static_cast<double>(samples);
  const double box_vol = std::pow(2.0 * eps0, n);
  const double mean = total / N;
  const double var = std::max(0.0, (total2 - N * mean * mean) / (N - 1.0));
  out.volume_side = box_vol * mean;
  out.volume_se = box_vol * std::sqrt(var / N);
  return out;
}

}  // namespace qc
