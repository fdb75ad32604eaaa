#include "qc/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <utility>

#include "qc/errors.hpp"
#include "qc/io.hpp"
#include "qc/parallel.hpp"
#include "qc/special.hpp"

namespace qc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Slack used whenever a computed left side is compared against a certified
// right side: both come from the same quadrature machinery, so exact ties
// (e.g. equality cases of the hypotheses) must not read as violations.
bool bound_holds(double lhs, double rhs) {
  if (std::isnan(lhs) || std::isnan(rhs)) return false;
  return lhs <= rhs * (1.0 + 1e-9) + 1e-12;
}

std::string_view verdict_label(ConditionReport::Verdict v) {
  switch (v) {
    case ConditionReport::Verdict::holds: return "holds";
    case ConditionReport::Verdict::fails: return "fails";
    case ConditionReport::Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

// q^{-1/(n-1)} on the extended half-line, with the limit conventions used by
// the pointwise comparison: 0 -> +inf, +inf -> 0.
double inverse_root(double q, int n) {
  if (q == 0.0) return kInf;
  if (std::isinf(q)) return 0.0;
  return std::pow(q, -1.0 / (n - 1));
}

int planar_dims(const ScalarField& Q, const Point& x0, const char* who) {
  if (x0.size() != 2) throw InputError(std::string(who) + ": center must be planar");
  if (Q.dim() != 0 && Q.dim() != 2)
    throw InputError(std::string(who) + ": field must be planar");
  return 2;
}

int general_dims(const ScalarField& Q, const Point& x0, const char* who) {
  if (x0.size() < 2) throw InputError(std::string(who) + ": center needs dimension >= 2");
  if (Q.dim() != 0 && Q.dim() != static_cast<int>(x0.size()))
    throw InputError(std::string(who) + ": field dimension does not match the center");
  return static_cast<int>(x0.size());
}

void require_ball(const ScalarField& Q, const Point& x0, double eps0, const char* who) {
  if (!(eps0 > 0.0) || !std::isfinite(eps0))
    throw InputError(std::string(who) + ": eps0 must be positive and finite");
  if (!Q.domain().contains_ball(x0, eps0))
    throw InputError(std::string(who) + ": ball B(x0, eps0) exits the field's domain");
}

std::vector<double> resolve_grid(const std::vector<double>* user, double eps0, const char* who) {
  if (user == nullptr) return geometric_grid(eps0);
  if (user->empty()) throw InputError(std::string(who) + ": grid must be nonempty");
  double prev = kInf;
  for (double t : *user) {
    if (!(t > 0.0) || !(t < eps0))
      throw InputError(std::string(who) + ": grid entries must lie in (0, eps0)");
    if (!(t < prev))
      throw InputError(std::string(who) + ": grid entries must be strictly decreasing");
    prev = t;
  }
  return *user;
}

// Stabilized-tail verdict. Estimate = max over the last (up to) 10 grid
// values. "holds" needs a finite estimate with the last three values inside a
// 1% band; a nondecreasing tail that grew by more than 1% reads as divergence.
// A tail that only runs to -inf cannot certify anything under the
// finite-estimate rule and is reported inconclusive.
void apply_verdict(ConditionReport& rep) {
  using Verdict = ConditionReport::Verdict;
  const auto& v = rep.values;
  if (v.empty()) {
    rep.estimate = kNaN;
    rep.verdict = Verdict::inconclusive;
    rep.note = "empty grid";
    return;
  }
  const std::size_t m = v.size();
  const std::size_t tail = std::min<std::size_t>(10, m);
  const std::size_t start = m - tail;
  bool any_nan = false;
  bool any_pos_inf = false;
  bool any_neg_inf = false;
  double mx = -kInf;
  for (std::size_t i = start; i < m; ++i) {
    if (std::isnan(v[i])) {
      any_nan = true;
    } else if (std::isinf(v[i])) {
      (v[i] > 0.0 ? any_pos_inf : any_neg_inf) = true;
    } else {
      mx = std::max(mx, v[i]);
    }
  }
  if (any_pos_inf || any_nan) {
    rep.estimate = any_pos_inf ? kInf : kNaN;
    rep.verdict = Verdict::fails;
    rep.note = "non-finite values in the refinement tail";
    return;
  }
  if (any_neg_inf && mx == -kInf) {
    rep.estimate = -kInf;
    rep.verdict = Verdict::inconclusive;
    rep.note = "values diverge to -inf; the finite-estimate rule cannot certify";
    return;
  }
  rep.estimate = mx;  // finite, or -inf when the tail is empty of finite values
  if (m >= 3 && std::isfinite(v[m - 1]) && std::isfinite(v[m - 2]) && std::isfinite(v[m - 3])) {
    const double hi3 = std::max({v[m - 1], v[m - 2], v[m - 3]});
    const double lo3 = std::min({v[m - 1], v[m - 2], v[m - 3]});
    const double scale =
        std::max({std::fabs(v[m - 1]), std::fabs(v[m - 2]), std::fabs(v[m - 3]), 1e-12});
    // The absolute floor covers integrands that balance to zero: their grid
    // values are pure quadrature-termination noise (abs_tol 1e-10 per call)
    // and can never agree to 1% of themselves.
    if (hi3 - lo3 <= std::max(0.01 * scale, 1e-7)) {
      rep.verdict = Verdict::holds;
      return;
    }
  }
  bool nondecreasing = true;
  for (std::size_t i = start + 1; i < m && nondecreasing; ++i)
    if (v[i] < v[i - 1]) nondecreasing = false;
  const double growth_scale = std::max(std::fabs(v[m - 1]), 1e-12);
  if (nondecreasing && std::isfinite(v[start]) && v[m - 1] - v[start] > 0.01 * growth_scale) {
    rep.verdict = Verdict::fails;
    rep.note = "tail still growing under refinement";
    return;
  }
  rep.verdict = Verdict::inconclusive;
  rep.note = "tail neither stabilized nor monotonically growing";
}

// Shared body of the integral limsup conditions: value(t) for every grid t,
// evaluated in parallel across grid points, then classified.
template <class ValueAt>
ConditionReport grid_condition(ConditionId id, std::vector<double> grid, const ValueAt& value_at) {
  ConditionReport rep;
  rep.id = id;
  rep.grid = std::move(grid);
  rep.values.assign(rep.grid.size(), 0.0);
  par::block_apply(rep.grid.size(), rep.values.data(),
                   [&](std::size_t k) { return value_at(rep.grid[k]); });
  apply_verdict(rep);
  return rep;
}

void write_condition_json(JsonWriter& w, const ConditionReport& rep) {
  w.begin_object();
  w.key("id");
  w.value(condition_name(rep.id));
  w.key("estimate");
  w.value(rep.estimate);
  w.key("verdict");
  w.value(verdict_label(rep.verdict));
  w.key("grid");
  w.begin_array();
  for (double t : rep.grid) w.value(t);
  w.end_array();
  w.key("values");
  w.begin_array();
  for (double x : rep.values) w.value(x);
  w.end_array();
  w.key("note");
  w.value(rep.note);
  w.end_object();
}

void write_certificate_json(JsonWriter& w, const HolderCertificate& cert) {
  w.begin_object();
  w.key("issued");
  w.value(cert.issued);
  w.key("center");
  w.begin_array();
  for (double c : cert.center) w.value(c);
  w.end_array();
  w.key("boundary_point");
  w.value(cert.boundary_point);
  w.key("exponent");
  w.value(cert.exponent);
  w.key("raw_exponent");
  w.value(cert.raw_exponent);
  w.key("constant");
  w.value(cert.constant);
  w.key("validity_radius");
  w.value(cert.validity_radius);
  w.key("source");
  w.value(cert.source);
  w.key("constants_symbolic");
  w.value(cert.constants_symbolic);
  w.key("pipeline");
  w.begin_array();
  for (const auto& rec : cert.pipeline) {
    w.begin_object();
    w.key("name");
    w.value(rec.name);
    w.key("value");
    w.value(rec.value);
    w.key("formula");
    w.value(rec.formula);
    w.end_object();
  }
  w.end_array();
  w.key("hypothesis");
  write_condition_json(w, cert.hypothesis);
  w.key("note");
  w.value(cert.note);
  w.end_object();
}

}  // namespace

std::string_view condition_name(ConditionId id) {
  switch (id) {
    case ConditionId::dini: return "dini";
    case ConditionId::lipschitz: return "lipschitz";
    case ConditionId::fmv: return "fmv";
    case ConditionId::ball_mean: return "ball-mean";
    case ConditionId::weighted_ball: return "weighted-ball";
    case ConditionId::boundary_half_disk: return "boundary-half-disk";
    case ConditionId::annulus_log_growth: return "annulus-log-growth";
  }
  return "unknown";
}

void ConditionReport::write_csv(std::ostream& os) const {
  os << "t,value\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    os << fmt17(grid[i]) << ',' << fmt17(values[i]) << '\n';
}

std::string ConditionReport::to_json() const {
  JsonWriter w;
  write_condition_json(w, *this);
  return w.str();
}

std::vector<double> geometric_grid(double eps0, int points, double floor_value) {
  if (!(eps0 > 0.0) || !std::isfinite(eps0))
    throw InputError("geometric_grid: eps0 must be positive and finite");
  if (points < 3) throw InputError("geometric_grid: need at least three points");
  if (!(floor_value > 0.0)) throw InputError("geometric_grid: floor must be positive");
  const double start = eps0 / 2.0;
  if (!(start > floor_value))
    throw InputError("geometric_grid: eps0/2 must exceed the grid floor");
  // Halve per step when the whole ladder stays above the floor; otherwise use
  // the constant ratio that lands exactly on the floor at the last point.
  double ratio = 0.5;
  if (start * std::pow(0.5, points - 1) < floor_value)
    ratio = std::pow(floor_value / start, 1.0 / (points - 1));
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) grid[static_cast<std::size_t>(k)] = start * std::pow(ratio, k);
  return grid;
}

ConditionReport dini_condition(const ScalarField& Q, const Point& x0, double alpha, double eps0,
                               int resolution, const std::vector<double>* t_grid) {
  const int n = general_dims(Q, x0, "dini_condition");
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw InputError("dini_condition: alpha must lie in (0, 1]");
  require_ball(Q, x0, eps0, "dini_condition");
  auto grid = resolve_grid(t_grid, eps0, "dini_condition");
  const ConditionId id = (alpha == 1.0) ? ConditionId::lipschitz : ConditionId::dini;
  return grid_condition(id, std::move(grid), [&](double t) {
    return log_radial_integral(
        [&](double r) {
          const double q = spherical_mean(Q, x0, r, resolution);
          return alpha - inverse_root(q, n);
        },
        t, eps0);
  });
}

ConditionReport fmv_integral_condition(const ScalarField& Q, const Point& x0, double eps0,
                                       int resolution, const std::vector<double>* r_grid) {
  const int n = general_dims(Q, x0, "fmv_integral_condition");
  require_ball(Q, x0, eps0, "fmv_integral_condition");
  auto grid = resolve_grid(r_grid, eps0, "fmv_integral_condition");
  const double omega = unit_sphere_area(n);
  return grid_condition(ConditionId::fmv, std::move(grid), [&](double t) {
    // Radial reduction of the annulus integral of (Q-1)/|x-x0|^n.
    return omega * log_radial_integral(
                       [&](double r) {
                         return spherical_mean(Q, x0, r, resolution) - 1.0;
                       },
                       t, eps0);
  });
}

ConditionReport ball_mean_condition(const ScalarField& Q, const Point& x0, double eps0,
                                    int resolution, const std::vector<double>* eps_grid) {
  general_dims(Q, x0, "ball_mean_condition");
  require_ball(Q, x0, eps0, "ball_mean_condition");
  auto grid = resolve_grid(eps_grid, eps0, "ball_mean_condition");
  return grid_condition(ConditionId::ball_mean, std::move(grid),
                        [&](double eps) { return ball_mean(Q, x0, eps, resolution); });
}

ConditionReport weighted_mean_condition(const ScalarField& Q, const Point& x0,
                                        const DoublingFunction& phi, double eps0, int resolution,
                                        const std::vector<double>* eps_grid) {
  general_dims(Q, x0, "weighted_mean_condition");
  require_ball(Q, x0, eps0, "weighted_mean_condition");
  auto grid = resolve_grid(eps_grid, eps0, "weighted_mean_condition");
  if (1.0 / grid.front() < phi.domain_start() * (1.0 - 1e-12))
    throw InputError("weighted_mean_condition: 1/eps falls below the weight's domain start");
  return grid_condition(ConditionId::weighted_ball, std::move(grid),
                        [&](double eps) { return weighted_ball_mean(Q, x0, eps, phi, resolution); });
}

ConditionReport boundary_mean_condition(const ScalarField& K, const Point& zeta, double eps0,
                                        int resolution, const std::vector<double>* eps_grid) {
  if (!(eps0 > 0.0 && eps0 < 1.0))
    throw InputError("boundary_mean_condition: need eps0 in (0, 1)");
  if (zeta.size() != 2 || std::fabs(std::hypot(zeta[0], zeta[1]) - 1.0) > 1e-12)
    throw InputError("boundary_mean_condition: zeta must lie on the unit circle");
  auto grid = resolve_grid(eps_grid, eps0, "boundary_mean_condition");
  return grid_condition(ConditionId::boundary_half_disk, std::move(grid),
                        [&](double eps) { return half_disk_mean(K, zeta, eps, resolution); });
}

IntegrandComparison integrand_comparison(double q, int n) {
  if (n < 2) throw InputError("integrand_comparison: need n >= 2");
  const double p = 1.0 / (n - 1);
  if (q == 0.0) return {-kInf, -p, true};
  if (std::isinf(q) && q > 0.0) return {1.0, kInf, false};
  return {1.0 - std::pow(q, -p), (q - 1.0) * p, false};
}

HolderCertificate holder_certificate_interior(const ScalarField& Q, const Point& x0, double alpha,
                                              double eps0, double alpha_n, double r0,
                                              int resolution) {
  if (!(alpha_n > 0.0) || !std::isfinite(alpha_n))
    throw InputError("holder_certificate_interior: alpha_n must be positive and finite");
  if (!(r0 > 0.0) || !std::isfinite(r0))
    throw InputError("holder_certificate_interior: r0 must be positive and finite");
  HolderCertificate cert;
  cert.center = x0;
  cert.boundary_point = false;
  cert.source = "interior-dini";
  cert.raw_exponent = alpha;
  cert.exponent = alpha;
  cert.hypothesis = dini_condition(Q, x0, alpha, eps0, resolution);
  if (cert.hypothesis.verdict != ConditionReport::Verdict::holds) {
    cert.issued = false;
    cert.note = "refused: the radial integral condition did not stabilize (verdict " +
                std::string(verdict_label(cert.hypothesis.verdict)) + ", estimate " +
                fmt17(cert.hypothesis.estimate) + ")";
    return cert;
  }
  // The exponential factor needs the sup over every annulus (t, eps0), not
  // just the refinement tail; the sup is at least 0 because the integral
  // vanishes as t -> eps0.
  double M = 0.0;
  for (double v : cert.hypothesis.values)
    if (std::isfinite(v)) M = std::max(M, v);
  const double delta = chordal_diameter_ball_complement(r0);
  const double C_n = alpha_n * (1.0 + r0 * r0) / delta;
  const double C = C_n / std::pow(eps0, alpha) * std::exp(M);
  cert.issued = true;
  cert.constant = C;
  cert.validity_radius = eps0;
  cert.pipeline = {
      {"alpha", alpha, "requested pointwise exponent, in (0, 1]"},
      {"M", M, "max(0, sup over the grid of int_t^eps0 (alpha - q^{-1/(n-1)}(r)) dr/r)"},
      {"r0", r0, "radius of the target ball B(0, r0) containing the image"},
      {"delta", delta, "chordal diameter of the complement of B(0, r0)"},
      {"alpha_n", alpha_n, "caller-supplied dimensional constant of the chordal bound"},
      {"C_n", C_n, "alpha_n * (1 + r0^2) / delta"},
      {"C", C, "C_n / eps0^alpha * exp(M)"},
  };
  return cert;
}

AnnulusGrowthReport annulus_growth_bound(const ScalarField& Q, const Point& x0,
                                         const DoublingFunction& phi, double eps0, int resolution,
                                         const std::vector<double>* eps_grid) {
  const int n = general_dims(Q, x0, "annulus_growth_bound");
  if (!(eps0 > 0.0 && eps0 < 0.5))
    throw InputError("annulus_growth_bound: need eps0 in (0, 1/2)");
  require_ball(Q, x0, eps0, "annulus_growth_bound");
  AnnulusGrowthReport rep;
  rep.eps = resolve_grid(eps_grid, eps0, "annulus_growth_bound");
  const std::size_t m = rep.eps.size();
  // C is the maximum of the weighted ball means over the sampling grid (a
  // finite surrogate for the sup over (0, eps0)).
  std::vector<double> means(m, 0.0);
  par::block_apply(m, means.data(), [&](std::size_t k) {
    return weighted_ball_mean(Q, x0, rep.eps[k], phi, resolution);
  });
  double C = 0.0;
  for (double v : means) {
    if (!std::isfinite(v)) {
      rep.issued = false;
      rep.note = "refused: weighted ball mean is not finite on the sampling grid";
      return rep;
    }
    C = std::max(C, v);
  }
  rep.C = C;
  rep.C1 = phi.gamma() * C * unit_ball_volume(n) * std::pow(2.0, n) / std::log(2.0);
  rep.lhs.assign(m, 0.0);
  rep.rhs.assign(m, 0.0);
  par::block_apply(m, rep.lhs.data(), [&](std::size_t k) {
    return annulus_weighted_integral(Q, x0, rep.eps[k], eps0, phi, resolution);
  });
  for (std::size_t k = 0; k < m; ++k) rep.rhs[k] = rep.C1 * std::log(1.0 / rep.eps[k]);
  for (std::size_t k = 0; k < m; ++k)
    if (!bound_holds(rep.lhs[k], rep.rhs[k])) rep.violations.push_back(rep.eps[k]);
  rep.issued = true;
  rep.all_hold = rep.violations.empty();
  rep.note = "C is the maximum of the weighted ball means over the sampling grid";
  return rep;
}

HolderCertificate ball_mean_certificate(const ScalarField& Q, const Point& x0, double C_from_means,
                                        double delta_or_r, MapClass mode, double eps0,
                                        int resolution) {
  const int n = general_dims(Q, x0, "ball_mean_certificate");
  if (!(eps0 > 0.0 && eps0 < 0.5))
    throw InputError("ball_mean_certificate: need eps0 in (0, 1/2)");
  require_ball(Q, x0, eps0, "ball_mean_certificate");
  if (!(delta_or_r > 0.0) || !std::isfinite(delta_or_r))
    throw InputError("ball_mean_certificate: delta_or_r must be positive and finite");
  if (mode == MapClass::homeomorphism && delta_or_r > 1.0)
    throw InputError("ball_mean_certificate: a chordal separation cannot exceed 1");

  HolderCertificate cert;
  cert.center = x0;
  cert.boundary_point = false;
  cert.source = "ball-mean";
  cert.hypothesis.id = ConditionId::ball_mean;
  if (!(C_from_means > 0.0) || !std::isfinite(C_from_means)) {
    cert.issued = false;
    cert.note = "refused: the declared mean bound C must be a positive finite number";
    return cert;
  }

  // Falsification pass: sampled ball means must stay below the declared C.
  cert.hypothesis.grid = geometric_grid(eps0);
  const std::size_t m = cert.hypothesis.grid.size();
  cert.hypothesis.values.assign(m, 0.0);
  par::block_apply(m, cert.hypothesis.values.data(), [&](std::size_t k) {
    return ball_mean(Q, x0, cert.hypothesis.grid[k], resolution);
  });
  apply_verdict(cert.hypothesis);
  double sup_mean = -kInf;
  for (double v : cert.hypothesis.values) {
    if (!std::isfinite(v)) {
      cert.issued = false;
      cert.note = "refused: sampled ball mean is not finite";
      return cert;
    }
    sup_mean = std::max(sup_mean, v);
  }
  if (!bound_holds(sup_mean, C_from_means)) {
    cert.issued = false;
    cert.note = "refused: sampled ball means reach " + fmt17(sup_mean) +
                ", above the declared bound " + fmt17(C_from_means);
    return cert;
  }

  const double C = C_from_means;
  cert.validity_radius = std::min(0.5, eps0 * eps0);
  if (n == 2) {
    const double C1 = C * unit_ball_volume(2) * 4.0 / std::log(2.0);  // 4*pi*C/log 2
    const double C_eff = 2.0 * C1;
    const double beta_raw = std::log(2.0) / (4.0 * C);
    double delta = delta_or_r;
    std::string delta_formula = "declared chordal separation of the complement of the image";
    if (mode == MapClass::open_discrete) {
      delta = chordal_diameter_ball_complement(delta_or_r);
      delta_formula = "chordal diameter of the complement of B(0, r) with r = " +
                      fmt17(delta_or_r);
    }
    cert.raw_exponent = beta_raw;
    cert.exponent = std::min(1.0, beta_raw);
    cert.constant = (32.0 / delta) * std::pow(eps0, -beta_raw);
    cert.issued = true;
    cert.pipeline = {
        {"C", C, "declared ball-mean bound, checked against the sampling grid"},
        {"C1", C1, "C * Omega_2 * 2^2 / log 2 with Omega_2 = pi (unit-weight annulus growth)"},
        {"C_effective", C_eff, "2 * C1, via log(1/eps) <= 2*log(eps0/eps) for eps < eps0^2"},
        {"beta", beta_raw, "2*pi / C_effective = log 2 / (4*C)"},
        {"delta", delta, delta_formula},
        {"constant", cert.constant, "(32/delta) * eps0^{-beta}"},
    };
    if (beta_raw > 1.0)
      cert.note = "raw exponent exceeds 1; clamped for the certificate statement";
    return cert;
  }
  // n >= 3: the dimensional constants of the chordal bound have no explicit
  // value here; emit the computed annulus-growth constant and flag the rest.
  const double C1 = C * unit_ball_volume(n) * std::pow(2.0, n) / std::log(2.0);
  cert.issued = true;
  cert.constants_symbolic = true;
  cert.raw_exponent = kNaN;
  cert.exponent = kNaN;
  cert.constant = kNaN;
  cert.pipeline = {
      {"C", C, "declared ball-mean bound, checked against the sampling grid"},
      {"C1", C1, "C * Omega_n * 2^n / log 2"},
  };
  cert.note = "exponent and constant left symbolic for n >= 3";
  return cert;
}

DistortionBound radial_weight_distortion(const ScalarField& Q, const Point& z0,
                                         const std::function<double(double)>& psi, double C,
                                         double Delta, double eps0, const Point& z,
                                         int resolution) {
  planar_dims(Q, z0, "radial_weight_distortion");
  if (z.size() != 2) throw InputError("radial_weight_distortion: z must be planar");
  if (!(C > 0.0) || !std::isfinite(C))
    throw InputError("radial_weight_distortion: C must be positive and finite");
  if (!(Delta > 0.0) || !std::isfinite(Delta))
    throw InputError("radial_weight_distortion: Delta must be positive and finite");
  require_ball(Q, z0, eps0, "radial_weight_distortion");
  const double d = std::hypot(z[0] - z0[0], z[1] - z0[1]);
  if (!(d < eps0))
    throw InputError("radial_weight_distortion: z must lie in the open disk D(z0, eps0)");

  DistortionBound out;
  out.eps = geometric_grid(eps0);
  const std::size_t m = out.eps.size();
  out.lhs.assign(m, 0.0);
  out.rhs.assign(m, 0.0);
  std::vector<double> I(m, 0.0);
  par::block_apply(m, I.data(),
                   [&](std::size_t k) { return radial_integral(psi, out.eps[k], eps0); });
  par::block_apply(m, out.lhs.data(), [&](std::size_t k) {
    return 2.0 * kPi * radial_integral(
                           [&](double t) {
                             const double p = psi(t);
                             return spherical_mean(Q, z0, t, resolution) * p * p * t;
                           },
                           out.eps[k], eps0);
  });
  for (std::size_t k = 0; k < m; ++k) {
    out.rhs[k] = C * I[k];
    if (!(I[k] > 0.0) || !std::isfinite(I[k])) {
      out.issued = false;
      out.note = "refused: I(eps) must be positive and finite on the grid (eps = " +
                 fmt17(out.eps[k]) + " gives " + fmt17(I[k]) + ")";
      return out;
    }
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (!bound_holds(out.lhs[k], out.rhs[k])) {
      out.issued = false;
      out.note = "refused: hypothesis violated at eps = " + fmt17(out.eps[k]) + " (" +
                 fmt17(out.lhs[k]) + " > " + fmt17(out.rhs[k]) + ")";
      return out;
    }
  }
  if (d > 0.0) {
    out.I_at_z = radial_integral(psi, d, eps0);
  } else {
    // z = z0: take the limit of I along the grid; if I has not stabilized the
    // weight integral diverges and the bound degenerates to 0.
    const double a = I[m - 1], b = I[m - 2], c = I[m - 3];
    const double scale = std::max({std::fabs(a), std::fabs(b), std::fabs(c), 1e-12});
    const bool settled = std::max({a, b, c}) - std::min({a, b, c}) <= 0.01 * scale;
    out.I_at_z = settled ? a : kInf;
  }
  out.issued = true;
  out.bound = (32.0 / Delta) * std::exp(-(2.0 * kPi / C) * out.I_at_z);
  return out;
}

namespace {

// Per-eps annulus log-growth ratio report used by log_growth_constant and the
// verifying certificate overload.
ConditionReport log_growth_report(const ScalarField& Q, const Point& z0, double eps0,
                                  int resolution, const std::vector<double>* eps_grid) {
  planar_dims(Q, z0, "log_growth_constant");
  if (!(eps0 > 0.0 && eps0 < 1.0))
    throw InputError("log_growth_constant: need eps0 in (0, 1)");
  require_ball(Q, z0, eps0, "log_growth_constant");
  auto grid = resolve_grid(eps_grid, eps0, "log_growth_constant");
  ConditionReport rep = grid_condition(ConditionId::annulus_log_growth, std::move(grid),
                                       [&](double eps) {
                                         const double A =
                                             2.0 * kPi *
                                             log_radial_integral(
                                                 [&](double t) {
                                                   return spherical_mean(Q, z0, t, resolution);
                                                 },
                                                 eps, eps0);
                                         return A / std::log(eps0 / eps);
                                       });
  return rep;
}

}  // namespace

double log_growth_constant(const ScalarField& Q, const Point& z0, double eps0, int resolution,
                           const std::vector<double>* eps_grid) {
  const ConditionReport rep = log_growth_report(Q, z0, eps0, resolution, eps_grid);
  double C = -kInf;
  for (double v : rep.values) C = std::max(C, v);
  return C;
}

HolderCertificate log_growth_certificate(double Delta, double C, double eps0) {
  if (!(Delta > 0.0) || !std::isfinite(Delta))
    throw InputError("log_growth_certificate: Delta must be positive and finite");
  if (!(C > 0.0) || !std::isfinite(C))
    throw InputError("log_growth_certificate: C must be positive and finite");
  if (!(eps0 > 0.0 && eps0 <= 1.0))
    throw InputError("log_growth_certificate: need eps0 in (0, 1]");
  HolderCertificate cert;
  cert.boundary_point = false;
  cert.source = "annulus-log-growth";
  cert.issued = true;
  cert.raw_exponent = 2.0 * kPi / C;
  cert.exponent = std::min(1.0, cert.raw_exponent);
  cert.constant = (32.0 / Delta) * std::pow(eps0, -cert.raw_exponent);
  cert.validity_radius = eps0;
  cert.pipeline = {
      {"C", C, "log-growth bound: annulus integral of Q/|z-z0|^2 <= C*log(eps0/eps)"},
      {"Delta", Delta, "chordal separation of the complement of the image"},
      {"raw_exponent", cert.raw_exponent, "2*pi / C"},
      {"constant", cert.constant, "(32/Delta) * eps0^{-2*pi/C}"},
  };
  if (cert.raw_exponent > 1.0)
    cert.note = "raw exponent exceeds 1; clamped for the certificate statement";
  return cert;
}

HolderCertificate log_growth_certificate(const ScalarField& Q, const Point& z0, double Delta,
                                         double C, double eps0, int resolution) {
  ConditionReport rep = log_growth_report(Q, z0, eps0, resolution, nullptr);
  double C_measured = -kInf;
  for (double v : rep.values) C_measured = std::max(C_measured, v);
  rep.estimate = C_measured;
  const bool ok = std::isfinite(C_measured) && bound_holds(C_measured, C);
  rep.verdict = ok ? ConditionReport::Verdict::holds : ConditionReport::Verdict::fails;
  rep.note = "measured log-growth ratio vs declared C = " + fmt17(C);
  if (!ok) {
    HolderCertificate cert;
    cert.center = z0;
    cert.source = "annulus-log-growth";
    cert.issued = false;
    cert.hypothesis = std::move(rep);
    cert.note = "refused: measured log-growth constant " + fmt17(C_measured) +
                " exceeds the declared bound " + fmt17(C);
    return cert;
  }
  HolderCertificate cert = log_growth_certificate(Delta, C, eps0);
  cert.center = z0;
  cert.hypothesis = std::move(rep);
  cert.pipeline.push_back(
      {"C_measured", C_measured, "max over the grid of the annulus integral / log(eps0/eps)"});
  return cert;
}

BoundaryAnnulusReport boundary_annulus_bound(const ScalarField& Q, const Point& z0, double C_star,
                                             double delta0, int resolution,
                                             const std::vector<double>* eps_grid) {
  planar_dims(Q, z0, "boundary_annulus_bound");
  if (std::fabs(std::hypot(z0[0], z0[1]) - 1.0) > 1e-12)
    throw InputError("boundary_annulus_bound: z0 must lie on the unit circle");
  if (!(C_star > 0.0) || !std::isfinite(C_star))
    throw InputError("boundary_annulus_bound: C_star must be positive and finite");
  if (!(delta0 > 0.0 && delta0 < 1.0))
    throw InputError("boundary_annulus_bound: need delta0 in (0, 1)");
  BoundaryAnnulusReport rep;
  rep.C_star = C_star;
  // Hypothesis: full-disk means over B(z0, r) stay strictly below C_star for
  // every r < delta0 (sampled on a geometric r-grid).
  const std::vector<double> r_grid = geometric_grid(delta0, 20);
  std::vector<double> disk_means(r_grid.size(), 0.0);
  par::block_apply(r_grid.size(), disk_means.data(),
                   [&](std::size_t k) { return ball_mean(Q, z0, r_grid[k], resolution); });
  double sup_mean = -kInf;
  for (double v : disk_means) {
    if (!std::isfinite(v)) {
      rep.issued = false;
      rep.note = "refused: sampled disk mean is not finite";
      return rep;
    }
    sup_mean = std::max(sup_mean, v);
  }
  rep.sup_mean = sup_mean;
  if (!(sup_mean < C_star)) {
    rep.issued = false;
    rep.note = "refused: sampled disk means reach " + fmt17(sup_mean) +
               ", not strictly below C_star = " + fmt17(C_star);
    return rep;
  }
  rep.factor = 4.0 * kPi * C_star / std::log(2.0);
  // The annulus outer radius inherits the working cap of the dyadic argument.
  const double outer = std::min(delta0, 0.5);
  rep.eps = resolve_grid(eps_grid, outer, "boundary_annulus_bound");
  const std::size_t m = rep.eps.size();
  rep.lhs.assign(m, 0.0);
  rep.rhs.assign(m, 0.0);
  par::block_apply(m, rep.lhs.data(), [&](std::size_t k) {
    return 2.0 * kPi * log_radial_integral(
                           [&](double t) {
                             return spherical_mean(Q, z0, t, resolution);
                           },
                           rep.eps[k], outer);
  });
  rep.all_hold = true;
  std::string bad;
  for (std::size_t k = 0; k < m; ++k) {
    rep.rhs[k] = rep.factor * std::log(1.0 / rep.eps[k]);
    if (!bound_holds(rep.lhs[k], rep.rhs[k])) {
      rep.all_hold = false;
      if (bad.empty()) bad = fmt17(rep.eps[k]);
    }
  }
  rep.issued = true;
  rep.note = "annulus outer radius " + fmt17(outer);
  if (!rep.all_hold) rep.note += "; first violation at eps = " + bad;
  return rep;
}

std::string HolderCertificate::to_json() const {
  JsonWriter w;
  write_certificate_json(w, *this);
  return w.str();
}

BoundaryCertificate boundary_holder_certificate(double C, double eps0) {
  if (!(C >= 1.0) || !std::isfinite(C))
    throw InputError("boundary_holder_certificate: need C >= 1");
  if (!(eps0 > 0.0 && eps0 < 1.0))
    throw InputError("boundary_holder_certificate: need eps0 in (0, 1)");
  BoundaryCertificate b;
  b.C = C;
  b.eps0 = eps0;
  b.alpha = std::log(2.0) / (68.0 * C);
  b.delta0 = std::min(0.5, eps0 * eps0);
  b.boundary_constant = 64.0 * std::pow(eps0, -b.alpha);
  b.global_L = std::max(2.0 / std::pow(b.delta0, b.alpha), b.boundary_constant);
  return b;
}

std::string BoundaryCertificate::to_json() const {
  JsonWriter w;
  w.begin_object();
  w.key("C");
  w.value(C);
  w.key("eps0");
  w.value(eps0);
  w.key("alpha");
  w.value(alpha);
  w.key("delta0");
  w.value(delta0);
  w.key("boundary_constant");
  w.value(boundary_constant);
  w.key("global_L");
  w.value(global_L);
  w.key("formulas");
  w.begin_object();
  w.key("alpha");
  w.value("log 2 / (68*C)");
  w.key("delta0");
  w.value("min{1/2, eps0^2}");
  w.key("boundary_constant");
  w.value("64 * eps0^{-alpha}, valid for boundary pairs closer than delta0");
  w.key("global_L");
  w.value("max{2/delta0^alpha, 64*eps0^{-alpha}}");
  w.end_object();
  w.end_object();
  return w.str();
}

}  // namespace qc
