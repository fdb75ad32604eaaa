#include "qc/beltrami.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

#include "qc/errors.hpp"
#include "qc/means.hpp"
#include "qc/parallel.hpp"
#include "qc/special.hpp"

namespace qc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Deterministic polar sample of the open disk used by construction checks.
template <class Check>
void sample_disk(const Check& check) {
  static constexpr std::array<double, 12> radii = {0.05, 0.15, 0.25, 0.35, 0.45, 0.55,
                                                   0.65, 0.75, 0.85, 0.95, 0.99, 0.999};
  check(complex(0.0, 0.0));
  for (double r : radii)
    for (int j = 0; j < 64; ++j) check(std::polar(r, 2.0 * kPi * j / 64.0));
}

struct Token {
  std::string text;
  std::size_t pos;  // 1-based character offset
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    out.push_back({std::string(text.substr(i, j - i)), i + 1});
    i = j;
  }
  return out;
}

double parse_number(const Token& tok, const char* what) {
  double v = 0.0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || p != last)
    throw ParseError(std::string("mu spec: ") + what + " is not a number: '" + tok.text + "'",
                     tok.pos);
  return v;
}

}  // namespace

double max_dilatation(complex mu) {
  const double m = std::abs(mu);
  if (std::isnan(m)) return std::numeric_limits<double>::quiet_NaN();
  if (m >= 1.0) return kInf;
  return (1.0 + m) / (1.0 - m);
}

BeltramiCoefficient::BeltramiCoefficient(std::string label, std::function<complex(complex)> f)
    : label_(std::move(label)), eval_(std::move(f)) {
  sample_disk([&](complex z) {
    const double m = std::abs(eval_(z));
    if (!(m < 1.0))
      throw InputError("BeltramiCoefficient '" + label_ + "': |mu| = " + std::to_string(m) +
                       " >= 1 at sampled z = (" + std::to_string(z.real()) + ", " +
                       std::to_string(z.imag()) + ")");
  });
}

BeltramiCoefficient BeltramiCoefficient::constant(complex c) {
  return {"mu-const " + std::to_string(c.real()) + " " + std::to_string(c.imag()),
          [c](complex) { return c; }};
}

BeltramiCoefficient BeltramiCoefficient::radial_stretch(double a) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw InputError("BeltramiCoefficient::radial_stretch: need a > 0");
  const double c0 = (a - 1.0) / (1.0 + a);
  return {"mu-radial " + std::to_string(a), [c0](complex z) {
            if (z == complex(0.0, 0.0)) return complex(c0, 0.0);
            return c0 * z / std::conj(z);
          }};
}

BeltramiCoefficient BeltramiCoefficient::grid(const std::string& path) {
  auto re = std::make_shared<GridData>(load_grid_csv(path, 2, 0, false));
  auto im = std::make_shared<GridData>(load_grid_csv(path, 2, 1, false));
  if (re->dim() != 2)
    throw InputError("BeltramiCoefficient::grid: lattice in '" + path + "' must be planar");
  return {"mu-grid " + path, [re, im](complex z) {
            const std::array<double, 2> x = {z.real(), z.imag()};
            return complex(re->value(x, GridData::Interp::multilinear),
                           im->value(x, GridData::Interp::multilinear));
          }};
}

BeltramiCoefficient BeltramiCoefficient::from_function(std::string label,
                                                       std::function<complex(complex)> f) {
  return {std::move(label), std::move(f)};
}

complex BeltramiCoefficient::operator()(complex z) const {
  if (!(std::abs(z) < 1.0))
    throw DomainError("BeltramiCoefficient: evaluation outside the open unit disk");
  return eval_(z);
}

BeltramiCoefficient parse_mu_spec(std::string_view text) {
  const auto toks = tokenize(text);
  if (toks.empty()) throw ParseError("mu spec: empty", 1);
  const std::string& family = toks[0].text;
  auto expect_args = [&](std::size_t n) {
    if (toks.size() != n + 1)
      throw ParseError("mu spec: '" + family + "' takes " + std::to_string(n) + " argument(s)",
                       toks[0].pos);
  };
  if (family == "mu-const") {
    expect_args(2);
    return BeltramiCoefficient::constant(
        {parse_number(toks[1], "re"), parse_number(toks[2], "im")});
  }
  if (family == "mu-radial") {
    expect_args(1);
    return BeltramiCoefficient::radial_stretch(parse_number(toks[1], "a"));
  }
  if (family == "mu-grid") {
    expect_args(1);
    return BeltramiCoefficient::grid(toks[1].text);
  }
  throw ParseError("mu spec: unknown family '" + family + "'", toks[0].pos);
}

ScalarField dilatation_field(const BeltramiCoefficient& mu) {
  return ScalarField::from_function(
      2,
      [mu](std::span<const double> x) {
        return max_dilatation(mu(complex(x[0], x[1])));
      },
      FieldDomain::ball({0.0, 0.0}, 1.0), "K[" + mu.describe() + "]");
}

PlanarMap::PlanarMap(Kind kind, double exponent, std::string label,
                     std::function<complex(complex)> f)
    : kind_(kind), exponent_(exponent), label_(std::move(label)), eval_(std::move(f)) {}

PlanarMap PlanarMap::identity() {
  return {Kind::identity, 1.0, "identity", [](complex z) { return z; }};
}

PlanarMap PlanarMap::radial_stretch(double a) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw InputError("PlanarMap::radial_stretch: need a > 0");
  return {Kind::radial_stretch, a, "radial-stretch " + std::to_string(a), [a](complex z) {
            const double r = std::abs(z);
            if (r == 0.0) return complex(0.0, 0.0);
            return z * std::pow(r, a - 1.0);
          }};
}

PlanarMap PlanarMap::custom(std::string label, std::function<complex(complex)> f) {
  return {Kind::custom, 0.0, std::move(label), std::move(f)};
}

namespace {

WirtingerPair stencil(const PlanarMap& f, complex z, double h) {
  const complex fx = (f(z + complex(h, 0.0)) - f(z - complex(h, 0.0))) / (2.0 * h);
  const complex fy = (f(z + complex(0.0, h)) - f(z - complex(0.0, h))) / (2.0 * h);
  const complex i(0.0, 1.0);
  return {0.5 * (fx - i * fy), 0.5 * (fx + i * fy), true};
}

}  // namespace

WirtingerPair wirtinger_derivatives(const PlanarMap& f, complex z, double h) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw InputError("wirtinger_derivatives: h must be positive and finite");
  const WirtingerPair coarse = stencil(f, z, h);
  WirtingerPair fine = stencil(f, z, h / 2.0);
  const double scale =
      std::max({std::abs(fine.f_z), std::abs(fine.f_zbar), 1e-12});
  fine.stencil_converged = std::abs(coarse.f_z - fine.f_z) <= 1e-5 * scale &&
                           std::abs(coarse.f_zbar - fine.f_zbar) <= 1e-5 * scale;
  return fine;
}

complex coefficient_of_map(const PlanarMap& f, complex z, double h) {
  const WirtingerPair d = wirtinger_derivatives(f, z, h);
  if (std::abs(d.f_z) < 1e-12) return {0.0, 0.0};
  return d.f_zbar / d.f_z;
}

double jacobian(const PlanarMap& f, complex z, double h) {
  const WirtingerPair d = wirtinger_derivatives(f, z, h);
  return std::norm(d.f_z) - std::norm(d.f_zbar);
}

complex reflect_coefficient(const BeltramiCoefficient& mu, complex z) {
  if (!(std::abs(z) > 1.0))
    throw InputError("reflect_coefficient: the reflected coefficient lives on |z| > 1");
  const complex w = 1.0 / std::conj(z);
  const complex zbar = std::conj(z);
  return (z * z) / (zbar * zbar) * std::conj(mu(w));
}

complex ReflectedMap::operator()(complex z) const {
  if (std::abs(z) <= 1.0) return inner_(z);
  const complex w = 1.0 / std::conj(z);
  return 1.0 / std::conj(inner_(w));
}

ReflectedMap reflect_map(const PlanarMap& f) {
  sample_disk([&](complex z) {
    const double m = std::abs(f(z));
    if (!(m < 1.0))
      throw InputError("reflect_map: '" + f.describe() +
                       "' must send the unit disk into itself; |f| = " + std::to_string(m) +
                       " at sampled z = (" + std::to_string(z.real()) + ", " +
                       std::to_string(z.imag()) + ")");
  });
  return ReflectedMap(f);
}

InversionWeightReport inversion_weight_max(double eps, int samples) {
  if (!(eps > 0.0 && eps < 0.5))
    throw InputError("inversion_weight_max: need eps in (0, 1/2)");
  if (samples < 4) throw InputError("inversion_weight_max: need at least 4 samples");
  if (samples % 2 != 0) ++samples;  // keep phi = pi on the grid
  InversionWeightReport rep;
  rep.closed_form = 1.0 / ((1.0 - eps) * (1.0 - eps));
  rep.fourth_power = rep.closed_form * rep.closed_form;
  rep.sampled_max = -kInf;
  for (int j = 0; j < samples; ++j) {
    const double phi = 2.0 * kPi * j / samples;
    const complex w = 1.0 + eps * std::polar(1.0, phi);
    const double weight = 1.0 / std::norm(w);
    if (weight > rep.sampled_max) {
      rep.sampled_max = weight;
      rep.argmax_phi = phi;
    }
  }
  return rep;
}

namespace {

// K of the reflected coefficient at any w != 0: the unimodular prefactor of
// the reflection leaves |mu| unchanged, so K_F(w) = K_mu(w) inside the disk
// and K_mu(1/conj(w)) outside. Points that land exactly on the unit circle
// are nudged inward; the circle is a null set for every mass integral here.
double reflected_dilatation(const BeltramiCoefficient& mu, complex w) {
  double r = std::abs(w);
  if (r >= 1.0) {
    w /= std::norm(w);  // 1/conj(w)
    r = std::abs(w);
  }
  if (r >= 1.0) w *= (1.0 - 1e-15) / r;
  return max_dilatation(mu(w));
}

MassBound refuse_if_not_finite(MassBound out, const char* who) {
  if (!std::isfinite(out.lhs) || !std::isfinite(out.rhs)) {
    out.issued = false;
    out.holds = false;
    out.note = std::string(who) + ": refused, dilatation mass is not finite";
    return out;
  }
  out.issued = true;
  out.ratio = out.lhs / out.rhs;
  return out;
}

}  // namespace

MassBound reflected_mass_bound(const BeltramiCoefficient& mu, complex zeta, double eps,
                               int resolution) {
  if (std::fabs(std::abs(zeta) - 1.0) > 1e-12)
    throw InputError("reflected_mass_bound: zeta must lie on the unit circle");
  if (!(eps > 0.0 && eps < 0.5))
    throw InputError("reflected_mass_bound: need eps in (0, 1/2)");
  const int m = std::max(resolution, 16);
  const double theta = std::arg(zeta);

  // Full circle |w - zeta| = t, midpoint rule.
  auto full_ring = [&](double t) {
    const double dphi = 2.0 * kPi / m;
    const double s = par::block_sum(static_cast<std::size_t>(m), [&](std::size_t j) {
      const double phi = (static_cast<double>(j) + 0.5) * dphi;
      return reflected_dilatation(mu, zeta + t * std::polar(1.0, phi));
    });
    return s * dphi;
  };
  // Arc of the same circle inside the unit disk: |zeta + t e^{i phi}| < 1
  // exactly when cos(phi - theta) < -t/2, an arc of measure 2*arccos(t/2).
  auto lens_ring = [&](double t) {
    const double half = std::acos(std::clamp(t / 2.0, 0.0, 1.0));
    if (!(half > 0.0)) return 0.0;
    const double start = theta + kPi - half;
    const double dphi = 2.0 * half / m;
    const double s = par::block_sum(static_cast<std::size_t>(m), [&](std::size_t j) {
      const double phi = start + (static_cast<double>(j) + 0.5) * dphi;
      complex w = zeta + t * std::polar(1.0, phi);
      // The arc abuts the unit circle; nudge rounding casualties inward
      // (and the degenerate t = 0 ring, which the radial factor kills).
      const double r = std::abs(w);
      if (r >= 1.0) w *= (1.0 - 1e-15) / r;
      return max_dilatation(mu(w));
    });
    return s * dphi;
  };

  MassBound out;
  out.lhs = radial_integral([&](double t) { return t * full_ring(t); }, 0.0, eps);
  out.rhs = 17.0 * radial_integral([&](double t) { return t * lens_ring(t); }, 0.0, eps);
  out = refuse_if_not_finite(std::move(out), "reflected_mass_bound");
  if (out.issued) out.holds = out.lhs < out.rhs;
  return out;
}

MassBound annulus_mass_bound(const BeltramiCoefficient& mu, double R, int resolution) {
  if (!(R > 1.0) || !std::isfinite(R))
    throw InputError("annulus_mass_bound: need R > 1");
  const int m = std::max(resolution, 16);

  // Angular mean of K_mu on the circle of radius r (clamped inside the disk).
  auto ring_mass = [&](double r) {
    if (r >= 1.0) r = 1.0 - 1e-15;
    const double dphi = 2.0 * kPi / m;
    const double s = par::block_sum(static_cast<std::size_t>(m), [&](std::size_t j) {
      const double phi = (static_cast<double>(j) + 0.5) * dphi;
      return max_dilatation(mu(std::polar(r, phi)));
    });
    return s * dphi;
  };

  MassBound out;
  // K_F on |z| = t equals K_mu on |w| = 1/t.
  out.lhs = radial_integral([&](double t) { return t * ring_mass(1.0 / t); }, 1.0, R);
  const double disk_mass = radial_integral([&](double t) { return t * ring_mass(t); }, 0.0, 1.0);
  out.rhs = R * R * R * R * disk_mass;
  out = refuse_if_not_finite(std::move(out), "annulus_mass_bound");
  if (out.issued) out.holds = out.lhs <= out.rhs * (1.0 + 1e-9) + 1e-12;
  return out;
}

}  // namespace qc
