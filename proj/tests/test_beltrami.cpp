#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include "doctest.h"
#include "qc/beltrami.hpp"
#include "qc/errors.hpp"
#include "qc/special.hpp"

using qc::BeltramiCoefficient;
using qc::complex;
using qc::PlanarMap;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double cdist(complex a, complex b) { return std::abs(a - b); }

}  // namespace

TEST_CASE("maximal dilatation of a coefficient value") {
  CHECK(qc::max_dilatation({0.0, 0.0}) == 1.0);
  CHECK(qc::max_dilatation({0.5, 0.0}) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(qc::max_dilatation(std::polar(1.0 / 3.0, 1.234)) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(qc::max_dilatation({1.0, 0.0}) == kInf);
  CHECK(qc::max_dilatation({0.8, 0.9}) == kInf);
}

TEST_CASE("coefficient construction enforces |mu| < 1 on the sample") {
  CHECK_NOTHROW(BeltramiCoefficient::constant({0.5, 0.25}));
  CHECK_THROWS_AS(BeltramiCoefficient::constant({1.0, 0.0}), qc::InputError);
  CHECK_THROWS_AS(BeltramiCoefficient::constant({0.8, 0.7}), qc::InputError);
  // A coefficient whose modulus only tends to 1 at the boundary must pass.
  CHECK_NOTHROW(BeltramiCoefficient::from_function(
      "boundary-degenerate", [](complex z) { return complex(std::abs(z), 0.0) * 0.9999; }));

  const auto mu = BeltramiCoefficient::constant({0.25, 0.0});
  CHECK(mu(complex(0.3, 0.4)) == complex(0.25, 0.0));
  CHECK_THROWS_AS(mu(complex(1.0, 0.0)), qc::DomainError);
  CHECK_THROWS_AS(mu(complex(0.8, 0.8)), qc::DomainError);
}

TEST_CASE("radial stretch coefficient matches its closed form") {
  for (double a : {0.25, 0.5, 0.75}) {
    const auto mu = BeltramiCoefficient::radial_stretch(a);
    const double c0 = (a - 1.0) / (1.0 + a);
    std::mt19937_64 gen(101);
    std::uniform_real_distribution<double> rad(0.01, 0.99), ang(0.0, 2.0 * qc::kPi);
    for (int i = 0; i < 200; ++i) {
      const complex z = std::polar(rad(gen), ang(gen));
      CHECK(cdist(mu(z), c0 * z / std::conj(z)) <= 1e-12);
      CHECK(std::abs(mu(z)) == doctest::Approx(std::fabs(c0)).epsilon(1e-12));
    }
    // K is constant: (1+|c0|)/(1-|c0|) = 1/a.
    CHECK(qc::max_dilatation(mu(complex(0.3, 0.1))) == doctest::Approx(1.0 / a).epsilon(1e-12));
  }
  // a = 1 is the identity: mu == 0.
  const auto flat = BeltramiCoefficient::radial_stretch(1.0);
  CHECK(flat(complex(0.4, 0.2)) == complex(0.0, 0.0));
  CHECK_THROWS_AS(BeltramiCoefficient::radial_stretch(0.0), qc::InputError);
}

TEST_CASE("mu spec parser") {
  const auto c = qc::parse_mu_spec("mu-const 0.25 -0.1");
  CHECK(c(complex(0.0, 0.0)) == complex(0.25, -0.1));
  const auto r = qc::parse_mu_spec("mu-radial 0.5");
  CHECK(std::abs(r(complex(0.5, 0.0))) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(qc::parse_mu_spec(""), qc::ParseError);
  CHECK_THROWS_AS(qc::parse_mu_spec("mu-spiral 1"), qc::ParseError);
  CHECK_THROWS_AS(qc::parse_mu_spec("mu-const 0.5"), qc::ParseError);       // arity
  CHECK_THROWS_AS(qc::parse_mu_spec("mu-radial half"), qc::ParseError);     // bad number
  CHECK_THROWS_AS(qc::parse_mu_spec("mu-const 2 0"), qc::InputError);       // |mu| >= 1
}

TEST_CASE("dilatation field of a coefficient") {
  const auto K = qc::dilatation_field(BeltramiCoefficient::radial_stretch(0.5));
  const qc::Point inside{0.3, -0.2};
  CHECK(K(inside) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(K.domain().kind == qc::FieldDomain::Kind::ball);
  CHECK(K.domain().radius == 1.0);
  const qc::Point outside{1.5, 0.0};
  CHECK_THROWS_AS(K(outside), qc::DomainError);

  const auto unit = qc::dilatation_field(BeltramiCoefficient::constant({0.0, 0.0}));
  const qc::Point p{0.9, 0.0};
  CHECK(unit(p) == 1.0);
}

TEST_CASE("planar maps evaluate their formulas") {
  const PlanarMap id = PlanarMap::identity();
  CHECK(id(complex(0.3, -0.7)) == complex(0.3, -0.7));
  CHECK(id.stretch_exponent() == 1.0);

  const PlanarMap half = PlanarMap::radial_stretch(0.5);
  CHECK(cdist(half(complex(0.25, 0.0)), complex(0.5, 0.0)) <= 1e-15);
  CHECK(half(complex(0.0, 0.0)) == complex(0.0, 0.0));

  const PlanarMap sq = PlanarMap::custom("square", [](complex z) { return z * z; });
  CHECK(sq.kind() == PlanarMap::Kind::custom);
  CHECK(cdist(sq(complex(1.0, 1.0)), complex(0.0, 2.0)) <= 1e-15);

  CHECK_THROWS_AS(PlanarMap::radial_stretch(-1.0), qc::InputError);
}

TEST_CASE("finite-difference derivative pairs") {
  // Analytic map z^2: f_z = 2z, f_zbar = 0; central differences are exact for
  // quadratics, so only rounding noise remains.
  const PlanarMap sq = PlanarMap::custom("square", [](complex z) { return z * z; });
  const complex z0(1.0, 1.0);
  const auto d = qc::wirtinger_derivatives(sq, z0);
  CHECK(cdist(d.f_z, 2.0 * z0) <= 1e-8);
  CHECK(std::abs(d.f_zbar) <= 1e-8);
  CHECK(d.stencil_converged);

  // Anti-analytic conj(z): f_z = 0, f_zbar = 1.
  const PlanarMap bar = PlanarMap::custom("conjugate", [](complex z) { return std::conj(z); });
  const auto db = qc::wirtinger_derivatives(bar, z0);
  CHECK(std::abs(db.f_z) <= 1e-10);
  CHECK(cdist(db.f_zbar, complex(1.0, 0.0)) <= 1e-10);

  // Jacobian of the identity is 1; of conj(z) is -1.
  CHECK(qc::jacobian(PlanarMap::identity(), z0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(qc::jacobian(bar, z0) == doctest::Approx(-1.0).epsilon(1e-9));

  // A jump under the stencil trips the Richardson consistency flag.
  const PlanarMap jump = PlanarMap::custom(
      "jump", [](complex z) { return std::abs(z) < 0.3 ? complex(0.0, 0.0) : z; });
  const auto dj = qc::wirtinger_derivatives(jump, complex(0.3, 0.0));
  CHECK_FALSE(dj.stencil_converged);

  CHECK_THROWS_AS(qc::wirtinger_derivatives(sq, z0, 0.0), qc::InputError);
}

TEST_CASE("measured coefficient of the radial stretch matches the closed form") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> rad(0.2, 0.8), ang(0.0, 2.0 * qc::kPi);
  for (double a : {0.25, 0.5, 0.75}) {
    const PlanarMap f = PlanarMap::radial_stretch(a);
    const double c0 = (a - 1.0) / (1.0 + a);
    for (int i = 0; i < 50; ++i) {
      const complex z = std::polar(rad(gen), ang(gen));
      const complex expected = c0 * z / std::conj(z);
      CHECK(cdist(qc::coefficient_of_map(f, z), expected) <= 1e-6);
    }
    // Jacobian of z|z|^{a-1} is a*r^{2a-2}.
    const complex probe(0.4, 0.3);
    CHECK(qc::jacobian(f, probe) ==
          doctest::Approx(a * std::pow(std::abs(probe), 2.0 * a - 2.0)).epsilon(1e-5));
  }
  // The identity has coefficient 0.
  CHECK(std::abs(qc::coefficient_of_map(PlanarMap::identity(), complex(0.5, 0.2))) <= 1e-12);
}

TEST_CASE("reflected coefficient: unimodular factor preserves modulus") {
  const auto radial = BeltramiCoefficient::radial_stretch(0.5);
  const auto linear = BeltramiCoefficient::from_function(
      "half-linear", [](complex z) { return 0.5 * z; });
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> rad(1.01, 25.0), ang(0.0, 2.0 * qc::kPi);
  for (int i = 0; i < 1000; ++i) {
    const complex z = std::polar(rad(gen), ang(gen));
    const complex w = 1.0 / std::conj(z);
    CHECK(std::abs(qc::reflect_coefficient(radial, z)) ==
          doctest::Approx(std::abs(radial(w))).epsilon(1e-12));
    CHECK(std::abs(qc::reflect_coefficient(linear, z)) ==
          doctest::Approx(std::abs(linear(w))).epsilon(1e-12));
  }
  // For the radial stretch the reflected coefficient has the same closed form
  // c0 * z/conj(z) outside the disk.
  const complex z(1.7, -0.9);
  CHECK(cdist(qc::reflect_coefficient(radial, z), (-1.0 / 3.0) * z / std::conj(z)) <= 1e-12);

  CHECK_THROWS_AS(qc::reflect_coefficient(radial, complex(0.5, 0.0)), qc::InputError);
}

TEST_CASE("symmetry extension of a disk self-map") {
  const PlanarMap f = PlanarMap::radial_stretch(0.5);
  const qc::ReflectedMap F = qc::reflect_map(f);

  // Inside: the extension is the map itself, bit for bit.
  const complex zin(0.3, 0.4);
  CHECK(F(zin) == f(zin));

  // Outside: the radial stretch is its own extension, F(z) = z|z|^{a-1}.
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> rad(1.1, 10.0), ang(0.0, 2.0 * qc::kPi);
  for (int i = 0; i < 300; ++i) {
    const complex z = std::polar(rad(gen), ang(gen));
    const complex expected = z * std::pow(std::abs(z), -0.5);
    CHECK(cdist(F(z), expected) <= 1e-12 * std::abs(expected));
    CHECK(std::abs(F(z)) > 1.0);  // the exterior maps to the exterior
  }

  // A map that leaves the disk is rejected before extension.
  const PlanarMap doubling = PlanarMap::custom("double", [](complex z) { return 2.0 * z; });
  CHECK_THROWS_AS(qc::reflect_map(doubling), qc::InputError);
}

TEST_CASE("inversion weight circle maximum") {
  for (double eps : {0.05, 0.1, 0.25, 0.49}) {
    const auto rep = qc::inversion_weight_max(eps);
    const double expected = 1.0 / ((1.0 - eps) * (1.0 - eps));
    // phi = pi sits on the even sampling grid, so the max is attained exactly.
    CHECK(rep.sampled_max == expected);
    CHECK(rep.closed_form == expected);
    CHECK(rep.argmax_phi == doctest::Approx(qc::kPi).epsilon(1e-12));
    CHECK(rep.fourth_power == doctest::Approx(expected * expected).epsilon(1e-15));
    CHECK(rep.closed_form < 4.0);
    CHECK(rep.fourth_power < 16.0);
  }
  CHECK_THROWS_AS(qc::inversion_weight_max(0.5), qc::InputError);
  CHECK_THROWS_AS(qc::inversion_weight_max(0.0), qc::InputError);
}

TEST_CASE("reflected dilatation mass over a boundary disk") {
  const complex zeta(1.0, 0.0);
  // mu == 0: K == 1 everywhere, so the disk integral is pi*eps^2 and the
  // comparison side is 17 times the lens area.
  const double lens_01 = 0.015374546534240401;  // |D cap D((1,0), 0.1)|
  const auto rep = qc::reflected_mass_bound(BeltramiCoefficient::constant({0.0, 0.0}), zeta, 0.1);
  CHECK(rep.issued);
  CHECK(rep.lhs == doctest::Approx(qc::kPi * 0.01).epsilon(1e-6));
  CHECK(rep.rhs == doctest::Approx(17.0 * lens_01).epsilon(1e-6));
  CHECK(rep.holds);
  CHECK(rep.ratio == doctest::Approx(rep.lhs / rep.rhs).epsilon(1e-15));
  CHECK(rep.ratio < 1.0);

  // Constant K == 2 scales both sides: the ratio is unchanged.
  const auto scaled = qc::reflected_mass_bound(BeltramiCoefficient::radial_stretch(0.5), zeta, 0.1);
  CHECK(scaled.issued);
  CHECK(scaled.lhs == doctest::Approx(2.0 * qc::kPi * 0.01).epsilon(1e-6));
  CHECK(scaled.ratio == doctest::Approx(rep.ratio).epsilon(1e-9));
  CHECK(scaled.holds);

  CHECK_THROWS_AS(
      qc::reflected_mass_bound(BeltramiCoefficient::constant({0.0, 0.0}), complex(0.5, 0.0), 0.1),
      qc::InputError);
  CHECK_THROWS_AS(qc::reflected_mass_bound(BeltramiCoefficient::constant({0.0, 0.0}), zeta, 0.5),
                  qc::InputError);
}

TEST_CASE("reflected dilatation mass over an exterior annulus") {
  // mu == 0: lhs = pi*(R^2-1), rhs = pi*R^4.
  for (double R : {1.5, 2.0}) {
    const auto rep = qc::annulus_mass_bound(BeltramiCoefficient::constant({0.0, 0.0}), R);
    CHECK(rep.issued);
    CHECK(rep.lhs == doctest::Approx(qc::kPi * (R * R - 1.0)).epsilon(1e-6));
    CHECK(rep.rhs == doctest::Approx(qc::kPi * R * R * R * R).epsilon(1e-6));
    CHECK(rep.holds);
    CHECK(rep.ratio == doctest::Approx((R * R - 1.0) / (R * R * R * R)).epsilon(1e-6));
  }
  // Constant dilatation 2 scales both sides equally.
  const auto two = qc::annulus_mass_bound(BeltramiCoefficient::radial_stretch(0.5), 2.0);
  CHECK(two.lhs == doctest::Approx(2.0 * qc::kPi * 3.0).epsilon(1e-6));
  CHECK(two.rhs == doctest::Approx(2.0 * qc::kPi * 16.0).epsilon(1e-6));
  CHECK(two.holds);

  CHECK_THROWS_AS(qc::annulus_mass_bound(BeltramiCoefficient::constant({0.0, 0.0}), 1.0),
                  qc::InputError);
}

TEST_CASE("dilatation of the reflection agrees inside and outside") {
  // K_F(z) inside equals K_mu(z); outside it equals K_mu(1/conj z). Probe via
  // the coefficient interfaces for a non-constant |mu|.
  const auto mu = BeltramiCoefficient::from_function(
      "half-linear", [](complex z) { return 0.5 * z; });
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> rad(1.05, 5.0), ang(0.0, 2.0 * qc::kPi);
  for (int i = 0; i < 200; ++i) {
    const complex z = std::polar(rad(gen), ang(gen));
    const complex w = 1.0 / std::conj(z);
    CHECK(qc::max_dilatation(qc::reflect_coefficient(mu, z)) ==
          doctest::Approx(qc::max_dilatation(mu(w))).epsilon(1e-12));
  }
}
