#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "qc/errors.hpp"
#include "qc/fields.hpp"
#include "qc/harness.hpp"
#include "qc/special.hpp"
#include "support.hpp"

using qc::BenchmarkMap;
using qc::Point;
using qc::Region;
using qc::ScalarField;

namespace {

std::vector<double> doubling_radii(double start, int count) {
  std::vector<double> r(count);
  r[0] = start;
  for (int i = 1; i < count; ++i) r[i] = 2.0 * r[i - 1];
  return r;
}

}  // namespace

TEST_CASE("measured continuity exponent of exact power profiles") {
  const Point origin{0.0, 0.0};
  const auto radii = doubling_radii(1e-4, 12);
  for (double a : {0.1, 0.25, 0.5, 0.75, 1.0}) {
    const BenchmarkMap f = BenchmarkMap::radial_stretch(2, a);
    const auto fit = qc::empirical_holder_exponent(f, origin, radii);
    // |f(ru) - f(0)| = r^a exactly, so the log-log fit is exact to rounding.
    CHECK(fit.slope == doctest::Approx(a).epsilon(1e-9));
    CHECK(fit.intercept_log == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK(fit.residual_rms <= 1e-10);
    CHECK(fit.displacement.size() == radii.size());
    CHECK(fit.displacement.front() == doctest::Approx(std::pow(1e-4, a)).epsilon(1e-12));
  }
  const auto id = qc::empirical_holder_exponent(BenchmarkMap::identity(2), origin, radii);
  CHECK(id.slope == doctest::Approx(1.0).epsilon(1e-12));

  // Three dimensions run the Fibonacci-sphere directions; still exact.
  const BenchmarkMap f3 = BenchmarkMap::radial_stretch(3, 0.5);
  const auto fit3 = qc::empirical_holder_exponent(f3, Point{0.0, 0.0, 0.0}, radii);
  CHECK(fit3.slope == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("exponent fit input validation") {
  const BenchmarkMap f = BenchmarkMap::radial_stretch(2, 0.5);
  const Point origin{0.0, 0.0};
  CHECK_THROWS_AS(qc::empirical_holder_exponent(f, Point{0.0, 0.0, 0.0}, doubling_radii(0.01, 8)),
                  qc::InputError);
  CHECK_THROWS_AS(qc::empirical_holder_exponent(f, origin, doubling_radii(0.01, 7)),
                  qc::InputError);
  std::vector<double> unsorted{0.01, 0.02, 0.04, 0.03, 0.08, 0.16, 0.32, 0.64};
  CHECK_THROWS_AS(qc::empirical_holder_exponent(f, origin, unsorted), qc::InputError);
  std::vector<double> nonpositive{-0.01, 0.02, 0.04, 0.08, 0.16, 0.32, 0.64, 1.28};
  CHECK_THROWS_AS(qc::empirical_holder_exponent(f, origin, nonpositive), qc::InputError);

  // A constant lattice map moves nothing: the fit is degenerate.
  qc_test::ScratchFile flat("harness_flat_map",
                            "x,y,u,v\n"
                            "0,0,5,5\n0,1,5,5\n0,2,5,5\n"
                            "1,0,5,5\n1,1,5,5\n1,2,5,5\n"
                            "2,0,5,5\n2,1,5,5\n2,2,5,5\n");
  const BenchmarkMap still = qc::parse_map_spec("grid:" + flat.path(), 2);
  std::vector<double> small{0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08};
  CHECK_THROWS_AS(qc::empirical_holder_exponent(still, Point{1.0, 1.0}, small), qc::InputError);
}

TEST_CASE("exponent fit serializes as a radius/displacement table") {
  std::vector<double> radii{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  const auto fit =
      qc::empirical_holder_exponent(BenchmarkMap::identity(2), Point{0.0, 0.0}, radii);
  std::ostringstream os;
  fit.write_csv(os);
  const std::string text = os.str();
  CHECK(text.rfind("r,displacement\n", 0) == 0);
  CHECK(text.find("0.10000000000000001,") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 9);  // header + 8 rows
}

TEST_CASE("ring inequality is an equality on the extremal pair") {
  // For the stretch exponent a, the weight 1/a and the admissible function
  // eta(r) = 1/(r log(r2/r1)) make both sides 2 pi / (a log(r2/r1)).
  const double r1 = 0.1, r2 = 0.5;
  const double logratio = std::log(r2 / r1);
  for (double a : {0.25, 0.5, 1.0}) {
    const BenchmarkMap f = BenchmarkMap::radial_stretch(2, a);
    const ScalarField Q = ScalarField::constant(1.0 / a);
    const auto check = qc::verify_ring_inequality(
        f, Q, r1, r2, [&](double r) { return 1.0 / (r * logratio); });
    const double expected = 2.0 * qc::kPi / (a * logratio);
    CHECK(check.lhs == doctest::Approx(expected).epsilon(1e-12));
    CHECK(check.rhs == doctest::Approx(expected).epsilon(1e-6));
    CHECK(check.eta_integral == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(check.holds);
  }
  // Frozen planar values for the two stretch benchmarks.
  const auto half = qc::verify_ring_inequality(
      BenchmarkMap::radial_stretch(2, 0.5), ScalarField::constant(2.0), r1, r2,
      [&](double r) { return 1.0 / (r * logratio); });
  CHECK(half.lhs == doctest::Approx(7.8079250633246859).epsilon(1e-12));
  const auto quarter = qc::verify_ring_inequality(
      BenchmarkMap::radial_stretch(2, 0.25), ScalarField::constant(4.0), r1, r2,
      [&](double r) { return 1.0 / (r * logratio); });
  CHECK(quarter.lhs == doctest::Approx(15.615850126649372).epsilon(1e-12));
}

TEST_CASE("ring inequality is strict for an inflated admissible function") {
  const double r1 = 0.1, r2 = 0.5;
  const double logratio = std::log(r2 / r1);
  const auto check = qc::verify_ring_inequality(
      BenchmarkMap::radial_stretch(2, 0.5), ScalarField::constant(2.0), r1, r2,
      [&](double r) { return 2.0 / (r * logratio); });
  CHECK(check.eta_integral == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(check.holds);
  CHECK(check.rhs == doctest::Approx(4.0 * check.lhs).epsilon(1e-6));
  CHECK(check.lhs < check.rhs);
}

TEST_CASE("ring inequality input validation") {
  const BenchmarkMap f = BenchmarkMap::radial_stretch(2, 0.5);
  const ScalarField one = ScalarField::constant(1.0);
  auto eta = [](double r) { return 1.0 / (r * std::log(5.0)); };

  CHECK_THROWS_AS(qc::verify_ring_inequality(f, one, 0.5, 0.1, eta), qc::InputError);
  CHECK_THROWS_AS(qc::verify_ring_inequality(f, one, 0.0, 0.5, eta), qc::InputError);

  // Sub-admissible eta is rejected.
  CHECK_THROWS_AS(qc::verify_ring_inequality(f, one, 0.1, 0.5,
                                             [](double r) { return 0.5 / (r * std::log(5.0)); }),
                  qc::InputError);

  // The ring must stay inside the field's domain.
  const ScalarField small = ScalarField::from_function(
      2, [](std::span<const double>) { return 1.0; },
      qc::FieldDomain::ball({0.0, 0.0}, 0.3), "small-ball");
  CHECK_THROWS_AS(qc::verify_ring_inequality(f, small, 0.1, 0.5, eta), qc::InputError);

  // Non-radial maps have no closed-form image modulus.
  qc_test::ScratchFile grid("harness_ring_map",
                            "x,y,u,v\n"
                            "0,0,0,0\n0,1,1,1\n0,2,2,2\n"
                            "1,0,1,-1\n1,1,2,0\n1,2,3,1\n"
                            "2,0,2,-2\n2,1,3,-1\n2,2,4,0\n");
  const BenchmarkMap warped = qc::parse_map_spec("grid:" + grid.path(), 2);
  CHECK_THROWS_AS(qc::verify_ring_inequality(warped, one, 0.1, 0.5, eta), qc::InputError);
}

TEST_CASE("sampling regions validate their geometry") {
  CHECK_NOTHROW(Region::ball(Point{0.0, 0.0}, 1.0));
  CHECK_THROWS_AS(Region::ball(Point{0.0}, 1.0), qc::InputError);
  CHECK_THROWS_AS(Region::ball(Point{0.0, 0.0}, 0.0), qc::InputError);

  CHECK_NOTHROW(Region::annulus(Point{1.0, -2.0}, 0.5, 1.0));
  CHECK_THROWS_AS(Region::annulus(Point{1.0, -2.0}, 1.0, 0.5), qc::InputError);
  CHECK_THROWS_AS(Region::annulus(Point{1.0, -2.0}, -0.1, 0.5), qc::InputError);

  CHECK_NOTHROW(Region::lens(Point{1.0, 0.0}, 0.25));
  CHECK_THROWS_AS(Region::lens(Point{0.5, 0.0}, 0.25), qc::InputError);
  CHECK_THROWS_AS(Region::lens(Point{1.0, 0.0, 0.0}, 0.25), qc::InputError);
  CHECK_THROWS_AS(Region::lens(Point{1.0, 0.0}, 2.0), qc::InputError);
}

TEST_CASE("sampling oracle reproduces known measures and integrals") {
  const ScalarField one = ScalarField::constant(1.0);

  // Area of the unit disk.
  const auto disk = qc::oracle_integral(one, Region::ball(Point{0.0, 0.0}, 1.0), 200000);
  CHECK(disk.standard_error > 0.0);
  CHECK(std::fabs(disk.value - qc::kPi) <= 4.0 * disk.standard_error);
  CHECK(disk.samples == 200000);

  // Area of an off-center annulus.
  const auto ring =
      qc::oracle_integral(one, Region::annulus(Point{1.0, -2.0}, 0.5, 1.0), 200000);
  CHECK(std::fabs(ring.value - 0.75 * qc::kPi) <= 4.0 * ring.standard_error);

  // Area of the boundary lens D((1,0), 1/4) n D.
  const auto lens = qc::oracle_integral(one, Region::lens(Point{1.0, 0.0}, 0.25), 200000);
  CHECK(std::fabs(lens.value - 0.092958257900502377) <= 4.0 * lens.standard_error);

  // Volume of a 3-ball of radius 1/2.
  const auto ball3 =
      qc::oracle_integral(one, Region::ball(Point{0.0, 0.0, 0.0}, 0.5), 200000);
  CHECK(std::fabs(ball3.value - qc::kPi / 6.0) <= 4.0 * ball3.standard_error);

  // A non-constant integrand: int |x|^2 over the unit disk = pi/2.
  const ScalarField r2 = qc::parse_field_spec("power p=2");
  const auto moment = qc::oracle_integral(r2, Region::ball(Point{0.0, 0.0}, 1.0), 200000);
  CHECK(std::fabs(moment.value - 0.5 * qc::kPi) <= 4.0 * moment.standard_error);
}

TEST_CASE("sampling oracle is deterministic in the seed") {
  const ScalarField one = ScalarField::constant(1.0);
  const Region disk = Region::ball(Point{0.0, 0.0}, 1.0);
  const auto a = qc::oracle_integral(one, disk, 50000, 42);
  const auto b = qc::oracle_integral(one, disk, 50000, 42);
  CHECK(a.value == b.value);
  CHECK(a.standard_error == b.standard_error);
  CHECK(a.seed == 42);
  const auto c = qc::oracle_integral(one, disk, 50000, 43);
  CHECK(c.value != a.value);

  CHECK_THROWS_AS(qc::oracle_integral(one, disk, 999), qc::InputError);
  const ScalarField q3 = ScalarField::power(2.0, Point{0.0, 0.0, 0.0});
  CHECK_THROWS_AS(qc::oracle_integral(q3, disk, 2000), qc::InputError);
}
