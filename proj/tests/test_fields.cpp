#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "qc/errors.hpp"
#include "qc/fields.hpp"
#include "support.hpp"

using qc::Point;
using qc::ScalarField;

namespace {

double at(const ScalarField& f, std::initializer_list<double> x) {
  const Point p(x);
  return f(p);
}

}  // namespace

TEST_CASE("parametric field families evaluate to their formulas") {
  const ScalarField one = ScalarField::constant(1.0);
  CHECK(at(one, {0.0, 0.0}) == 1.0);
  CHECK(at(one, {3.0, -4.0, 12.0}) == 1.0);  // dim 0 accepts any dimension

  const ScalarField sq = ScalarField::power(2.0);
  CHECK(at(sq, {3.0, 4.0}) == doctest::Approx(25.0).epsilon(1e-15));
  CHECK(at(sq, {0.0, 0.0}) == 0.0);

  const ScalarField affine = ScalarField::power(1.0, {}, 1.0);
  CHECK(at(affine, {0.6, 0.8}) == doctest::Approx(2.0).epsilon(1e-15));

  const ScalarField shifted = ScalarField::power(1.0, Point{1.0, 2.0}, 0.0, 3.0);
  CHECK(at(shifted, {1.0, 4.0}) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK_THROWS_AS(at(shifted, {1.0, 2.0, 3.0}), qc::InputError);  // center pins the dimension

  const ScalarField k3 = ScalarField::radial_k(3.0);
  CHECK(at(k3, {0.25, 0.0}) == 3.0);
  CHECK(at(k3, {7.0, 7.0}) == 3.0);

  const ScalarField spike = ScalarField::fmo_spike(3.0, 0.1);
  CHECK(at(spike, {0.05, 0.0}) == 4.0);
  CHECK(at(spike, {0.1, 0.0}) == 1.0);  // indicator is open: boundary not included
  CHECK(at(spike, {0.5, 0.5}) == 1.0);
}

TEST_CASE("power field limit conventions at the center") {
  CHECK(at(ScalarField::power(0.0), {0.0, 0.0}) == 1.0);
  CHECK(at(ScalarField::power(-1.0), {0.0, 0.0}) ==
        std::numeric_limits<double>::infinity());
  CHECK(at(ScalarField::power(0.5), {0.0, 0.0}) == 0.0);
}

TEST_CASE("log-power field values and domain") {
  const ScalarField f = ScalarField::log_power(1.0, 1.0);
  const double r = std::exp(-1.0);
  CHECK(at(f, {r, 0.0}) == doctest::Approx(r).epsilon(1e-14));  // r * log(1/r) with log = 1
  CHECK(at(f, {0.0, 0.0}) == 0.0);

  const ScalarField g = ScalarField::log_power(0.0, -1.0);
  CHECK(at(g, {r * r, 0.0}) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(g.domain().kind == qc::FieldDomain::Kind::ball);
  CHECK(g.domain().radius == 1.0);
}

TEST_CASE("field constructor validation") {
  CHECK_THROWS_AS(ScalarField::constant(-1.0), qc::InputError);
  CHECK_THROWS_AS(ScalarField::constant(std::numeric_limits<double>::infinity()), qc::InputError);
  CHECK_THROWS_AS(ScalarField::fmo_spike(-1.0, 0.1), qc::InputError);
  CHECK_THROWS_AS(ScalarField::fmo_spike(1.0, 0.0), qc::InputError);
  CHECK_THROWS_AS(ScalarField::power(1.0, {}, -1.0), qc::InputError);
}

TEST_CASE("field spec parser round-trips the families") {
  CHECK(at(qc::parse_field_spec("const 1"), {0.4, -0.2}) == 1.0);
  CHECK(at(qc::parse_field_spec("const 2.5"), {0.0, 0.0}) == 2.5);
  CHECK(at(qc::parse_field_spec("power p=2"), {3.0, 4.0}) == doctest::Approx(25.0));
  CHECK(at(qc::parse_field_spec("power p=1 offset=1"), {0.6, 0.8}) == doctest::Approx(2.0));
  CHECK(at(qc::parse_field_spec("power p=1 center=1,2 scale=3"), {1.0, 4.0}) ==
        doctest::Approx(6.0));
  CHECK(at(qc::parse_field_spec("radial-K K=4"), {0.3, 0.3}) == 4.0);
  CHECK(at(qc::parse_field_spec("fmo-spike c=3 rho=0.1"), {0.05, 0.0}) == 4.0);
  CHECK(at(qc::parse_field_spec("log-power p=1 q=1"), {std::exp(-1.0), 0.0}) ==
        doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("field spec parser rejects malformed specs with positions") {
  CHECK_THROWS_AS(qc::parse_field_spec(""), qc::ParseError);
  CHECK_THROWS_AS(qc::parse_field_spec("nonsense 1"), qc::ParseError);
  CHECK_THROWS_AS(qc::parse_field_spec("const"), qc::ParseError);
  CHECK_THROWS_AS(qc::parse_field_spec("const one"), qc::ParseError);
  CHECK_THROWS_AS(qc::parse_field_spec("power"), qc::ParseError);           // missing p
  CHECK_THROWS_AS(qc::parse_field_spec("power p=2 zeta=1"), qc::ParseError);  // unknown key
  CHECK_THROWS_AS(qc::parse_field_spec("radial-K K=x"), qc::ParseError);
  try {
    qc::parse_field_spec("power p=oops");
    FAIL("expected ParseError");
  } catch (const qc::ParseError& e) {
    CHECK(std::string(e.what()).find("oops") != std::string::npos);
  }
}

TEST_CASE("grid fields interpolate lattice samples") {
  // Samples of 2 + x + 3y on a 3x3 lattice; multilinear interpolation
  // reproduces any affine function exactly.
  qc_test::ScratchFile csv("grid_affine",
                           "x,y,q\n"
                           "0,0,2\n0,1,5\n0,2,8\n"
                           "1,0,3\n1,1,6\n1,2,9\n"
                           "2,0,4\n2,1,7\n2,2,10\n");
  const ScalarField f = qc::load_grid_field(csv.path());
  CHECK(f.dim() == 2);
  CHECK(at(f, {0.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(at(f, {1.5, 0.5}) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(at(f, {0.25, 1.75}) == doctest::Approx(7.5).epsilon(1e-14));
  CHECK_THROWS_AS(at(f, {2.5, 0.0}), qc::DomainError);
  CHECK_THROWS_AS(at(f, {-0.5, 0.0}), qc::DomainError);

  const ScalarField nearest = qc::load_grid_field(csv.path(), qc::GridData::Interp::nearest);
  CHECK(at(nearest, {0.9, 0.1}) == 3.0);
  CHECK(at(nearest, {0.4, 1.6}) == 8.0);
}

TEST_CASE("grid ingestion rejects broken lattices") {
  qc_test::ScratchFile missing("grid_missing", "x,y,q\n0,0,1\n0,1,1\n1,0,1\n");
  CHECK_THROWS_AS(qc::load_grid_field(missing.path()), qc::FormatError);

  qc_test::ScratchFile dup("grid_dup", "x,y,q\n0,0,1\n0,1,1\n1,0,1\n0,0,2\n");
  CHECK_THROWS_AS(qc::load_grid_field(dup.path()), qc::FormatError);

  qc_test::ScratchFile negative("grid_negative", "x,y,q\n0,0,1\n0,1,1\n1,0,-3\n1,1,1\n");
  CHECK_THROWS_AS(qc::load_grid_field(negative.path()), qc::FormatError);

  qc_test::ScratchFile uneven("grid_uneven",
                              "x,y,q\n0,0,1\n0,1,1\n0,3,1\n1,0,1\n1,1,1\n1,3,1\n");
  CHECK_THROWS_AS(qc::load_grid_field(uneven.path()), qc::FormatError);

  qc_test::ScratchFile garbage("grid_garbage", "x,y,q\n0,0,abc\n");
  CHECK_THROWS_AS(qc::load_grid_field(garbage.path()), qc::FormatError);

  CHECK_THROWS_AS(qc::load_grid_field("/nonexistent/path/data.csv"), qc::FormatError);
}

TEST_CASE("benchmark maps and their exact dilatations") {
  const qc::BenchmarkMap id = qc::BenchmarkMap::identity(2);
  const Point x{0.3, -0.4};
  CHECK(id(x) == x);
  CHECK(id.radial_profile(0.77) == 0.77);
  CHECK(at(id.exact_dilatation(), {5.0, 5.0}) == 1.0);

  const qc::BenchmarkMap half = qc::BenchmarkMap::radial_stretch(2, 0.5);
  const Point y = half(Point{0.25, 0.0});
  CHECK(y[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(y[1] == 0.0);
  CHECK(half.radial_profile(0.25) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(at(half.exact_dilatation(), {1.0, 1.0}) == 2.0);

  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    const Point p{u(gen), u(gen)};
    const double r = std::hypot(p[0], p[1]);
    const Point fp = half(p);
    CHECK(std::hypot(fp[0], fp[1]) == doctest::Approx(half.radial_profile(r)).epsilon(1e-12));
  }

  // Exponent 1 collapses to the identity bit-for-bit: pow(r, 0) == 1 exactly.
  const qc::BenchmarkMap trivial = qc::BenchmarkMap::radial_stretch(2, 1.0);
  const Point q{0.123456, -0.654321};
  CHECK(trivial(q) == q);

  CHECK_THROWS_AS(qc::BenchmarkMap::radial_stretch(2, 0.0), qc::InputError);
  CHECK_THROWS_AS(qc::BenchmarkMap::radial_stretch(2, 1.5), qc::InputError);
  CHECK_THROWS_AS(qc::BenchmarkMap::identity(1), qc::InputError);
}

TEST_CASE("map spec parser") {
  CHECK(qc::parse_map_spec("identity", 3).kind() == qc::BenchmarkMap::Kind::identity);
  const qc::BenchmarkMap m = qc::parse_map_spec("radial:0.5", 2);
  CHECK(m.kind() == qc::BenchmarkMap::Kind::radial_stretch);
  CHECK(m.stretch_exponent() == 0.5);
  CHECK_THROWS_AS(qc::parse_map_spec("spiral:2", 2), qc::ParseError);
  CHECK_THROWS_AS(qc::parse_map_spec("radial:abc", 2), qc::ParseError);
}

TEST_CASE("grid-backed maps interpolate their component lattices") {
  // f(x, y) = (x + y, y - x) sampled on a 3x3 lattice; multilinear
  // interpolation is exact for each affine component.
  qc_test::ScratchFile csv("grid_map",
                           "x,y,u,v\n"
                           "0,0,0,0\n0,1,1,1\n0,2,2,2\n"
                           "1,0,1,-1\n1,1,2,0\n1,2,3,1\n"
                           "2,0,2,-2\n2,1,3,-1\n2,2,4,0\n");
  const qc::BenchmarkMap m = qc::parse_map_spec("grid:" + csv.path(), 2);
  CHECK(m.kind() == qc::BenchmarkMap::Kind::grid);
  CHECK_FALSE(m.is_radial());
  const Point img = m(Point{0.5, 1.25});
  CHECK(img[0] == doctest::Approx(1.75).epsilon(1e-13));
  CHECK(img[1] == doctest::Approx(0.75).epsilon(1e-13));
  CHECK_THROWS_AS(m.radial_profile(1.0), qc::InputError);
  CHECK_THROWS_AS(m.exact_dilatation(), qc::InputError);
}

TEST_CASE("field domains answer containment queries") {
  const auto ball = qc::FieldDomain::ball(Point{1.0, 0.0}, 2.0);
  CHECK(ball.contains(Point{2.9, 0.0}));
  CHECK_FALSE(ball.contains(Point{3.1, 0.0}));
  CHECK(ball.contains_ball(Point{1.0, 0.0}, 2.0));
  CHECK_FALSE(ball.contains_ball(Point{2.0, 0.0}, 1.5));

  const auto box = qc::FieldDomain::box(Point{0.0, 0.0}, Point{1.0, 2.0});
  CHECK(box.contains(Point{0.5, 1.5}));
  CHECK_FALSE(box.contains(Point{0.5, 2.5}));
  CHECK(box.contains_ball(Point{0.5, 1.0}, 0.5));
  CHECK_FALSE(box.contains_ball(Point{0.5, 1.0}, 0.75));

  CHECK(qc::FieldDomain::everything().contains(Point{1e9, -1e9}));
}
