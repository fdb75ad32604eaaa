// qcdil: command-line front end for the dilatation-mean toolkit.
//
// Subcommands
//   mean                          spherical-mean profile r -> q_{x0}(r)
//   condition {dini|fmv|ballmean|weighted|boundary}
//                                 integral hypotheses with stabilized verdicts
//   certificate {interior|ballmean|cor3|boundary}
//                                 explicit continuity certificates
//   beltrami {coeff|reflect|bounds}
//                                 coefficient evaluation and reflection bounds
//   verify {ring|exponent|oracle} end-to-end checks against closed forms,
//                                 log-log fits, and a Monte Carlo oracle
//
// Exit codes: 0 success, 2 a checked condition fails (pipeline ran but the
// hypothesis or bound does not hold), 1 runtime/input error, 64 usage error.
// All numeric output is printed with 17 significant digits.

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "qc/beltrami.hpp"
#include "qc/certificates.hpp"
#include "qc/doubling.hpp"
#include "qc/errors.hpp"
#include "qc/fields.hpp"
#include "qc/geometry.hpp"
#include "qc/harness.hpp"
#include "qc/io.hpp"
#include "qc/means.hpp"

namespace {

using qc::fmt17;
using qc::JsonWriter;
using qc::Point;
using complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Argument parsing helpers
// ---------------------------------------------------------------------------

Point parse_point(const std::string& text) {
  Point p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      p.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw qc::InputError("'" + text + "' is not a comma-separated coordinate list");
    }
  }
  if (p.empty()) throw qc::InputError("empty coordinate list");
  return p;
}

complex parse_complex(const std::string& text) {
  const Point p = parse_point(text);
  if (p.size() != 2) throw qc::InputError("'" + text + "': expected \"re,im\"");
  return {p[0], p[1]};
}

// "start:stop:count" -> count radii in [start, stop], linearly or
// geometrically spaced (geometric spacing spans decades for log-log fits).
std::vector<double> parse_radii(const std::string& text, bool geometric) {
  double a = 0.0, b = 0.0;
  long m = 0;
  char c1 = 0, c2 = 0;
  std::istringstream ss(text);
  if (!(ss >> a >> c1 >> b >> c2 >> m) || c1 != ':' || c2 != ':' || !(ss >> std::ws).eof())
    throw qc::InputError("'" + text + "': expected radii as start:stop:count");
  if (!(a > 0.0) || !(b > a) || m < 1)
    throw qc::InputError("radii start:stop:count needs 0 < start < stop and count >= 1");
  std::vector<double> r(static_cast<std::size_t>(m));
  if (m == 1) {
    r[0] = a;
    return r;
  }
  if (geometric) {
    const double step = std::log(b / a) / (m - 1.0);
    for (long i = 0; i < m; ++i) r[static_cast<std::size_t>(i)] = a * std::exp(step * i);
  } else {
    for (long i = 0; i < m; ++i) r[static_cast<std::size_t>(i)] = a + (b - a) * i / (m - 1.0);
  }
  r.back() = b;
  return r;
}

qc::ScalarField resolve_field(const std::string& spec, const std::string& grid_path) {
  if (!spec.empty() && !grid_path.empty())
    throw qc::InputError("give either --field or --grid, not both");
  if (!spec.empty()) return qc::parse_field_spec(spec);
  if (!grid_path.empty()) return qc::load_grid_field(grid_path);
  throw qc::InputError("a field is required: --field \"<spec>\" or --grid <csv>");
}

qc::PlanarMap parse_planar_map(const std::string& text) {
  if (text == "identity") return qc::PlanarMap::identity();
  if (text.rfind("radial:", 0) == 0) {
    const std::string num = text.substr(7);
    try {
      std::size_t used = 0;
      const double a = std::stod(num, &used);
      if (used != num.size()) throw std::invalid_argument(num);
      return qc::PlanarMap::radial_stretch(a);
    } catch (const std::exception&) {
      throw qc::InputError("'" + text + "': the stretch exponent is not a number");
    }
  }
  throw qc::InputError("unknown planar map '" + text + "' (expected identity or radial:<a>)");
}

// ---------------------------------------------------------------------------
// Output plumbing
// ---------------------------------------------------------------------------

void emit(const std::string& path, std::string payload) {
  if (payload.empty() || payload.back() != '\n') payload.push_back('\n');
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw qc::InputError("cannot open output file '" + path + "'");
  f << payload;
}

template <typename T>
std::string csv_of(const T& t) {
  std::ostringstream os;
  t.write_csv(os);
  return os.str();
}

void write_point(JsonWriter& w, const Point& p) {
  w.begin_array();
  for (double c : p) w.value(c);
  w.end_array();
}

void write_series(JsonWriter& w, const std::vector<double>& v) {
  w.begin_array();
  for (double x : v) w.value(x);
  w.end_array();
}

void write_complex(JsonWriter& w, complex v) {
  w.begin_object();
  w.key("re");
  w.value(v.real());
  w.key("im");
  w.value(v.imag());
  w.end_object();
}

const char* verdict_word(qc::ConditionReport::Verdict v) {
  switch (v) {
    case qc::ConditionReport::Verdict::holds: return "holds";
    case qc::ConditionReport::Verdict::fails: return "fails";
    default: return "inconclusive";
  }
}

int finish_condition(const qc::ConditionReport& rep, const std::string& out, bool json) {
  std::cerr << qc::condition_name(rep.id) << ": verdict=" << verdict_word(rep.verdict)
            << " estimate=" << fmt17(rep.estimate) << '\n';
  emit(out, json ? rep.to_json() : csv_of(rep));
  return rep.verdict == qc::ConditionReport::Verdict::fails ? 2 : 0;
}

int finish_certificate(const qc::HolderCertificate& cert, const std::string& out) {
  std::cerr << "certificate[" << cert.source << "]: " << (cert.issued ? "issued" : "refused");
  if (cert.issued)
    std::cerr << " exponent=" << fmt17(cert.exponent) << " constant=" << fmt17(cert.constant);
  std::cerr << '\n';
  emit(out, cert.to_json());
  return cert.issued ? 0 : 2;
}

std::string mass_bound_json(const qc::MassBound& lens, const qc::MassBound* annulus) {
  JsonWriter w;
  w.begin_object();
  auto one = [&w](const char* name, const qc::MassBound& b) {
    w.key(name);
    w.begin_object();
    w.key("issued");
    w.value(b.issued);
    w.key("lhs");
    w.value(b.lhs);
    w.key("rhs");
    w.value(b.rhs);
    w.key("ratio");
    w.value(b.ratio);
    w.key("holds");
    w.value(b.holds);
    w.key("note");
    w.value(b.note);
    w.end_object();
  };
  one(annulus ? "disk_bound" : "bound", lens);
  if (annulus) one("annulus_bound", *annulus);
  w.end_object();
  return w.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qcdil: dilatation means, integral conditions, continuity certificates,\n"
      "Beltrami reflection bounds, and brute-force verification."};
  app.set_config("--config", "", "read key=value (TOML) defaults; flags override the file");
  app.require_subcommand(1);
  app.set_version_flag("--version", "qcdil 1.0.0");

  std::function<int()> run;

  // ---- mean ---------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("mean", "spherical-mean profile r -> q_{x0}(r) as CSV \"r,q\"");
    auto field = std::make_shared<std::string>();
    auto grid = std::make_shared<std::string>();
    auto center = std::make_shared<std::string>();
    auto radii = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto resolution = std::make_shared<int>(64);
    auto json = std::make_shared<bool>(false);
    cmd->add_option("--field,-f", *field, "field spec, e.g. \"const 1\" or \"power p=1\"");
    cmd->add_option("--grid", *grid, "CSV lattice \"x1,...,xn,q\" as the field");
    cmd->add_option("--center", *center, "profile center, e.g. 0,0")->required();
    cmd->add_option("--radii", *radii, "start:stop:count, linearly spaced")->required();
    cmd->add_option("--resolution", *resolution, "sphere quadrature resolution (default 64)");
    cmd->add_option("--out", *out, "write to this file instead of stdout");
    cmd->add_flag("--json", *json, "emit JSON instead of CSV");
    cmd->callback([&run, field, grid, center, radii, out, resolution, json] {
      run = [=] {
        const qc::ScalarField Q = resolve_field(*field, *grid);
        const qc::MeanProfile prof =
            qc::mean_profile(Q, parse_point(*center), parse_radii(*radii, false), *resolution);
        if (*json) {
          JsonWriter w;
          w.begin_object();
          w.key("center");
          write_point(w, prof.center);
          w.key("resolution");
          w.value(prof.resolution);
          w.key("radii");
          write_series(w, prof.radii);
          w.key("values");
          write_series(w, prof.values);
          w.end_object();
          emit(*out, w.str());
        } else {
          emit(*out, csv_of(prof));
        }
        return 0;
      };
    });
  }

  // ---- condition ----------------------------------------------------------
  {
    auto* cond = app.add_subcommand("condition", "integral hypotheses with stabilized verdicts");
    cond->require_subcommand(1);

    {
      auto* cmd = cond->add_subcommand(
          "dini", "radial integral of (alpha - q^{-1/(n-1)})/r stays bounded as t -> 0");
      auto field = std::make_shared<std::string>();
      auto grid = std::make_shared<std::string>();
      auto center = std::make_shared<std::string>();
      auto out = std::make_shared<std::string>();
      auto alpha = std::make_shared<double>(0.0);
      auto eps0 = std::make_shared<double>(0.0);
      auto resolution = std::make_shared<int>(64);
      auto json = std::make_shared<bool>(false);
      cmd->add_option("--field,-f", *field, "field spec for Q");
      cmd->add_option("--grid", *grid, "CSV lattice as the field");
      cmd->add_option("--center", *center, "condition center x0")->required();
      cmd->add_option("--alpha", *alpha, "target exponent in (0,1]; 1 = Lipschitz variant")
          ->required();
      cmd->add_option("--eps0", *eps0, "outer radius of the annuli")->required();
      cmd->add_option("--resolution", *resolution, "sphere quadrature resolution (default 64)");
      cmd->add_option("--out", *out, "write to this file instead of stdout");
      cmd->add_flag("--json", *json, "emit JSON instead of CSV");
      cmd->callback([&run, field, grid, center, out, alpha, eps0, resolution, json] {
        run = [=] {
          const qc::ScalarField Q = resolve_field(*field, *grid);
          return finish_condition(
              qc::dini_condition(Q, parse_point(*center), *alpha, *eps0, *resolution), *out, *json);
        };
      });
    }
    {
      auto* cmd = cond->add_subcommand(
          "fmv", "annulus integral of (Q-1)/|x-x0|^n stays bounded as the inner radius -> 0");
      auto field = std::make_shared<std::string>();
      auto grid = std::make_shared<std::string>();
      auto center = std::make_shared<std::string>();
      auto out = std::make_shared<std::string>();
      auto eps0 = std::make_shared<double>(0.0);
      auto resolution = std::make_shared<int>(64);
      auto json = std::make_shared<bool>(false);
      cmd->add_option("--field,-f", *field, "field spec for Q");
      cmd->add_option("--grid", *grid, "CSV lattice as the field");
      cmd->add_option("--center", *center, "condition center x0")->required();
      cmd->add_option("--eps0", *eps0, "outer radius of the annuli")->required();
      cmd->add_option("--resolution", *resolution, "sphere quadrature resolution (default 64)");
      cmd->add_option("--out", *out, "write to this file instead of stdout");
      cmd->add_flag("--json", *json, "emit JSON instead of CSV");
      cmd->callback([&run, field, grid, center, out, eps0, resolution, json] {
        run = [=] {
          const qc::ScalarField Q = resolve_field(*field, *grid);
          return finish_condition(
              qc::fmv_integral_condition(Q, parse_point(*center), *eps0, *resolution), *out, *json);
        };
      });
    }
    {
      auto* cmd =
          cond->add_subcommand("ballmean", "sup over eps < eps0 of the ball mean of Q at x0");
      auto field = std::make_shared<std::string>();
      auto grid = std::make_shared<std::string>();
      auto center = std::make_shared<std::string>();
      auto out = std::make_shared<std::string>();
      auto eps0 = std::make_shared<double>(0.0);
      auto resolution = std::make_shared<int>(64);
      auto json = std::make_shared<bool>(false);
      cmd->add_option("--field,-f", *field, "field spec for Q");
      cmd->add_option("--grid", *grid, "CSV lattice as the field");
      cmd->add_option("--center", *center, "ball center x0")->required();
      cmd->add_option("--eps0", *eps0, "radius sup range (0, eps0)")->required();
      cmd->add_option("--resolution", *resolution, "sphere quadrature resolution (default 64)");
      cmd->add_option("--out", *out, "write to this file instead of stdout");
      cmd->add_flag("--json", *json, "emit JSON instead of CSV");
      cmd->callback([&run, field, grid, center, out, eps0, resolution, json] {
        run = [=] {
          const qc::ScalarField Q = resolve_field(*field, *grid);
          return finish_condition(
              qc::ball_mean_condition(Q, parse_point(*center), *eps0, *resolution), *out, *json);
        };
      });
    }
    {
      auto* cmd = cond->add_subcommand(
          "weighted", "sup over eps < eps0 of phi(1/eps) times the ball mean of Q at x0");
      auto field = std::make_shared<std::string>();
      auto grid = std::make_shared<std::string>();
      auto center = std::make_shared<std::string>();
      auto phi = std::make_shared<std::string>();
      auto out = std::make_shared<std::string>();
      auto eps0 = std::make_shared<double>(0.0);
      auto resolution = std::make_shared<int>(64);
      auto json = std::make_shared<bool>(false);
      cmd->add_option("--field,-f", *field, "field spec for Q");
      cmd->add_option("--grid", *grid, "CSV lattice as the field");
      cmd->add_option("--center", *center, "ball center x0")->required();
      cmd->add_option("--phi", *phi,
                      "doubling weight: one | power <alpha> <gamma> | log <gamma> | "
                      "power-plus-log <a> <b> <g> | power-times-log <a> <b> <g>")
          ->required();
      cmd->add_option("--eps0", *eps0, "radius sup range (0, eps0)")->required();
      cmd->add_option("--resolution", *resolution, "sphere quadrature resolution (default 64)");
      cmd->add_option("--out", *out, "write to this file instead of stdout");
      cmd->add_flag("--json", *json, "emit JSON instead of CSV");
      cmd->callback([&run, field, grid, center, phi, out, eps0, resolution, json] {
        run = [=] {
          const qc::ScalarField Q = resolve_field(*field, *grid);
          const qc::DoublingFunction w = qc::parse_phi_spec(*phi);
          return finish_condition(
              qc::weighted_mean_condition(Q, parse_point(*center), w, *eps0, *resolution), *out,
              *json);
        };
      });
    }
    {
      auto* cmd = cond->add_subcommand(
          "boundary", "sup over eps < eps0 of the half-disk mean of K at a unit-circle point");
      auto field = std::make_shared<std::string>();
      auto grid = std::make_shared<std::string>();
      auto zeta = std::make_shared<std::string>("1,0");
      auto out = std::make_shared<std::string>();
      auto eps0 = std::make_shared<double>(0.0);
      auto resolution = std::make_shared<int>(128);
      auto json = std::make_shared<bool>(false);
      cmd->add_option("--field,-f", *field, "field spec for K on the unit disk");
      cmd->add_option("--grid", *grid, "CSV lattice as the field");
      cmd->add_option("--zeta", *zeta, "boundary point on |z| = 1 (default 1,0)");
      cmd->add_option("--eps0", *eps0, "radius sup range (0, eps0), eps0 < 1")->required();
      cmd->add_option("--resolution", *resolution, "lens quadrature resolution (default 128)");
      cmd->add_option("--out", *out, "write to this file instead of stdout");
      cmd->add_flag("--json", *json, "emit JSON instead of CSV");
      cmd->callback([&run, field, grid, zeta, out, eps0, resolution, json] {
        run = [=] {
          const qc::ScalarField K = resolve_field(*field, *grid);
          return finish_condition(
              qc::boundary_mean_condition(K, parse_point(*zeta), *eps0, *resolution), *out, *json);
        };
      });
    }
  }

  // ---- certificate ----------------------------------------------------------
  {
    auto* cert = app.add_subcommand("certificate", "explicit continuity certificates (JSON)");
    cert->require_subcommand(1);

    {
      auto* cmd = cert->add_subcommand(
          "interior", "pointwise certificate from the radial integral condition at x0");
      auto field = std::make_shared<std::string>();
      auto grid = std::make_shared<std::string>();
      auto center = std::make_shared<std::string>();
      auto out = std::make_shared<std::string>();
      auto alpha = std::make_shared<double>(0.0);
      auto eps0 = std::make_shared<double>(0.0);
      auto alpha_n = std::make_shared<double>(1.0);
      auto r0 = std::make_shared<double>(1.0);
      auto resolution = std::make_shared<int>(64);
      cmd->add_option("--field,-f", *field, "field spec for Q");
      cmd->add_option("--grid", *grid, "CSV lattice as the field");
      cmd->add_option("--center", *center, "certificate center x0")->required();
      cmd->add_option("--alpha", *alpha, "target exponent in (0,1]")->required();
      cmd->add_option("--eps0", *eps0, "outer radius of the annuli")->required();
      cmd->add_option("--alpha-n", *alpha_n, "dimensional constant (default 1)");
      cmd->add_option("--r0", *r0, "domain radius entering the chordal constant (default 1)");
      cmd->add_option("--resolution", *resolution, "sphere quadrature resolution (default 64)");
      cmd->add_option("--out", *out, "write to this file instead of stdout");
      cmd->callback([&run, field, grid, center, out, alpha, eps0, alpha_n, r0, resolution] {
        run = [=] {
          const qc::ScalarField Q = resolve_field(*field, *grid);
          return finish_certificate(
              qc::holder_certificate_interior(Q, parse_point(*center), *alpha, *eps0, *alpha_n,
                                              *r0, *resolution),
              *out);
        };
      });
    }
    {
      auto* cmd =
          cert->add_subcommand("ballmean", "certificate from a declared ball-mean bound at x0");
      auto field = std::make_shared<std::string>();
      auto grid = std::make_shared<std::string>();
      auto center = std::make_shared<std::string>();
      auto out = std::make_shared<std::string>();
      auto mode = std::make_shared<std::string>("homeo");
      auto C = std::make_shared<double>(0.0);
      auto delta_or_r = std::make_shared<double>(0.0);
      auto eps0 = std::make_shared<double>(0.0);
      auto resolution = std::make_shared<int>(64);
      cmd->add_option("--field,-f", *field, "field spec for Q");
      cmd->add_option("--grid", *grid, "CSV lattice as the field");
      cmd->add_option("--center", *center, "certificate center x0")->required();
      cmd->add_option("--C", *C, "declared ball-mean bound, verified on the grid")->required();
      cmd->add_option("--delta-or-r", *delta_or_r,
                      "homeo: chordal diameter of the omitted set; open-discrete:"
                      " radius r whose complement supplies it")
          ->required();
      cmd->add_option("--mode", *mode, "homeo | open-discrete (default homeo)")
          ->check(CLI::IsMember({"homeo", "open-discrete"}));
      cmd->add_option("--eps0", *eps0, "radius sup range (0, eps0), eps0 < 1/2")->required();
      cmd->add_option("--resolution", *resolution, "sphere quadrature resolution (default 64)");
      cmd->add_option("--out", *out, "write to this file instead of stdout");
      cmd->callback([&run, field, grid, center, out, mode, C, delta_or_r, eps0, resolution] {
        run = [=] {
          const qc::ScalarField Q = resolve_field(*field, *grid);
          const qc::MapClass cls = *mode == "open-discrete" ? qc::MapClass::open_discrete
                                                            : qc::MapClass::homeomorphism;
          return finish_certificate(
              qc::ball_mean_certificate(Q, parse_point(*center), *C, *delta_or_r, cls, *eps0,
                                        *resolution),
              *out);
        };
      });
    }
    {
      auto* cmd = cert->add_subcommand(
          "cor3", "certificate from the logarithmic annulus-growth bound C*log(eps0/eps)");
      auto field = std::make_shared<std::string>();
      auto grid = std::make_shared<std::string>();
      auto center = std::make_shared<std::string>("0,0");
      auto out = std::make_shared<std::string>();
      auto C = std::make_shared<double>(0.0);
      auto Delta = std::make_shared<double>(0.0);
      auto eps0 = std::make_shared<double>(0.0);
      auto resolution = std::make_shared<int>(64);
      cmd->add_option("--field,-f", *field,
                      "field spec for Q; when given, the growth bound is verified first");
      cmd->add_option("--grid", *grid, "CSV lattice as the field");
      cmd->add_option("--center", *center, "certificate center z0 (default 0,0)");
      cmd->add_option("--C", *C, "declared logarithmic-growth constant")->required();
      cmd->add_option("--Delta", *Delta, "chordal diameter of the omitted set")->required();
      cmd->add_option("--eps0", *eps0, "outer radius of the annuli")->required();
      cmd->add_option("--resolution", *resolution, "sphere quadrature resolution (default 64)");
      cmd->add_option("--out", *out, "write to this file instead of stdout");
      cmd->callback([&run, field, grid, center, out, C, Delta, eps0, resolution] {
        run = [=] {
          if (field->empty() && grid->empty())
            return finish_certificate(qc::log_growth_certificate(*Delta, *C, *eps0), *out);
          const qc::ScalarField Q = resolve_field(*field, *grid);
          return finish_certificate(
              qc::log_growth_certificate(Q, parse_point(*center), *Delta, *C, *eps0, *resolution),
              *out);
        };
      });
    }
    {
      auto* cmd = cert->add_subcommand(
          "boundary", "uniform boundary certificate from the half-disk-mean constant");
      auto out = std::make_shared<std::string>();
      auto C = std::make_shared<double>(0.0);
      auto eps0 = std::make_shared<double>(0.0);
      cmd->add_option("--C", *C, "half-disk-mean bound, C >= 1")->required();
      cmd->add_option("--eps0", *eps0, "working radius in (0,1)")->required();
      cmd->add_option("--out", *out, "write to this file instead of stdout");
      cmd->callback([&run, out, C, eps0] {
        run = [=] {
          const qc::BoundaryCertificate cert = qc::boundary_holder_certificate(*C, *eps0);
          std::cerr << "certificate[boundary-arc]: issued alpha=" << fmt17(cert.alpha)
                    << " L=" << fmt17(cert.global_L) << '\n';
          emit(*out, cert.to_json());
          return 0;
        };
      });
    }
  }

  // ---- beltrami -------------------------------------------------------------
  {
    auto* bel = app.add_subcommand("beltrami", "coefficients, reflection, and mass bounds");
    bel->require_subcommand(1);

    {
      auto* cmd = bel->add_subcommand(
          "coeff", "finite-difference coefficient, dilatation, and Jacobian of a planar map");
      auto map = std::make_shared<std::string>();
      auto z = std::make_shared<std::string>();
      auto out = std::make_shared<std::string>();
      auto h = std::make_shared<double>(1e-6);
      cmd->add_option("--map", *map, "identity | radial:<a>")->required();
      cmd->add_option("--z", *z, "evaluation point \"re,im\"")->required();
      cmd->add_option("--step", *h, "stencil width (default 1e-6)");
      cmd->add_option("--out", *out, "write to this file instead of stdout");
      cmd->callback([&run, map, z, out, h] {
        run = [=] {
          const qc::PlanarMap f = parse_planar_map(*map);
          const complex at = parse_complex(*z);
          const qc::WirtingerPair d = qc::wirtinger_derivatives(f, at, *h);
          const complex mu = qc::coefficient_of_map(f, at, *h);
          JsonWriter w;
          w.begin_object();
          w.key("map");
          w.value(f.describe());
          w.key("z");
          write_complex(w, at);
          w.key("f_z");
          write_complex(w, d.f_z);
          w.key("f_zbar");
          write_complex(w, d.f_zbar);
          w.key("stencil_converged");
          w.value(d.stencil_converged);
          w.key("mu");
          write_complex(w, mu);
          w.key("abs_mu");
          w.value(std::abs(mu));
          w.key("K");
          w.value(qc::max_dilatation(mu));
          w.key("jacobian");
          w.value(qc::jacobian(f, at, *h));
          w.end_object();
          emit(*out, w.str());
          return 0;
        };
      });
    }
    {
      auto* cmd = bel->add_subcommand(
          "reflect", "coefficient of the symmetry extension at a point outside the disk");
      auto mu_spec = std::make_shared<std::string>();
      auto z = std::make_shared<std::string>();
      auto out = std::make_shared<std::string>();
      cmd->add_option("--mu", *mu_spec, "mu-const <re> <im> | mu-radial <a> | mu-grid <path>")
          ->required();
      cmd->add_option("--z", *z, "evaluation point \"re,im\" with |z| > 1")->required();
      cmd->add_option("--out", *out, "write to this file instead of stdout");
      cmd->callback([&run, mu_spec, z, out] {
        run = [=] {
          const qc::BeltramiCoefficient mu = qc::parse_mu_spec(*mu_spec);
          const complex at = parse_complex(*z);
          const complex ref = qc::reflect_coefficient(mu, at);
          JsonWriter w;
          w.begin_object();
          w.key("mu");
          w.value(mu.describe());
          w.key("z");
          write_complex(w, at);
          w.key("reflected");
          write_complex(w, ref);
          w.key("abs");
          w.value(std::abs(ref));
          w.key("K");
          w.value(qc::max_dilatation(ref));
          w.end_object();
          emit(*out, w.str());
          return 0;
        };
      });
    }
    {
      auto* cmd = bel->add_subcommand(
          "bounds", "dilatation-mass bounds of the reflected coefficient (disk and/or annulus)");
      auto mu_spec = std::make_shared<std::string>();
      auto zeta = std::make_shared<std::string>("1,0");
      auto out = std::make_shared<std::string>();
      auto eps = std::make_shared<double>(0.0);
      auto R = std::make_shared<double>(0.0);
      auto resolution = std::make_shared<int>(256);
      cmd->add_option("--mu", *mu_spec, "mu-const <re> <im> | mu-radial <a> | mu-grid <path>")
          ->required();
      cmd->add_option("--zeta", *zeta, "boundary point for the disk bound (default 1,0)");
      cmd->add_option("--eps", *eps, "disk bound radius in (0, 1/2)");
      cmd->add_option("--R", *R, "annulus bound outer radius, R > 1");
      cmd->add_option("--resolution", *resolution, "angular resolution (default 256)");
      cmd->add_option("--out", *out, "write to this file instead of stdout");
      cmd->callback([&run, mu_spec, zeta, out, eps, R, resolution] {
        run = [=] {
          if (*eps <= 0.0 && *R <= 0.0)
            throw qc::InputError("beltrami bounds: give --eps (disk bound), --R (annulus"
                                 " bound), or both");
          const qc::BeltramiCoefficient mu = qc::parse_mu_spec(*mu_spec);
          bool ok = true;
          std::string payload;
          if (*eps > 0.0 && *R > 0.0) {
            const qc::MassBound disk =
                qc::reflected_mass_bound(mu, parse_complex(*zeta), *eps, *resolution);
            const qc::MassBound ring = qc::annulus_mass_bound(mu, *R, *resolution);
            ok = disk.issued && disk.holds && ring.issued && ring.holds;
            payload = mass_bound_json(disk, &ring);
          } else if (*eps > 0.0) {
            const qc::MassBound disk =
                qc::reflected_mass_bound(mu, parse_complex(*zeta), *eps, *resolution);
            ok = disk.issued && disk.holds;
            payload = mass_bound_json(disk, nullptr);
          } else {
            const qc::MassBound ring = qc::annulus_mass_bound(mu, *R, *resolution);
            ok = ring.issued && ring.holds;
            payload = mass_bound_json(ring, nullptr);
          }
          emit(*out, payload);
          return ok ? 0 : 2;
        };
      });
    }
  }

  // ---- verify ---------------------------------------------------------------
  {
    auto* ver = app.add_subcommand("verify", "closed-form, fitting, and Monte Carlo checks");
    ver->require_subcommand(1);

    {
      auto* cmd = ver->add_subcommand(
          "ring", "ring-family inequality on a radial benchmark against the weighted mass");
      auto map = std::make_shared<std::string>();
      auto field = std::make_shared<std::string>();
      auto grid = std::make_shared<std::string>();
      auto out = std::make_shared<std::string>();
      auto r1 = std::make_shared<double>(0.0);
      auto r2 = std::make_shared<double>(0.0);
      auto eta_scale = std::make_shared<double>(1.0);
      auto dim = std::make_shared<int>(2);
      auto resolution = std::make_shared<int>(64);
      cmd->add_option("--map", *map, "identity | radial:<a> | grid:<path>")->required();
      cmd->add_option("--Q,--field,-f", *field, "field spec for Q");
      cmd->add_option("--grid", *grid, "CSV lattice as the field");
      cmd->add_option("--r1", *r1, "inner ring radius")->required();
      cmd->add_option("--r2", *r2, "outer ring radius")->required();
      cmd->add_option("--eta-scale", *eta_scale,
                      "multiple of the extremal admissible eta (default 1; >1 keeps"
                      " admissibility and loosens the right side)");
      cmd->add_option("--dim", *dim, "ambient dimension (default 2)");
      cmd->add_option("--resolution", *resolution, "quadrature resolution (default 64)");
      cmd->add_option("--out", *out, "write to this file instead of stdout");
      cmd->callback([&run, map, field, grid, out, r1, r2, eta_scale, dim, resolution] {
        run = [=] {
          const qc::BenchmarkMap f = qc::parse_map_spec(*map, *dim);
          const qc::ScalarField Q = resolve_field(*field, *grid);
          const double lo = *r1, hi = *r2, scale = *eta_scale;
          if (!(lo > 0.0) || !(hi > lo)) throw qc::InputError("need 0 < r1 < r2");
          const double log_ratio = std::log(hi / lo);
          const auto eta = [scale, log_ratio](double r) { return scale / (r * log_ratio); };
          const qc::RingCheck rc = qc::verify_ring_inequality(f, Q, lo, hi, eta, *resolution);
          JsonWriter w;
          w.begin_object();
          w.key("map");
          w.value(*map);
          w.key("r1");
          w.value(lo);
          w.key("r2");
          w.value(hi);
          w.key("lhs");
          w.value(rc.lhs);
          w.key("rhs");
          w.value(rc.rhs);
          w.key("eta_integral");
          w.value(rc.eta_integral);
          w.key("holds");
          w.value(rc.holds);
          w.end_object();
          emit(*out, w.str());
          std::cerr << "ring inequality: " << (rc.holds ? "holds" : "fails")
                    << " lhs=" << fmt17(rc.lhs) << " rhs=" << fmt17(rc.rhs) << '\n';
          return rc.holds ? 0 : 2;
        };
      });
    }
    {
      auto* cmd = ver->add_subcommand(
          "exponent", "log-log fit of the worst displacement of a benchmark map");
      auto map = std::make_shared<std::string>();
      auto center = std::make_shared<std::string>();
      auto radii = std::make_shared<std::string>();
      auto out = std::make_shared<std::string>();
      auto dim = std::make_shared<int>(2);
      auto seed = std::make_shared<std::uint64_t>(0x51a7e5eedULL);
      auto json = std::make_shared<bool>(false);
      cmd->add_option("--map", *map, "identity | radial:<a> | grid:<path>")->required();
      cmd->add_option("--center", *center, "fit center (default the origin)");
      cmd->add_option("--radii", *radii, "start:stop:count, geometrically spaced")->required();
      cmd->add_option("--dim", *dim, "ambient dimension (default 2)");
      cmd->add_option("--seed", *seed, "direction-sampling seed for n >= 4");
      cmd->add_option("--out", *out, "write to this file instead of stdout");
      cmd->add_flag("--json", *json, "emit the fit as JSON instead of sample CSV");
      cmd->callback([&run, map, center, radii, out, dim, seed, json] {
        run = [=] {
          const qc::BenchmarkMap f = qc::parse_map_spec(*map, *dim);
          const Point x0 =
              center->empty() ? Point(static_cast<std::size_t>(*dim), 0.0) : parse_point(*center);
          const qc::ExponentFit fit =
              qc::empirical_holder_exponent(f, x0, parse_radii(*radii, true), *seed);
          std::cerr << "exponent fit: slope=" << fmt17(fit.slope)
                    << " residual_rms=" << fmt17(fit.residual_rms) << '\n';
          if (*json) {
            JsonWriter w;
            w.begin_object();
            w.key("center");
            write_point(w, fit.center);
            w.key("slope");
            w.value(fit.slope);
            w.key("intercept_log");
            w.value(fit.intercept_log);
            w.key("residual_rms");
            w.value(fit.residual_rms);
            w.key("radii");
            write_series(w, fit.radii);
            w.key("displacement");
            write_series(w, fit.displacement);
            w.end_object();
            emit(*out, w.str());
          } else {
            emit(*out, csv_of(fit));
          }
          return 0;
        };
      });
    }
    {
      auto* cmd = ver->add_subcommand(
          "oracle", "deterministic Monte Carlo integral over a ball, annulus, or lens");
      auto field = std::make_shared<std::string>();
      auto grid = std::make_shared<std::string>();
      auto region = std::make_shared<std::string>();
      auto center = std::make_shared<std::string>("0,0");
      auto out = std::make_shared<std::string>();
      auto r = std::make_shared<double>(0.0);
      auto r1 = std::make_shared<double>(0.0);
      auto r2 = std::make_shared<double>(0.0);
      auto eps = std::make_shared<double>(0.0);
      auto samples = std::make_shared<std::size_t>(200000);
      auto seed = std::make_shared<std::uint64_t>(0x51a7e5eedULL);
      cmd->add_option("--field,-f", *field, "field spec for the integrand");
      cmd->add_option("--grid", *grid, "CSV lattice as the field");
      cmd->add_option("--region", *region, "ball | annulus | lens")
          ->required()
          ->check(CLI::IsMember({"ball", "annulus", "lens"}));
      cmd->add_option("--center", *center,
                      "region center; for lens, the boundary point on |z| = 1 (default 0,0)");
      cmd->add_option("--r", *r, "ball radius");
      cmd->add_option("--r1", *r1, "annulus inner radius");
      cmd->add_option("--r2", *r2, "annulus outer radius");
      cmd->add_option("--eps", *eps, "lens disk radius");
      cmd->add_option("--samples", *samples, "Monte Carlo samples (default 200000)");
      cmd->add_option("--seed", *seed, "sampling seed");
      cmd->add_option("--out", *out, "write to this file instead of stdout");
      cmd->callback([&run, field, grid, region, center, out, r, r1, r2, eps, samples, seed] {
        run = [=] {
          const qc::ScalarField Q = resolve_field(*field, *grid);
          const Point c = parse_point(*center);
          qc::Region reg;
          if (*region == "ball") {
            if (!(*r > 0.0)) throw qc::InputError("verify oracle --region ball needs --r > 0");
            reg = qc::Region::ball(c, *r);
          } else if (*region == "annulus") {
            reg = qc::Region::annulus(c, *r1, *r2);
          } else {
            if (!(*eps > 0.0)) throw qc::InputError("verify oracle --region lens needs --eps > 0");
            reg = qc::Region::lens(c, *eps);
          }
          const qc::OracleEstimate est = qc::oracle_integral(Q, reg, *samples, *seed);
          JsonWriter w;
          w.begin_object();
          w.key("value");
          w.value(est.value);
          w.key("standard_error");
          w.value(est.standard_error);
          w.key("samples");
          w.value(est.samples);
          w.key("seed");
          w.value(static_cast<std::size_t>(est.seed));
          w.end_object();
          emit(*out, w.str());
          return 0;
        };
      });
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help / --version
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  if (!run) {
    std::cerr << app.help();
    return 64;
  }
  try {
    return run();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
